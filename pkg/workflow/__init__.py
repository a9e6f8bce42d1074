"""
Workflow module for the reverse Schwarz-Pick laboratory.

This module contains the LangGraph verification suite: state management,
graph definition, node functions, and the run_suite entry point.
"""

from .state import SuiteState, create_initial_state, make_record
from .graph import create_workflow, run_suite
from .nodes import (
    prepare_node,
    schwarz_pick_node,
    theorem_node,
    chain_node,
    julia_node,
    angular_node,
    classification_node,
    summarize_node,
)

__all__ = [
    'SuiteState',
    'create_initial_state',
    'make_record',
    'create_workflow',
    'run_suite',
    'prepare_node',
    'schwarz_pick_node',
    'theorem_node',
    'chain_node',
    'julia_node',
    'angular_node',
    'classification_node',
    'summarize_node',
]
