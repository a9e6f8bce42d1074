"""
Configuration module for the reverse Schwarz-Pick laboratory.

This module contains all configuration settings, constants,
and environment variable management.
"""

from .settings import (
    GRID_N,
    R_MAX,
    ADAPTIVE_REFINEMENT,
    MAX_REFINE_DEPTH,
    CLAMP_FLOOR,
    MAX_CLAMPED_MASS,
    ABS_FLOOR,
    EQUALITY_RTOL,
    EPS_DEG,
    NON_OUTER_THRESHOLD,
    SEED,
    OUTPUT_DIR,
    LOG_DIR,
)
from .constants import E_TO_ONE_OVER_E, SEARCH_SETTINGS

__all__ = [
    'GRID_N',
    'R_MAX',
    'ADAPTIVE_REFINEMENT',
    'MAX_REFINE_DEPTH',
    'CLAMP_FLOOR',
    'MAX_CLAMPED_MASS',
    'ABS_FLOOR',
    'EQUALITY_RTOL',
    'EPS_DEG',
    'NON_OUTER_THRESHOLD',
    'SEED',
    'OUTPUT_DIR',
    'LOG_DIR',
    'E_TO_ONE_OVER_E',
    'SEARCH_SETTINGS',
]
