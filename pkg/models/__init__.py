"""
Data models module for the reverse Schwarz-Pick laboratory.

This module contains all Pydantic models used for structured data
throughout the application, and the shared exception hierarchy.
"""

from .geometry_models import BoundaryPoint, DiskPoint, ArcSet, CircleGrid, BoundarySamples
from .report_models import (
    ChainReport,
    CHAIN_FIELDS,
    AngularReport,
    CheckRecord,
    SuiteSummary,
    SuiteReport,
    FalsifyRecord,
)
from .config_models import SuiteConfig
from .errors import (
    LabError,
    GridTooCoarse,
    NotLogIntegrable,
    ParamOutOfDomain,
    ContourTooClose,
    BoundarySingularity,
    UnboundedOnE,
    ChainViolation,
    Inconclusive,
    SpecParseError,
    ConfigError,
)

__all__ = [
    'BoundaryPoint',
    'DiskPoint',
    'ArcSet',
    'CircleGrid',
    'BoundarySamples',
    'ChainReport',
    'CHAIN_FIELDS',
    'AngularReport',
    'CheckRecord',
    'SuiteSummary',
    'SuiteReport',
    'FalsifyRecord',
    'SuiteConfig',
    'LabError',
    'GridTooCoarse',
    'NotLogIntegrable',
    'ParamOutOfDomain',
    'ContourTooClose',
    'BoundarySingularity',
    'UnboundedOnE',
    'ChainViolation',
    'Inconclusive',
    'SpecParseError',
    'ConfigError',
]
