"""
Constants for the reverse Schwarz-Pick laboratory.

This module defines mathematical constants, family limits, and the random
search distribution used by the falsification sweeps.
"""

import math

# ============================================================================
# Mathematical Constants
# ============================================================================

# sup{t^{-t}: 0 < t < 1}
E_TO_ONE_OVER_E = math.exp(1.0 / math.e)

TWO_PI = 2.0 * math.pi

# ============================================================================
# Function Families
# ============================================================================

MAX_BLASCHKE_ZEROS = 64

# Nodes closer than this (radians) to a singular angle are excluded
SINGULAR_SNAP = 1e-12

# ============================================================================
# Quadrature / Oracles
# ============================================================================

# Poisson kernel width must be at least this many grid spacings
KERNEL_WIDTH_CELLS = 4

# Number of cells around arg z refined near the boundary
REFINE_CELLS = 8

# Cauchy-integral derivative oracle
ORACLE_NODES = 256
ORACLE_MAX_RADIUS = 0.1

# Overflow guard for ||phi'||_{inf,E}
SUP_OVERFLOW_GUARD = 1e300

# ============================================================================
# Angular Limits
# ============================================================================

ANGULAR_MIN_K = 4
ANGULAR_MAX_DEPTH = 40
ANGULAR_DEFAULT_DEPTH = 30
ANGULAR_STABLE_RTOL = 1e-6
ANGULAR_STABLE_RUN = 3
ANGULAR_DIVERGENCE_CEILING = 1e6
ANGULAR_CROSS_RTOL = 1e-4
ANGULAR_UNIMODULAR_TOL = 1e-6
STOLZ_ANGLE = math.pi / 4

# ============================================================================
# Classification
# ============================================================================

DEFAULT_PROBE_COUNT = 32
DEFAULT_PROBE_RADIUS = 0.9

# ============================================================================
# Random Search Settings
# ============================================================================

# Each family draw uses these ranges; z is area-uniform in |z| <= Z_RADIUS
SEARCH_SETTINGS = {
    'zero_radius': 0.95,
    'alpha_radius': (0.05, 0.95),
    'z_radius': 0.99,
    'max_zeros': 8,
    'max_arcs': 3,
    'mass_weight': (0.2, 2.0),
}
