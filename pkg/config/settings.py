"""
Configuration settings for the reverse Schwarz-Pick numerical laboratory.

This module loads environment variables and defines quadrature, tolerance,
and output settings.
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


# ============================================================================
# Quadrature Settings
# ============================================================================

# Default number of circle grid nodes (power of two)
GRID_N = int(os.getenv("RSP_GRID_N", "4096"))

# Largest |z| accepted by evaluation APIs
R_MAX = float(os.getenv("RSP_R_MAX", "0.999"))

# Local dyadic refinement near the boundary
ADAPTIVE_REFINEMENT = _env_bool("RSP_ADAPTIVE_REFINEMENT", "true")
MAX_REFINE_DEPTH = int(os.getenv("RSP_MAX_REFINE_DEPTH", "12"))

# log h clamping
CLAMP_FLOOR = float(os.getenv("RSP_CLAMP_FLOOR", "1e-300"))
MAX_CLAMPED_MASS = float(os.getenv("RSP_MAX_CLAMPED_MASS", "0.01"))

# ============================================================================
# Tolerance Settings
# ============================================================================

# Absolute floor of every inequality tolerance: tol = max(ABS_FLOOR, 10 * quad_error)
ABS_FLOOR = float(os.getenv("RSP_ABS_FLOOR", "1e-9"))

# Relative tolerance for equality detection (Moebius detection, equality cases)
EQUALITY_RTOL = float(os.getenv("RSP_EQUALITY_RTOL", "1e-10"))

# Threshold below which 1 - omega_z(E) counts as zero
EPS_DEG = float(os.getenv("RSP_EPS_DEG", "1e-12"))

# outer_check residual above which a function is certified non-outer
NON_OUTER_THRESHOLD = float(os.getenv("RSP_NON_OUTER_THRESHOLD", "0.1"))

# ============================================================================
# Run Settings
# ============================================================================

SEED = int(os.getenv("RSP_SEED", "20240101"))

OUTPUT_DIR = os.getenv("RSP_OUTPUT_DIR", "results")
LOG_DIR = os.getenv("RSP_LOG_DIR", "logs")
