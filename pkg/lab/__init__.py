"""
Numerical laboratory for the reverse Schwarz-Pick inequality.

This package contains the holomorphic self-map zoo, circle quadrature
(harmonic measure, Poisson/Herglotz integrals, outer functions), the
inequality and proof-chain evaluators, angular-derivative limits,
classification probes, and the randomized falsification search.
"""

from .holomap import HoloMap, as_complex, check_radius
from .boundary_geometry import (
    QuadratureResult,
    normalize,
    arc_measure,
    complement,
    contains,
    parse_arc_set,
    map_arcs_by_automorphism,
    harmonic_measure_exact,
    harmonic_measure,
    harmonic_measure_estimate,
    sample_function,
    log_modulus,
    poisson_integral,
    herglotz_integral,
    refine_estimate,
    samples_to_rows,
    outer_from_modulus,
)
from .holo_zoo import (
    moebius,
    identity,
    blaschke,
    power,
    singular_inner,
    atomic_s,
    b_alpha,
    outer_power,
    product,
    compose,
    quotient_blaschke,
    derivative_map,
    oracle_deriv,
    boundary_trace,
    radial_boundary_value,
    critical_points,
)
from .function_spec import parse_function
from .schwarz_pick_core import (
    tolerance,
    q_ratio,
    schwarz_pick_slack,
    julia_residual,
    f_z,
    reverse_bound_rhs,
    reverse_bound_estimate,
    two_constants_bound,
    simple_bound_rhs,
    triv_bound_slack,
    inner_bound_rhs,
    bound_chain,
)
from .angular_limits import angular_derivative, jc_consistency, angular_sweep
from .classification import (
    moebius_detect,
    outer_check,
    inner_factor_probe,
    divisibility_check,
    eta_evidence,
)
from .falsify import falsify

__all__ = [
    'HoloMap',
    'as_complex',
    'check_radius',
    'QuadratureResult',
    'normalize',
    'arc_measure',
    'complement',
    'contains',
    'parse_arc_set',
    'map_arcs_by_automorphism',
    'harmonic_measure_exact',
    'harmonic_measure',
    'harmonic_measure_estimate',
    'sample_function',
    'log_modulus',
    'poisson_integral',
    'herglotz_integral',
    'refine_estimate',
    'samples_to_rows',
    'outer_from_modulus',
    'moebius',
    'identity',
    'blaschke',
    'power',
    'singular_inner',
    'atomic_s',
    'b_alpha',
    'outer_power',
    'product',
    'compose',
    'quotient_blaschke',
    'derivative_map',
    'oracle_deriv',
    'boundary_trace',
    'radial_boundary_value',
    'critical_points',
    'parse_function',
    'tolerance',
    'q_ratio',
    'schwarz_pick_slack',
    'julia_residual',
    'f_z',
    'reverse_bound_rhs',
    'reverse_bound_estimate',
    'two_constants_bound',
    'simple_bound_rhs',
    'triv_bound_slack',
    'inner_bound_rhs',
    'bound_chain',
    'angular_derivative',
    'jc_consistency',
    'angular_sweep',
    'moebius_detect',
    'outer_check',
    'inner_factor_probe',
    'divisibility_check',
    'eta_evidence',
    'falsify',
]
