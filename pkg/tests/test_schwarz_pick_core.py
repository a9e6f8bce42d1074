import math

import numpy as np
import pytest
from hypothesis import assume, given, settings

from config.constants import E_TO_ONE_OVER_E
from config.settings import ABS_FLOOR
from lab import schwarz_pick_core
from lab.holo_zoo import atomic_s, b_alpha, blaschke, moebius, outer_power, power
from lab.schwarz_pick_core import (
    bound_chain,
    cone_constant,
    dbr_kernel,
    f_z,
    inner_bound_rhs,
    julia_residual,
    lower_bound_slack,
    q_over_deriv,
    q_ratio,
    reverse_bound_estimate,
    reverse_bound_rhs,
    schwarz_pick_slack,
    simple_bound_rhs,
    tolerance,
    triv_bound_slack,
    two_constants_bound,
)
from models.errors import BoundarySingularity, ChainViolation, ParamOutOfDomain, UnboundedOnE
from models.geometry_models import ArcSet, BoundaryPoint
from tests.strategies import blaschke_zeros, disk_points, random_disk

LEFT_HALF = ArcSet(arcs=[(math.pi / 2, 3 * math.pi / 2)])


def test_tolerance_policy():
    assert tolerance(5.0, 0.0, 1e-9) == pytest.approx(5e-9)
    assert tolerance(0.5, 1e-6, 1e-9) == pytest.approx(1e-5)
    assert tolerance(math.inf) == ABS_FLOOR


def test_q_ratio_of_s_at_origin():
    assert q_ratio(atomic_s(), 0) == pytest.approx(1 - math.exp(-2), abs=1e-12)


def test_cone_constant():
    assert cone_constant(0.5j) == pytest.approx(3.0)


@pytest.mark.parametrize("z", [0.0, 0.3 - 0.4j, -0.8, 0.9j])
def test_moebius_is_the_equality_case(z):
    m = moebius(np.exp(0.7j), 0.4 + 0.2j)
    assert schwarz_pick_slack(m, z) == pytest.approx(0.0, abs=1e-10)
    assert q_over_deriv(m, z) == pytest.approx(1.0, rel=1e-10)


def test_q_over_deriv_at_critical_point():
    assert q_over_deriv(power(2), 0.0) == math.inf


@given(blaschke_zeros(), disk_points(0.9))
@settings(max_examples=40, deadline=None)
def test_classical_inequalities_hold(zeros, z):
    f = blaschke(zeros)
    assert schwarz_pick_slack(f, z) >= -1e-10
    assert lower_bound_slack(f, z) >= -1e-10


@pytest.mark.slow
def test_schwarz_pick_on_ten_thousand_samples(zoo, rng):
    worst = math.inf
    count = 0
    for f in zoo.values():
        for z in random_disk(rng, 2000, radius=0.95):
            slack = schwarz_pick_slack(f, z)
            worst = min(worst, slack / max(1.0, abs(f.deriv(z))))
            count += 1
    assert count >= 10_000
    assert worst >= -1e-12


def test_lower_bound_slack_for_s():
    s = atomic_s()
    a0 = math.exp(-1.0)
    for z in (0.0, -0.9, 0.5j, 0.95):
        assert lower_bound_slack(s, z) >= 0.0
    assert lower_bound_slack(s, 0.0) == pytest.approx(1 - a0 ** 2 - (1 - a0) / (1 + a0))


# ----------------------------------------------------------------------------
# Julia lemma and kernels
# ----------------------------------------------------------------------------

@pytest.mark.parametrize("z, angle", [(0.2 + 0.1j, 1.0), (-0.6, 2.5), (0.7j, 4.0)])
def test_julia_residual_vanishes_for_moebius(z, angle):
    m = moebius(1.0, -0.3 + 0.5j)
    assert julia_residual(m, z, BoundaryPoint(angle=angle)) == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("f", [atomic_s(), b_alpha(0.5), blaschke([0.5, -0.2j, 0.7])])
def test_julia_residual_is_nonnegative(f):
    for z in (0.0, 0.3 - 0.3j, -0.85):
        for angle in (0.5, 2.0, 3.5, 5.9):
            assert julia_residual(f, z, BoundaryPoint(angle=angle)) >= -1e-10


def test_julia_residual_accepts_complex_boundary_points():
    m = blaschke([0.5])
    zeta = complex(math.cos(1.2), math.sin(1.2))
    assert julia_residual(m, 0.1, zeta) == pytest.approx(julia_residual(m, 0.1, BoundaryPoint(angle=1.2)))


def test_julia_residual_rejects_singular_angle_and_non_inner_maps():
    with pytest.raises(BoundarySingularity):
        julia_residual(atomic_s(), 0.2, BoundaryPoint(angle=0.0))
    with pytest.raises(ParamOutOfDomain):
        julia_residual(outer_power(0.5, [(0.0, 1.0)]), 0.2, BoundaryPoint(angle=1.0))


def test_f_z_on_the_diagonal_is_q():
    f = b_alpha(0.3 - 0.2j)
    z = 0.25 + 0.4j
    assert f_z(f, z, z) == pytest.approx(q_ratio(f, z))
    assert dbr_kernel(f, z, z).real == pytest.approx(q_ratio(f, z))


@given(disk_points(0.8), disk_points(0.8))
@settings(max_examples=30, deadline=None)
def test_f_z_factors_through_the_kernel(zoo, z, w):
    assume(abs(w - z) > 1e-6)
    for f in zoo.values():
        lhs = f_z(f, z, w) * dbr_kernel(f, z, z)
        rhs = dbr_kernel(f, z, w) ** 2
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_f_z_is_bounded_by_boundary_derivative():
    f = blaschke([0.6, 0.1 + 0.5j])
    z = -0.3 + 0.2j
    for angle in np.linspace(0.0, 2 * math.pi, 37):
        zeta = BoundaryPoint(angle=angle)
        assert abs(f_z(f, z, zeta)) <= abs(complex(f.boundary_deriv_fn(angle))) + 1e-12


# ----------------------------------------------------------------------------
# reverse inequality
# ----------------------------------------------------------------------------

def test_reverse_bound_for_z_squared_on_full_circle(grid):
    z = 0.3 + 0.2j
    f = power(2)
    rhs = reverse_bound_rhs(f, ArcSet.full(), z, grid)
    assert rhs == pytest.approx(2.0, abs=1e-8)
    assert rhs - q_ratio(f, z) == pytest.approx(1 - abs(z) ** 2, abs=1e-8)


def test_reverse_bound_with_empty_set_is_cone(grid):
    z = -0.4 + 0.1j
    assert reverse_bound_rhs(blaschke([0.5]), ArcSet.empty(), z, grid) == pytest.approx(cone_constant(z))
    assert two_constants_bound(blaschke([0.5]), ArcSet.empty(), z, grid) == pytest.approx(cone_constant(z))


@pytest.mark.parametrize("z", [0.0, 0.3 - 0.2j, -0.6j])
def test_inner_bound_of_moebius_is_sharp(z, grid):
    m = moebius(1.0, 0.5 - 0.1j)
    assert inner_bound_rhs(m, z, grid) == pytest.approx(q_ratio(m, z), rel=1e-10)


@pytest.mark.parametrize("z", [0.0, 0.3 - 0.2j, -0.5 + 0.4j])
def test_inner_bound_of_s_matches_closed_form(z, grid):
    expected = 2.0 / abs(1 - z) ** 2
    value = inner_bound_rhs(atomic_s(), z, grid)
    assert value == pytest.approx(expected, rel=1e-6)
    assert q_ratio(atomic_s(), z) <= value


def test_inner_bound_rejects_non_inner_maps(small_grid):
    with pytest.raises(ParamOutOfDomain):
        inner_bound_rhs(outer_power(0.5, [(0.0, 1.0)]), 0.1, small_grid)


@pytest.mark.parametrize("z", [0.0, 0.2 + 0.3j, -0.7])
def test_reverse_bound_dominates_q_on_an_arc(z, grid):
    f = blaschke([0.5, -0.3j])
    rhs, err = reverse_bound_estimate(f, LEFT_HALF, z, grid)
    assert q_ratio(f, z) <= rhs + tolerance(rhs, err)
    assert rhs <= simple_bound_rhs(f, LEFT_HALF, z, grid)
    assert triv_bound_slack(f, LEFT_HALF, z, grid) >= -tolerance(1.0, err)


def test_simple_bound_scales_two_constants_bound(small_grid):
    f = blaschke([0.5])
    z = 0.1j
    assert simple_bound_rhs(f, LEFT_HALF, z, small_grid) == pytest.approx(
        E_TO_ONE_OVER_E * two_constants_bound(f, LEFT_HALF, z, small_grid))


def test_simple_bound_rejects_pole_inside_e(small_grid):
    with pytest.raises(UnboundedOnE):
        simple_bound_rhs(atomic_s(), ArcSet(arcs=[(-0.5, 0.5)]), 0.2, small_grid)


# ----------------------------------------------------------------------------
# proof chain
# ----------------------------------------------------------------------------

def test_chain_for_b_alpha_on_an_arc(grid):
    report = bound_chain(b_alpha(0.5), LEFT_HALF, 0.3, grid)
    assert report.fzz == pytest.approx(report.q, rel=1e-10)
    assert report.q <= report.gzz + tolerance(report.gzz, report.quad_error)
    assert report.gzz <= report.rhs_main + tolerance(report.rhs_main, report.quad_error)
    assert report.rhs_simple is not None
    assert 0.0 < report.omega_e < 1.0
    assert report.omega_e_complement == pytest.approx(1.0 - report.omega_e)


def test_chain_on_full_circle_collapses_second_integral(grid):
    z = -0.2 + 0.1j
    report = bound_chain(blaschke([0.4, 0.6j]), ArcSet.full(), z, grid)
    assert report.i2 == 0.0 and report.taburetka == 0.0
    assert report.gzz == pytest.approx(report.rhs_main)
    assert report.estone_min_slack >= -tolerance(10.0)
    assert report.full_taburetka <= cone_constant(z) + tolerance(cone_constant(z), report.quad_error)


def test_chain_with_empty_set(grid):
    z = 0.5 - 0.1j
    report = bound_chain(moebius(1.0, 0.2), ArcSet.empty(), z, grid)
    assert report.i1 == 0.0
    assert report.rhs_main == pytest.approx(cone_constant(z))
    assert report.estone_min_slack is None


@pytest.mark.parametrize("f, e", [
    (atomic_s(), ArcSet(arcs=[(0.0, math.pi)])),
    (b_alpha(0.5), LEFT_HALF),
    (blaschke([0.4, 0.6j]), ArcSet.full()),
    (moebius(1.0, 0.2), ArcSet.empty()),
])
def test_outer_g_z_matches_the_two_integrals(f, e, grid):
    report = bound_chain(f, e, 0.2 + 0.1j, grid)
    assert report.gz_outer == pytest.approx(math.exp(report.i1 + report.i2), rel=1e-9)
    assert report.family == f.label


def test_chain_links_coincide_for_moebius_on_full_circle(grid):
    z = 0.35 - 0.2j
    report = bound_chain(moebius(np.exp(0.4j), 0.3 + 0.1j), ArcSet.full(), z, grid)
    for value in (report.fzz, report.gzz, report.gz_outer, report.rhs_main):
        assert value == pytest.approx(report.q, rel=1e-10)


def test_chain_reports_a_broken_outer_construction(monkeypatch, small_grid):
    monkeypatch.setattr(schwarz_pick_core, "g_z_log_trace", lambda dlogs, flogs, e: flogs)
    with pytest.raises(ChainViolation) as info:
        bound_chain(power(2), LEFT_HALF, 0.3, small_grid)
    assert info.value.link == "gz_outer"


# ----------------------------------------------------------------------------
# degenerate arc sets
# ----------------------------------------------------------------------------

DEGENERATE_DELTAS = (1e-3, 1e-6, 1e-9)


def _circle_minus(delta):
    # E = T minus an arc of length 2 pi delta starting at pi
    return ArcSet(arcs=[(math.pi + 2 * math.pi * delta, 3 * math.pi)])


@pytest.mark.parametrize("delta", DEGENERATE_DELTAS)
def test_nearly_full_set_for_z_squared(delta, grid):
    expected = 2.0 ** (1.0 - delta) * delta ** (-delta)
    assert reverse_bound_rhs(power(2), _circle_minus(delta), 0.0, grid) == pytest.approx(expected, rel=1e-9)


def test_nearly_full_set_approaches_the_inner_bound(grid):
    z = 0.2 - 0.1j
    s = atomic_s()
    values = [reverse_bound_rhs(s, _circle_minus(delta), z, grid) for delta in DEGENERATE_DELTAS]
    limit = inner_bound_rhs(s, z, grid)
    assert values[0] > values[1] > values[2]
    assert all(v >= limit * (1 - 1e-12) for v in values)
    assert values[-1] == pytest.approx(limit, rel=1e-6)


def test_chain_reports_first_broken_link(monkeypatch, small_grid):
    monkeypatch.setattr(schwarz_pick_core, "q_ratio", lambda *args, **kwargs: 1e6)
    with pytest.raises(ChainViolation) as info:
        bound_chain(moebius(1.0, 0.2), ArcSet.full(), 0.1, small_grid)
    assert info.value.link == "q_le_gzz"
    assert info.value.residual < 0
