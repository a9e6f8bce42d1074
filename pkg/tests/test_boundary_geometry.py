import math

import numpy as np
import pytest
from hypothesis import given, settings
from numpy.testing import assert_allclose

from lab.boundary_geometry import (
    arc_measure,
    cell_fractions,
    complement,
    harmonic_measure,
    harmonic_measure_estimate,
    harmonic_measure_exact,
    herglotz_integral,
    integrate_boundary,
    log_modulus,
    map_arcs_by_automorphism,
    multiply_samples,
    normalize,
    outer_from_modulus,
    parse_arc_set,
    poisson_integral,
    refine_estimate,
    sample_function,
    samples_to_rows,
)
from models.errors import GridTooCoarse, NotLogIntegrable, SpecParseError
from models.geometry_models import ArcSet, BoundarySamples, CircleGrid
from tests.strategies import arc_sets, disk_points

TWO_PI = 2.0 * math.pi


# ----------------------------------------------------------------------------
# arc sets
# ----------------------------------------------------------------------------

def test_normalize_wraps_past_two_pi():
    e = normalize([(5.5, 7.0)])
    assert len(e.arcs) == 2
    assert e.arcs[0][0] == 0.0 and e.arcs[0][1] == pytest.approx(7.0 - TWO_PI)
    assert e.arcs[1] == (5.5, TWO_PI)
    assert e.measure() == pytest.approx(1.5 / TWO_PI)


def test_normalize_merges_overlaps():
    e = normalize([(0.0, 1.0), (0.5, 2.0), (2.0, 2.5)])
    assert e.arcs == [(0.0, 2.5)]


def test_arcs_are_half_open():
    e = ArcSet(arcs=[(0.0, math.pi)])
    assert e.contains([0.0, math.pi / 2, math.pi, TWO_PI]).tolist() == [True, True, False, True]


@pytest.mark.parametrize("text, measure", [
    ("full", 1.0),
    ("T", 1.0),
    ("empty", 0.0),
    ("0,3.141592653589793", 0.5),
    ("0,1|2,3", 2.0 / TWO_PI),
])
def test_parse_arc_set(text, measure):
    assert parse_arc_set(text).measure() == pytest.approx(measure, abs=1e-15)


@pytest.mark.parametrize("text", ["0", "a,b", "2,1", "0,1|"])
def test_parse_arc_set_rejects_garbage(text):
    with pytest.raises(SpecParseError):
        parse_arc_set(text)


@given(arc_sets())
@settings(max_examples=50, deadline=None)
def test_complement_partitions_circle(e):
    comp = complement(e)
    assert e.measure() + comp.measure() == pytest.approx(1.0, abs=1e-12)
    angles = np.linspace(0.0, TWO_PI, 997, endpoint=False)
    assert not np.any(e.contains(angles) & comp.contains(angles))


@given(arc_sets())
@settings(max_examples=50, deadline=None)
def test_cell_fractions_sum_to_measure(e):
    n = 512
    assert np.sum(cell_fractions(e, n)) / n == pytest.approx(e.measure(), abs=1e-12)


# ----------------------------------------------------------------------------
# harmonic measure
# ----------------------------------------------------------------------------

@given(arc_sets())
@settings(max_examples=50, deadline=None)
def test_harmonic_measure_at_origin_is_arc_length(e):
    assert harmonic_measure(0.0, e, CircleGrid(n=1024)) == pytest.approx(e.measure(), abs=1e-12)


@given(disk_points(0.9))
@settings(max_examples=30, deadline=None)
def test_harmonic_measure_of_circle_is_one(z):
    est = harmonic_measure_estimate(z, ArcSet(arcs=[(0.0, math.pi), (math.pi, TWO_PI)]), CircleGrid(n=4096))
    assert abs(est.value - 1.0) <= max(2 * est.error, 1e-12)


def test_harmonic_measure_of_empty_set():
    assert harmonic_measure(0.5j, ArcSet.empty(), CircleGrid(n=1024)) == 0.0


@given(arc_sets(), arc_sets(), disk_points(0.9))
@settings(max_examples=30, deadline=None)
def test_harmonic_measure_grows_with_the_set(e, extra, z):
    grid = CircleGrid(n=1024)
    union = ArcSet(arcs=list(e.arcs) + list(extra.arcs))
    assert harmonic_measure(z, e, grid) <= harmonic_measure(z, union, grid) + 1e-12


@given(arc_sets(), disk_points(0.7))
@settings(max_examples=30, deadline=None)
def test_harmonic_measure_matches_closed_form(e, z):
    assert harmonic_measure(z, e, CircleGrid(n=4096)) == pytest.approx(harmonic_measure_exact(z, e), abs=1e-5)


@pytest.mark.parametrize("z", [0.3 - 0.2j, -0.5 + 0.1j, 0.6j])
def test_conformal_invariance(z):
    e = ArcSet(arcs=[(0.5, 2.0), (3.0, 4.5)])
    est = harmonic_measure_estimate(z, e, CircleGrid(n=4096))
    image = map_arcs_by_automorphism(e, z)
    assert abs(est.value - image.measure()) <= 4 * est.error + 1e-6
    assert image.measure() == pytest.approx(harmonic_measure_exact(z, e), abs=1e-12)


def test_quadrature_error_shrinks_on_grid_doubling():
    def smooth(t):
        return 1.0 / (1.1 - np.cos(t))

    errors = [refine_estimate(smooth, 0.0, n)[1] for n in (32, 64, 128)]
    assert errors[1] <= errors[0] / 4
    assert errors[2] <= errors[1] / 4
    value, _ = refine_estimate(smooth, 0.0, 128)
    assert value == pytest.approx(1.0 / math.sinh(math.acosh(1.1)), abs=1e-10)


def test_poisson_integral_reproduces_harmonic_function():
    u = sample_function(np.cos, CircleGrid(n=1024))
    assert poisson_integral(0.4 + 0.3j, u) == pytest.approx(0.4, abs=1e-12)


# ----------------------------------------------------------------------------
# near-boundary refinement
# ----------------------------------------------------------------------------

def test_near_boundary_without_refinement_raises():
    with pytest.raises(GridTooCoarse):
        harmonic_measure_estimate(0.998, ArcSet(arcs=[(1.0, 2.0)]), CircleGrid(n=1024), adaptive=False)


def test_refinement_depth_cap():
    samples = sample_function(np.ones_like, CircleGrid(n=1024))
    with pytest.raises(GridTooCoarse):
        integrate_boundary(0.998, samples, ArcSet(arcs=[(1.0, 2.0)]), adaptive=True, max_depth=1)


def test_refinement_needs_a_source():
    samples = BoundarySamples(grid=CircleGrid(n=1024), values=np.ones(1024))
    with pytest.raises(GridTooCoarse):
        integrate_boundary(0.998, samples, None, adaptive=True)


def test_refined_harmonic_measure_matches_closed_form():
    e = ArcSet(arcs=[(math.pi / 2, 3 * math.pi / 2)])
    est = harmonic_measure_estimate(0.995, e, CircleGrid(n=1024), adaptive=True)
    assert est.refined_depth >= 1
    assert est.value == pytest.approx(harmonic_measure_exact(0.995, e), abs=1e-6)


# ----------------------------------------------------------------------------
# outer functions
# ----------------------------------------------------------------------------

@pytest.mark.parametrize("z", [0.0, 0.3 + 0.2j, -0.5j, 0.6])
def test_outer_of_distance_to_one(z):
    h = sample_function(lambda t: np.abs(1.0 - np.exp(1j * t)), CircleGrid(n=2 ** 14),
                        singular_angles=[0.0], orders=[1.0])
    outer = outer_from_modulus(h, label="|1-zeta|")
    assert abs(outer.eval(z) - (1.0 - z)) <= 1e-8


def test_outer_of_smooth_modulus_is_positive_at_origin():
    h = sample_function(lambda t: np.exp(np.cos(t)), CircleGrid(n=1024))
    outer = outer_from_modulus(h)
    # log|O| = harmonic extension of cos, so O(z) = exp(z)
    assert_allclose(outer.eval(0.0), 1.0, atol=1e-12)
    assert_allclose(outer.eval(0.5 - 0.2j), np.exp(0.5 - 0.2j), rtol=1e-12)


@pytest.mark.parametrize("z", [0.0, 0.3 + 0.2j, -0.5j])
def test_outer_of_inverse_square_distance(z):
    # modulus 2/|1-zeta|^2 belongs to 2/(1-z)^2
    h = sample_function(lambda t: 2.0 / np.abs(1.0 - np.exp(1j * t)) ** 2, CircleGrid(n=2 ** 14),
                        singular_angles=[0.0], orders=[-2.0])
    outer = outer_from_modulus(h)
    expected = 2.0 / (1.0 - z) ** 2
    assert abs(outer.eval(z) - expected) <= 1e-8 * abs(expected)


@pytest.mark.parametrize("z", [0.0, 0.4 - 0.3j, -0.6])
def test_outer_is_multiplicative(z):
    grid = CircleGrid(n=2 ** 14)
    h1 = sample_function(lambda t: np.abs(1.0 - np.exp(1j * t)), grid, singular_angles=[0.0], orders=[1.0])
    h2 = sample_function(lambda t: np.exp(np.cos(t)), grid)
    joint = outer_from_modulus(multiply_samples(h1, h2)).eval(z)
    split = outer_from_modulus(h1).eval(z) * outer_from_modulus(h2).eval(z)
    assert abs(joint - split) <= 1e-8 * abs(split)


def test_outer_rejects_modulus_vanishing_on_an_arc():
    h = sample_function(lambda t: np.where(np.asarray(t) < 1.0, 0.0, 1.0), CircleGrid(n=1024))
    with pytest.raises(NotLogIntegrable):
        outer_from_modulus(h)


def test_log_modulus_marks_clamped_nodes():
    h = sample_function(lambda t: np.where(np.asarray(t) < 0.01, 0.0, 2.0), CircleGrid(n=1024))
    logs = log_modulus(h)
    assert logs.log_scale
    assert logs.clamped[0] and not logs.clamped[-1]
    assert logs.values[-1] == pytest.approx(math.log(2.0))


def test_samples_to_rows():
    rows = samples_to_rows(sample_function(np.cos, CircleGrid(n=16)))
    assert len(rows) == 16
    assert set(rows[0]) == {"angle", "re", "im", "weight"}
    assert rows[0]["re"] == pytest.approx(1.0)
    assert rows[3]["weight"] == pytest.approx(1.0 / 16)


def test_arc_measure():
    assert arc_measure(normalize([(0.0, math.pi)])) == pytest.approx(0.5)
    assert arc_measure(ArcSet.full()) == 1.0


def test_herglotz_integral_of_real_part_recovers_identity():
    # Re zeta 의 Herglotz 적분은 z 자체
    samples = sample_function(np.cos, CircleGrid(n=1024))
    assert herglotz_integral(0.3 + 0.2j, samples) == pytest.approx(0.3 + 0.2j, abs=1e-10)
    assert herglotz_integral(0.0, samples) == pytest.approx(0.0, abs=1e-12)
