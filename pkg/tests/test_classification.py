import math

import numpy as np
import pytest

from lab.classification import (
    default_probes,
    divisibility_check,
    eta_evidence,
    inner_factor_probe,
    moebius_detect,
    outer_check,
)
from lab.holo_zoo import atomic_s, b_alpha, blaschke, derivative_map, identity, moebius, outer_power, power
from models.errors import ParamOutOfDomain
from models.geometry_models import CircleGrid

FEW_PROBES = [0.0, 0.3 + 0.2j, -0.5j, 0.6]


def test_default_probes():
    probes = default_probes()
    assert len(probes) == 33
    assert probes[0] == 0
    assert np.all(np.abs(probes) <= 0.9)
    assert len(default_probes(8, 0.5, include_origin=False)) == 8
    # deterministic
    assert np.array_equal(default_probes(), probes)


@pytest.mark.parametrize("theta, expected", [
    (moebius(1, 0.3), True),
    (moebius(np.exp(2.0j), -0.6 + 0.1j), True),
    (power(2), False),
    (b_alpha(0.5), False),
    (blaschke([0.0, 0.5]), False),
    (atomic_s(), False),
])
def test_moebius_detect(theta, expected):
    assert moebius_detect(theta) is expected


@pytest.mark.parametrize("theta, expected", [
    (moebius(1, 0.3), True),
    (power(2), False),
    (atomic_s(), False),
])
def test_moebius_detect_within_r_max(theta, expected):
    assert moebius_detect(theta, r_max=0.4) is expected
    with pytest.raises(ParamOutOfDomain):
        moebius_detect(theta, probes=[0.6], r_max=0.4)


def test_outer_check_within_r_max(grid):
    f = derivative_map(moebius(1.0, 0.5))
    assert outer_check(f, grid=grid, r_max=0.3) <= 1e-6
    with pytest.raises(ParamOutOfDomain):
        outer_check(f, [0.8], grid, r_max=0.3)


def test_one_minus_z_is_outer():
    f = outer_power(1.0, [(0.0, 1.0)])
    assert outer_check(f, FEW_PROBES, CircleGrid(n=2 ** 14)) <= 1e-7


@pytest.mark.parametrize("a", [0.0, 0.5, -0.3 + 0.6j])
def test_moebius_derivative_is_outer(a, grid):
    assert outer_check(derivative_map(moebius(1.0, a)), grid=grid) <= 1e-6


def test_derivative_of_z_squared_is_not_outer(grid):
    assert outer_check(derivative_map(power(2)), grid=grid) >= 0.1
    assert outer_check(identity(), [0.0], grid) == math.inf


def test_s_is_not_outer(grid):
    # |S| = 1 on the circle while log|S(0)| = -1
    assert outer_check(atomic_s(), [0.0], grid) == pytest.approx(1.0, abs=1e-9)


def test_inner_factor_of_z_squared_derivative(grid):
    assert inner_factor_probe(power(2), identity(), grid=grid) <= 1e-10


def test_inner_factor_of_two_zero_blaschke_derivative(grid):
    theta = blaschke([0.0, 0.5])
    crit = blaschke([2 - math.sqrt(3)])
    assert inner_factor_probe(theta, crit, grid=grid) <= 1e-8
    assert inner_factor_probe(theta, identity(), grid=grid) > 0.1


def test_inner_factor_probe_rejects_unknown_mode(small_grid):
    with pytest.raises(ValueError):
        inner_factor_probe(power(2), identity(), FEW_PROBES, small_grid, mode='approx')


@pytest.mark.parametrize("inner", [moebius(1, 0.5), identity(), atomic_s()])
def test_inner_divides_derivative_of_its_square(inner, grid):
    assert divisibility_check(inner, grid=grid) <= 1e-6


@pytest.mark.slow
def test_b_alpha_derivative_has_inner_factor_s():
    fine = CircleGrid(n=2 ** 16)
    probes = default_probes(32, 0.5)
    assert inner_factor_probe(b_alpha(0.5), atomic_s(), probes, fine) <= 1e-3
    assert outer_check(derivative_map(b_alpha(0.5)), [0.0], fine) == pytest.approx(1.0, abs=1e-3)


def test_eta_evidence_for_moebius():
    evidence = eta_evidence(moebius(1, 0.4))
    assert evidence['min_deriv'] > 0.1
    assert evidence['max_ratio'] == pytest.approx(1.0, rel=1e-9)
    assert evidence['q_floor'] == pytest.approx(0.6 / 1.4)


def test_eta_evidence_finds_critical_point():
    evidence = eta_evidence(blaschke([0.0, 0.5]))
    assert evidence['min_deriv'] < 1e-8
    assert evidence['max_ratio'] > 1e6
