import importlib

import numpy as np
import pytest

from config.constants import SEARCH_SETTINGS
from lab.falsify import FALSIFY_CHECKS, FAMILY_DRAWS, falsify, random_arcs
from models.errors import ChainViolation, ParamOutOfDomain, SpecParseError

falsify_module = importlib.import_module("lab.falsify")


def test_random_arcs(rng):
    for _ in range(50):
        e = random_arcs(rng)
        assert 1 <= len(e.arcs) <= 3
        assert 0.0 < e.measure() <= 1.0


def test_blaschke_draws_reach_eight_zeros(rng):
    counts = {len(FAMILY_DRAWS['blaschke'](rng).params['zeros']) for _ in range(200)}
    assert SEARCH_SETTINGS['max_zeros'] == 8
    assert max(counts) == 8 and min(counts) == 1


@pytest.mark.parametrize("family", sorted(FAMILY_DRAWS))
def test_no_violations_per_family(family, grid):
    record = falsify(family, 6, seed=7, grid=grid)
    assert record.violations == 0
    assert record.evaluated + record.skipped == 6
    assert record.evaluated > 0
    assert record.min_slack >= -record.tol_at_min
    assert record.argmin['function']
    assert {'schwarz_pick', 'lower_bound', 'theorem_main', 'chain'} <= set(record.check_min_slack)
    assert set(record.check_min_slack) <= set(FALSIFY_CHECKS)
    assert record.check_violations == {name: 0 for name in FALSIFY_CHECKS}


def test_fixed_function_on_full_circle(grid):
    record = falsify("blaschke:0,0", 20, seed=3, grid=grid, full_circle=True)
    assert record.family == "blaschke:0,0"
    assert record.skipped == 0
    z = complex(*record.argmin['z'])
    # rhs = 2 and Q = 1 + |z|^2 for z^2 on the whole circle
    assert record.min_slack == pytest.approx(1 - abs(z) ** 2, abs=1e-7)
    assert record.argmin['rhs'] == pytest.approx(2.0, abs=1e-7)
    # Q - |2z| = (1 - |z|)^2
    assert record.check_min_slack['schwarz_pick'] >= 0.0
    assert record.check_min_slack['theorem_simple'] > record.min_slack
    assert record.check_min_slack['julia'] >= -1e-9


def test_broken_julia_residual_is_reported(monkeypatch, small_grid):
    monkeypatch.setattr(falsify_module, "julia_residual", lambda *args, **kwargs: -1.0)
    record = falsify("moebius", 4, seed=5, grid=small_grid)
    assert record.check_violations['julia'] == record.evaluated
    assert record.check_min_slack['julia'] == -1.0
    assert record.violations == record.evaluated
    assert record.check_violations['theorem_main'] == 0


def test_broken_chain_link_is_reported(monkeypatch, small_grid):
    def broken(*args, **kwargs):
        raise ChainViolation("gzz_le_rhs", -0.5)

    monkeypatch.setattr(falsify_module, "bound_chain", broken)
    record = falsify("blaschke", 3, seed=1, grid=small_grid)
    assert record.check_violations['chain'] == record.evaluated
    assert record.check_min_slack['chain'] == -0.5


def test_same_seed_same_record(small_grid):
    first = falsify("moebius", 8, seed=11, grid=small_grid)
    second = falsify("moebius", 8, seed=11, grid=small_grid)
    assert first.model_dump() == second.model_dump()
    third = falsify("moebius", 8, seed=12, grid=small_grid)
    assert third.argmin != first.argmin


def test_budget_must_be_positive():
    with pytest.raises(ParamOutOfDomain):
        falsify("moebius", 0)


def test_unknown_family_is_parsed_as_function_spec():
    with pytest.raises(SpecParseError):
        falsify("not-a-family", 1)


@pytest.mark.slow
@pytest.mark.parametrize("family", sorted(FAMILY_DRAWS))
def test_larger_sweep_finds_no_violation(family, grid):
    record = falsify(family, 200, seed=2024, grid=grid)
    assert record.violations == 0
    assert all(np.isfinite(v) for v in record.check_min_slack.values())
