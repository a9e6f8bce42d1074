"""
무작위 반증 탐색 모듈

함수족 매개변수, 호 집합 E, 평가점 z 를 무작위로 뽑아 고전 부등식, 주 정리와
따름정리, Julia 잔차, 증명 사슬 고리의 여유 최솟값을 찾습니다. 정리가 옳으므로
-tol 보다 작은 여유는 구현 버그를 뜻합니다.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from config.constants import SEARCH_SETTINGS, TWO_PI
from config.settings import GRID_N, SEED
from lab import holo_zoo
from lab.function_spec import parse_function
from lab.holomap import HoloMap
from lab.schwarz_pick_core import (
    bound_chain,
    cone_constant,
    julia_residual,
    lower_bound_slack,
    q_ratio,
    reverse_bound_estimate,
    schwarz_pick_slack,
    simple_bound_rhs,
    tolerance,
)
from models.errors import ChainViolation, LabError, ParamOutOfDomain, UnboundedOnE
from models.geometry_models import ArcSet, BoundaryPoint, CircleGrid
from models.report_models import FalsifyRecord

logger = logging.getLogger(__name__)


def _disk_point(rng: np.random.Generator, radius: float) -> complex:
    return complex(radius * math.sqrt(rng.random()) * np.exp(1j * TWO_PI * rng.random()))


def _draw_moebius(rng: np.random.Generator) -> HoloMap:
    lam = np.exp(1j * TWO_PI * rng.random())
    return holo_zoo.moebius(lam, _disk_point(rng, SEARCH_SETTINGS['zero_radius']))


def _draw_blaschke(rng: np.random.Generator) -> HoloMap:
    count = int(rng.integers(1, SEARCH_SETTINGS['max_zeros'] + 1))
    zeros = [_disk_point(rng, SEARCH_SETTINGS['zero_radius']) for _ in range(count)]
    return holo_zoo.blaschke(zeros, np.exp(1j * TWO_PI * rng.random()))


def _draw_singular(rng: np.random.Generator) -> HoloMap:
    low, high = SEARCH_SETTINGS['mass_weight']
    count = int(rng.integers(1, 4))
    masses = [(TWO_PI * rng.random(), low + (high - low) * rng.random()) for _ in range(count)]
    return holo_zoo.singular_inner(masses)


def _draw_balpha(rng: np.random.Generator) -> HoloMap:
    low, high = SEARCH_SETTINGS['alpha_radius']
    radius = low + (high - low) * rng.random()
    return holo_zoo.b_alpha(radius * np.exp(1j * TWO_PI * rng.random()))


def _draw_product(rng: np.random.Generator) -> HoloMap:
    return holo_zoo.product(_draw_blaschke(rng), _draw_singular(rng))


FAMILY_DRAWS: Dict[str, Callable[[np.random.Generator], HoloMap]] = {
    'moebius': _draw_moebius,
    'blaschke': _draw_blaschke,
    'singular': _draw_singular,
    'balpha': _draw_balpha,
    'product': _draw_product,
}


def random_arcs(rng: np.random.Generator) -> ArcSet:
    """균등 끝점을 갖는 1~3 개 호의 합집합"""
    count = int(rng.integers(1, SEARCH_SETTINGS['max_arcs'] + 1))
    arcs = []
    for _ in range(count):
        a, b = sorted(TWO_PI * rng.random(2))
        arcs.append((float(a), float(b)))
    return ArcSet(arcs=arcs)


def _sampler(family: str) -> Callable[[np.random.Generator], HoloMap]:
    if family in FAMILY_DRAWS:
        return FAMILY_DRAWS[family]
    fixed = parse_function(family)
    return lambda rng: fixed


# Pointwise checks (Schwarz-Pick, lower bound) only carry rounding error
POINTWISE_TOL = 1e-12

FALSIFY_CHECKS = ('schwarz_pick', 'lower_bound', 'theorem_main', 'theorem_simple', 'julia', 'chain')


def _pointwise_checks(phi: HoloMap, z: complex, q: float) -> List[Tuple[str, float, float]]:
    tol = tolerance(q, 0.0, POINTWISE_TOL)
    return [
        ('schwarz_pick', schwarz_pick_slack(phi, z), tol),
        ('lower_bound', lower_bound_slack(phi, z), tol),
    ]


def _simple_check(phi: HoloMap, e: ArcSet, z: complex, q: float, grid: CircleGrid,
                  error: float) -> List[Tuple[str, float, float]]:
    try:
        rhs = simple_bound_rhs(phi, e, z, grid)
    except UnboundedOnE:
        return []
    return [('theorem_simple', rhs - q, tolerance(rhs, error))]


def _julia_check(phi: HoloMap, z: complex, angle: float) -> List[Tuple[str, float, float]]:
    if not phi.inner or phi.is_singular_angle(angle):
        return []
    zeta = complex(np.exp(1j * angle))
    left = abs(complex(phi.boundary_deriv_fn(angle))) * abs(zeta - z) ** 2 / (1.0 - abs(z) ** 2)
    return [('julia', julia_residual(phi, z, BoundaryPoint(angle=angle)), tolerance(left))]


def _chain_check(phi: HoloMap, e: ArcSet, z: complex, grid: CircleGrid) -> List[Tuple[str, float, float]]:
    try:
        report = bound_chain(phi, e, z, grid)
    except ChainViolation as violation:
        return [('chain', violation.residual, 0.0)]
    slack = min(report.gzz - report.fzz, report.rhs_main - report.gzz,
                report.i2_bound - report.i2, cone_constant(z) - report.full_taburetka)
    return [('chain', slack, tolerance(report.rhs_main, report.quad_error))]


def _run_check(name: str, fn: Callable[[], List[Tuple[str, float, float]]],
               label: str, z: complex) -> List[Tuple[str, float, float]]:
    try:
        return fn()
    except LabError as err:
        logger.debug("%s skipped for %s at z=%s: %s", name, label, z, err)
        return []


def falsify(family: str, budget: int, seed: Optional[int] = None,
            grid: Optional[CircleGrid] = None, full_circle: bool = False) -> FalsifyRecord:
    """
    검증 대상 부등식 전부의 무작위 최소화

    표본마다 Schwarz-Pick, 하한, 주 정리, e^{1/e} 따름정리 (||phi'||_{inf,E} 가
    유한할 때), Julia 잔차 (내부함수, 특이각이 아닌 무작위 zeta), 증명 사슬의
    여유를 계산합니다. min_slack/argmin 은 주 정리 기준이고, 검사별 최솟값과
    위반 수는 check_min_slack/check_violations 에 담깁니다.

    Args:
        family: 함수족 이름(moebius/blaschke/singular/balpha/product) 또는 함수 명세
        budget: 표본 수 (>= 1)
        seed: 난수 시드 (None 이면 설정값)
        grid: 원주 격자
        full_circle: True 면 E = T 로 고정

    Returns:
        FalsifyRecord: 최소 여유와 그 구성

    Raises:
        ParamOutOfDomain: budget < 1
    """
    if budget < 1:
        raise ParamOutOfDomain(f"budget must be >= 1, got {budget}")
    seed = SEED if seed is None else seed
    grid = grid if grid is not None else CircleGrid(n=GRID_N)
    rng = np.random.default_rng(seed)
    draw = _sampler(family)

    best_slack, best_tol = math.inf, 0.0
    argmin: Dict = {}
    check_min: Dict[str, float] = {}
    check_violations: Dict[str, int] = {name: 0 for name in FALSIFY_CHECKS}
    violations = evaluated = skipped = 0
    for _ in range(budget):
        phi = draw(rng)
        e = ArcSet.full() if full_circle else random_arcs(rng)
        z = _disk_point(rng, SEARCH_SETTINGS['z_radius'])
        angle = float(TWO_PI * rng.random())
        try:
            q = q_ratio(phi, z)
            rhs, error = reverse_bound_estimate(phi, e, z, grid)
        except LabError as err:
            skipped += 1
            logger.debug("skipped %s at z=%s: %s", phi.label, z, err)
            continue
        evaluated += 1
        slack = rhs - q
        tol = tolerance(rhs, error)
        if slack < best_slack:
            best_slack, best_tol = slack, tol
            argmin = {'function': phi.label, 'arcs': e.arcs, 'z': [z.real, z.imag], 'rhs': rhs}

        results = [('theorem_main', slack, tol)]
        results += _run_check('pointwise', lambda: _pointwise_checks(phi, z, q), phi.label, z)
        results += _run_check('theorem_simple', lambda: _simple_check(phi, e, z, q, grid, error),
                              phi.label, z)
        results += _run_check('julia', lambda: _julia_check(phi, z, angle), phi.label, z)
        results += _run_check('chain', lambda: _chain_check(phi, e, z, grid), phi.label, z)

        violated = False
        for name, value, allowed in results:
            check_min[name] = min(check_min.get(name, math.inf), value)
            if value < -allowed:
                check_violations[name] += 1
                violated = True
                logger.warning("violation of %s: %s, E=%s, z=%s, slack=%.3e",
                               name, phi.label, e.arcs, z, value)
        if violated:
            violations += 1

    logger.info("falsify %s: %d evaluated, %d skipped, min slack %.3e, %d violations",
                family, evaluated, skipped, best_slack, violations)
    return FalsifyRecord(
        family=family, budget=budget, seed=seed,
        min_slack=best_slack if evaluated else math.nan, tol_at_min=best_tol,
        argmin=argmin, violations=violations, evaluated=evaluated, skipped=skipped,
        check_min_slack=check_min, check_violations=check_violations,
    )
