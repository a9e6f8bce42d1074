"""
Moebius/외부함수 분류 검사 모듈

내부함수 theta 에 대해 다음 동치를 수치적으로 점검합니다.
    (i) theta 는 Moebius 변환
    (ii) theta' 은 외부함수
    (iii) eta(Q_theta) <= |theta'| 인 비감소 양수 함수 eta 가 존재
(iii) 은 대우 형태(증거 수집)로만 검사합니다.
"""

import logging
import math
from typing import Dict, Optional, Sequence

import numpy as np
from scipy.stats import qmc

from config.constants import DEFAULT_PROBE_COUNT, DEFAULT_PROBE_RADIUS, TWO_PI
from config.settings import EQUALITY_RTOL, GRID_N, MAX_CLAMPED_MASS
from lab.boundary_geometry import integrate_boundary, log_modulus, poisson_kernel
from lab.holo_zoo import boundary_trace, critical_points, derivative_map, product
from lab.holomap import HoloMap, as_complex
from lab.schwarz_pick_core import q_ratio
from models.errors import NotLogIntegrable
from models.geometry_models import BoundarySamples, CircleGrid

logger = logging.getLogger(__name__)

# |theta'(z)| below this is treated as a zero of theta'
CRITICAL_FLOOR = 1e-14


def default_probes(count: int = DEFAULT_PROBE_COUNT, radius: float = DEFAULT_PROBE_RADIUS,
                   include_origin: bool = True) -> np.ndarray:
    """
    준난수(Halton) 탐침점 (면적 균등, |z| <= radius)

    Returns:
        np.ndarray: 복소 탐침점 (include_origin 이면 0 이 맨 앞)
    """
    unit = qmc.Halton(d=2, scramble=False).random(count + 1)[1:]
    points = radius * np.sqrt(unit[:, 0]) * np.exp(1j * TWO_PI * unit[:, 1])
    if include_origin:
        points = np.concatenate([[0j], points])
    return points


def _probes(probes: Optional[Sequence], r_max: Optional[float] = None) -> np.ndarray:
    if probes is None:
        radius = DEFAULT_PROBE_RADIUS if r_max is None else min(DEFAULT_PROBE_RADIUS, r_max)
        return default_probes(radius=radius)
    return np.array([as_complex(p) for p in probes], dtype=complex)


def _grid(grid: Optional[CircleGrid]) -> CircleGrid:
    return grid if grid is not None else CircleGrid(n=GRID_N)


def _log_trace(f: HoloMap, grid: CircleGrid) -> BoundarySamples:
    logs = log_modulus(boundary_trace(f, grid, which='value'))
    if logs.clamped is not None:
        mass = float(np.count_nonzero(logs.clamped)) / grid.n
        if mass > MAX_CLAMPED_MASS:
            raise NotLogIntegrable(f"{f.label}: clamped mass {mass:.3e} exceeds {MAX_CLAMPED_MASS:.3e}")
    return logs


def moebius_detect(theta: HoloMap, probes: Optional[Sequence] = None,
                   rtol: float = EQUALITY_RTOL, r_max: Optional[float] = None) -> bool:
    """
    모든 탐침점에서 |theta'(z)| = Q_theta(z) (상대 rtol) 인지

    r_max 를 주면 기본 탐침점 반경을 r_max 로 줄이고 평가도 |z| <= r_max 로 제한합니다.

    Example:
        >>> moebius_detect(moebius(1, 0.3))
        True
    """
    for z in _probes(probes, r_max):
        q = q_ratio(theta, z, r_max)
        residual = abs(abs(theta.deriv(z, r_max)) - q)
        if residual > rtol * q:
            logger.debug("%s is not Moebius: residual %.3e at z=%s", theta.label, residual, z)
            return False
    return True


def outer_check(f: HoloMap, probes: Optional[Sequence] = None,
                grid: Optional[CircleGrid] = None, r_max: Optional[float] = None) -> float:
    """
    외부함수 판정 잔차 max_z |log|f(z)| - int log|f| d(omega_z)|

    tol 이하면 수치적으로 외부함수, 0.1 초과면 외부함수가 아님이 확인됩니다.
    f(z) = 0 인 탐침점에서는 inf 를 돌려줍니다.

    Raises:
        NotLogIntegrable: 클램핑 질량 초과
    """
    logs = _log_trace(f, _grid(grid))
    worst = 0.0
    for z in _probes(probes, r_max):
        value = abs(complex(f.eval(z, r_max)))
        if value == 0.0:
            return math.inf
        harmonic = float(integrate_boundary(z, logs, None, poisson_kernel).value.real)
        worst = max(worst, abs(math.log(value) - harmonic))
    return worst


def inner_factor_probe(theta: HoloMap, candidate: HoloMap, probes: Optional[Sequence] = None,
                       grid: Optional[CircleGrid] = None, mode: str = 'match') -> float:
    """
    theta' 의 내부인자 후보 검사

    Args:
        theta: 내부함수
        candidate: 내부인자 후보
        mode: 'match' 이면 max |(|theta'| - |cand| |O|)|/|theta'|,
            'divides' 이면 부호 있는 로그 결손 max log(|theta'|/(|cand| |O|))

    Returns:
        float: match 는 tol 이하면 완전한 내부인자, divides 는 tol 이하면 나눔

    Raises:
        NotLogIntegrable: 클램핑 질량 초과
    """
    if mode not in ('match', 'divides'):
        raise ValueError(f"unknown mode: {mode}")
    derivative = derivative_map(theta)
    logs = _log_trace(derivative, _grid(grid))
    worst = -math.inf if mode == 'divides' else 0.0
    used = 0
    for z in _probes(probes):
        dz = abs(complex(theta.deriv(z)))
        cz = abs(complex(candidate.eval(z)))
        if dz < CRITICAL_FLOOR or cz < CRITICAL_FLOOR:
            continue
        outer = math.exp(float(integrate_boundary(z, logs, None, poisson_kernel).value.real))
        if mode == 'match':
            worst = max(worst, abs(dz - cz * outer) / dz)
        else:
            worst = max(worst, math.log(dz / (cz * outer)))
        used += 1
    logger.debug("%s vs %s (%s): %.3e over %d probes", theta.label, candidate.label, mode, worst, used)
    return worst


def divisibility_check(inner: HoloMap, probes: Optional[Sequence] = None,
                       grid: Optional[CircleGrid] = None) -> float:
    """I 가 (I^2)' 의 내부인자를 나누는지: I^2 에 대한 divides 결손"""
    return inner_factor_probe(product(inner, inner), inner, probes, grid, mode='divides')


def eta_evidence(theta: HoloMap, probes: Optional[Sequence] = None,
                 scan_critical: bool = True) -> Dict[str, float]:
    """
    (iii) 의 대우 증거

    Q_theta >= q_floor 이므로 (iii) 이 성립하면 |theta'| >= eta(q_floor) > 0 이어야 합니다.
    min_deriv 가 0 에 가까우면 어떤 eta 도 불가능합니다.

    Returns:
        Dict[str, float]: min_deriv, q_floor, max_ratio (Q/|theta'| 최댓값)
    """
    points = list(_probes(probes))
    if scan_critical:
        points.extend(critical_points(theta))
    a0 = abs(complex(theta.value_fn(0j)))
    q_floor = (1.0 - a0) / (1.0 + a0)
    min_deriv = math.inf
    max_ratio = 0.0
    for z in points:
        d = abs(complex(theta.deriv_fn(z)))
        q = q_ratio(theta, z, r_max=1.0)
        min_deriv = min(min_deriv, d)
        max_ratio = max(max_ratio, math.inf if d < CRITICAL_FLOOR else q / d)
    return {'min_deriv': min_deriv, 'q_floor': q_floor, 'max_ratio': max_ratio}
