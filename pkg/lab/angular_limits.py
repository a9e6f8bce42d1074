"""
각도 미분(Julia-Caratheodory) 수치 판정 모듈

반경 r_k = 1 - 2^{-k} (k = 4..depth) 위에서 Q_phi(r_k zeta) 와 차분몫을 추적해
각도 미분의 존재/발산을 판정합니다. Stolz 각 pi/4 의 두 번째 경로를
일관성 확인용으로 함께 계산합니다.
"""

import logging
from typing import List, Sequence

import numpy as np

from config.constants import (
    ANGULAR_CROSS_RTOL,
    ANGULAR_DEFAULT_DEPTH,
    ANGULAR_DIVERGENCE_CEILING,
    ANGULAR_MAX_DEPTH,
    ANGULAR_MIN_K,
    ANGULAR_STABLE_RTOL,
    ANGULAR_STABLE_RUN,
    ANGULAR_UNIMODULAR_TOL,
    STOLZ_ANGLE,
)
from lab.holomap import HoloMap
from models.errors import BoundarySingularity, Inconclusive, ParamOutOfDomain
from models.geometry_models import BoundaryPoint
from models.report_models import AngularReport

logger = logging.getLogger(__name__)

# Above this index the difference quotient is dominated by cancellation
DIFFERENCE_MAX_K = 24


def _q_along(phi: HoloMap, points: np.ndarray) -> np.ndarray:
    values = np.asarray(phi.value_fn(points), dtype=complex)
    return (1.0 - np.abs(values) ** 2) / (1.0 - np.abs(points) ** 2)


def _stable_rtol(k: int) -> float:
    # 1 - |phi|^2 loses about eps/(1 - r_k) relative digits
    return max(ANGULAR_STABLE_RTOL, 64 * np.finfo(float).eps * 2.0 ** k)


def _difference_quotient(phi: HoloMap, zeta: BoundaryPoint, ks: np.ndarray) -> complex:
    """반경 차분몫의 Richardson 외삽"""
    point = zeta.value
    radii = 1.0 - 2.0 ** (-ks)
    values = np.asarray(phi.value_fn(radii * point), dtype=complex)
    if phi.is_singular_angle(zeta.angle):
        quotients = np.diff(values) / (np.diff(radii) * point)
    else:
        edge = complex(phi.boundary_fn(zeta.angle))
        quotients = (values - edge) / ((radii - 1.0) * point)
    if len(quotients) < 2:
        return complex(quotients[-1])
    return complex(2.0 * quotients[-1] - quotients[-2])


def angular_derivative(phi: HoloMap, zeta, depth: int = ANGULAR_DEFAULT_DEPTH) -> AngularReport:
    """
    경계점 zeta 에서 각도 미분 존재 판정과 추정

    판정 규칙:
        - 존재: 마지막 3개 반경에서 Q 의 상대 변화 < 1e-6, 1 - |phi(r zeta)| < 1e-6,
          차분몫 모듈러스와 Q 극한이 1e-4 (상대) 이내로 일치
        - 발산: 마지막 3개 반경에서 Q > 1e6 이고 증가

    Args:
        phi: 자기사상
        zeta: 경계점 (BoundaryPoint 또는 각도)
        depth: 최대 k (<= 40)

    Returns:
        AngularReport: 발산이면 exists=False, liminf_estimate=None (+inf 표시)

    Raises:
        ParamOutOfDomain: depth 범위 오류
        Inconclusive: 최대 깊이에서 수렴도 발산도 확인되지 않을 때
    """
    zeta = zeta if isinstance(zeta, BoundaryPoint) else BoundaryPoint(angle=float(zeta))
    if depth > ANGULAR_MAX_DEPTH or depth - ANGULAR_MIN_K + 1 < ANGULAR_STABLE_RUN:
        raise ParamOutOfDomain(
            f"depth must be in [{ANGULAR_MIN_K + ANGULAR_STABLE_RUN - 1}, {ANGULAR_MAX_DEPTH}], got {depth}")

    ks = np.arange(ANGULAR_MIN_K, depth + 1)
    radii = 1.0 - 2.0 ** (-ks)
    points = radii * zeta.value
    q = _q_along(phi, points)
    stolz_points = zeta.value * (1.0 - 2.0 ** (-ks) * np.exp(1j * STOLZ_ANGLE))
    stolz = float(_q_along(phi, stolz_points[-1:])[0])

    tail = q[-ANGULAR_STABLE_RUN:]
    changes = np.abs(np.diff(tail)) / np.abs(tail[1:])
    stable = bool(np.all(changes < _stable_rtol(int(ks[-1]))))
    last_modulus = abs(complex(phi.value_fn(points[-1])))

    if stable:
        liminf = float(np.min(tail))
        derivative = _difference_quotient(phi, zeta, ks[ks <= DIFFERENCE_MAX_K])
        residual = abs(abs(derivative) - liminf)
        if 1.0 - last_modulus >= ANGULAR_UNIMODULAR_TOL:
            raise Inconclusive(
                f"{phi.label} at {zeta.angle:.6g}: Q stable but |phi| -> {last_modulus:.8f}, not 1")
        if residual > ANGULAR_CROSS_RTOL * max(1.0, liminf):
            raise Inconclusive(
                f"{phi.label} at {zeta.angle:.6g}: |difference quotient| {abs(derivative):.8g} "
                f"disagrees with Q limit {liminf:.8g}")
        logger.debug("%s: angular derivative at %.6g = %s", phi.label, zeta.angle, derivative)
        return AngularReport(
            zeta=zeta, exists=True, status='exists', liminf_estimate=liminf,
            derivative_estimate=derivative, radii=radii.tolist(),
            convergence_residual=float(residual), stolz_estimate=stolz,
        )

    increasing = bool(np.all(np.diff(tail) > 0))
    if increasing and np.all(tail > ANGULAR_DIVERGENCE_CEILING):
        logger.debug("%s: Q diverges at %.6g (last %.3e)", phi.label, zeta.angle, tail[-1])
        return AngularReport(
            zeta=zeta, exists=False, status='diverges', liminf_estimate=None,
            derivative_estimate=None, radii=radii.tolist(),
            convergence_residual=float(changes[-1]), stolz_estimate=stolz,
        )

    raise Inconclusive(
        f"{phi.label} at {zeta.angle:.6g}: neither stable (changes {changes.tolist()}) "
        f"nor divergent (last Q {tail[-1]:.3e}) at depth {depth}")


def jc_consistency(phi: HoloMap, zeta, depth: int = ANGULAR_DEFAULT_DEPTH) -> float:
    """
    닫힌 형태 |phi'(zeta)| 와 반경 liminf 추정의 차이

    Raises:
        BoundarySingularity: zeta 가 특이집합 위에 있어 닫힌 형태가 없을 때
        Inconclusive: 각도 미분이 존재한다고 판정되지 않을 때
    """
    zeta = zeta if isinstance(zeta, BoundaryPoint) else BoundaryPoint(angle=float(zeta))
    if phi.is_singular_angle(zeta.angle):
        raise BoundarySingularity(f"{phi.label}: no closed-form derivative at {zeta.angle:.6g}")
    report = angular_derivative(phi, zeta, depth)
    if not report.exists:
        raise Inconclusive(f"{phi.label}: angular derivative at {zeta.angle:.6g} does not exist")
    closed = abs(complex(phi.boundary_deriv_fn(zeta.angle)))
    return float(abs(closed - report.liminf_estimate))


def angular_sweep(phi: HoloMap, angles: Sequence[float],
                  depth: int = ANGULAR_DEFAULT_DEPTH) -> List[AngularReport]:
    """여러 경계점에 대한 판정 (판정 불가는 status='inconclusive' 로 기록)"""
    reports = []
    for angle in angles:
        try:
            reports.append(angular_derivative(phi, angle, depth))
        except Inconclusive as e:
            logger.info("inconclusive at %.6g: %s", angle, e)
            reports.append(AngularReport(
                zeta=BoundaryPoint(angle=float(angle)), exists=False, status='inconclusive',
                radii=(1.0 - 2.0 ** (-np.arange(ANGULAR_MIN_K, depth + 1))).tolist(),
            ))
    return reports
