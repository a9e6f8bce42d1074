"""
역 Schwarz-Pick 부등식과 증명 사슬 계산 모듈

Q_phi, 고전 부등식과 하한, Julia 잔차, F_z, de Branges-Rovnyak 커널,
주 정리 우변(역 부등식), e^{1/e} 따름정리, 내부함수 따름정리, 그리고
증명 사슬 전체를 점검하는 bound_chain 을 제공합니다.

허용오차 정책:
    tol = max(abs_floor, 10 * quad_error) * max(1, |value|)
    상등 판정은 equality_rtol (상대) 을 씁니다.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.constants import E_TO_ONE_OVER_E, SUP_OVERFLOW_GUARD
from config.settings import ABS_FLOOR, EPS_DEG, EQUALITY_RTOL, MAX_CLAMPED_MASS
from lab.boundary_geometry import (
    cell_fractions,
    harmonic_measure_estimate,
    integrate_boundary,
    log_modulus,
    outer_from_modulus,
    poisson_kernel,
    resolved_values,
    sample_function,
)
from lab.holo_zoo import boundary_trace
from lab.holomap import HoloMap, as_complex, check_radius
from models.errors import (
    BoundarySingularity,
    ChainViolation,
    NotLogIntegrable,
    ParamOutOfDomain,
    UnboundedOnE,
)
from models.geometry_models import ArcSet, BoundaryPoint, BoundarySamples, CircleGrid, DiskPoint
from models.report_models import ChainReport

logger = logging.getLogger(__name__)


def tolerance(value: float, quad_error: float = 0.0, abs_floor: Optional[float] = None) -> float:
    """부등식 검사 허용오차 max(abs_floor, 10 quad_error) * max(1, |value|)"""
    floor = ABS_FLOOR if abs_floor is None else abs_floor
    scale = max(1.0, abs(value)) if math.isfinite(value) else 1.0
    return max(floor, 10.0 * quad_error) * scale


def cone_constant(z) -> float:
    """(1+|z|)/(1-|z|)"""
    r = abs(as_complex(z))
    return (1.0 + r) / (1.0 - r)


# ============================================================================
# 점별 양
# ============================================================================

def q_ratio(phi: HoloMap, z, r_max: Optional[float] = None) -> float:
    """
    Q_phi(z) = (1 - |phi(z)|^2)/(1 - |z|^2)

    Example:
        >>> q_ratio(atomic_s(), 0)   # 1 - e^{-2}
        0.8646647167633873
    """
    z = as_complex(z)
    w = phi.eval(z, r_max)
    return float((1.0 - abs(w) ** 2) / (1.0 - abs(z) ** 2))


def schwarz_pick_slack(phi: HoloMap, z, r_max: Optional[float] = None) -> float:
    """Q_phi(z) - |phi'(z)| (자기사상이면 >= -1e-12)"""
    return q_ratio(phi, z, r_max) - abs(phi.deriv(z, r_max))


def lower_bound_slack(phi: HoloMap, z, r_max: Optional[float] = None) -> float:
    """Q_phi(z) - (1 - |phi(0)|)/(1 + |phi(0)|)"""
    a0 = abs(phi.value_fn(0j))
    return q_ratio(phi, z, r_max) - (1.0 - a0) / (1.0 + a0)


def q_over_deriv(phi: HoloMap, z, r_max: Optional[float] = None) -> float:
    """Q_phi(z)/|phi'(z)| (임계점에서는 inf)"""
    d = abs(phi.deriv(z, r_max))
    q = q_ratio(phi, z, r_max)
    return math.inf if d == 0 else q / d


def _boundary_value(phi: HoloMap, zeta) -> complex:
    angle = zeta.angle if isinstance(zeta, BoundaryPoint) else float(np.angle(as_complex(zeta)))
    if phi.is_singular_angle(angle):
        raise BoundarySingularity(f"{phi.label}: angle {angle:.6g} is in the singular support")
    return complex(phi.boundary_fn(angle))


def julia_residual(phi: HoloMap, z, zeta, r_max: Optional[float] = None) -> float:
    """
    Julia 보조정리 잔차

    |phi'(zeta)| |zeta - z|^2/(1 - |z|^2) - |phi(zeta) - phi(z)|^2/(1 - |phi(z)|^2)

    Raises:
        BoundarySingularity: zeta 가 특이집합 위에 있을 때
        ParamOutOfDomain: phi 가 내부함수가 아닐 때
    """
    if not phi.inner:
        raise ParamOutOfDomain(f"{phi.label}: Julia residual needs an inner map")
    z = as_complex(z)
    check_radius(z, r_max)
    phi_zeta = _boundary_value(phi, zeta)
    angle = zeta.angle if isinstance(zeta, BoundaryPoint) else float(np.angle(as_complex(zeta)))
    point = np.exp(1j * angle)
    dphi = abs(complex(phi.boundary_deriv_fn(angle)))
    phi_z = complex(phi.value_fn(z))
    left = dphi * abs(point - z) ** 2 / (1.0 - abs(z) ** 2)
    right = abs(phi_zeta - phi_z) ** 2 / (1.0 - abs(phi_z) ** 2)
    return float(left - right)


def dbr_kernel(phi: HoloMap, z, w) -> complex:
    """de Branges-Rovnyak 커널 k_{phi,z}(w) = (1 - conj(phi(z)) phi(w))/(1 - conj(z) w)"""
    z = as_complex(z)
    phi_z = complex(phi.value_fn(z))
    if isinstance(w, BoundaryPoint):
        phi_w, w = _boundary_value(phi, w), w.value
    else:
        w = as_complex(w)
        phi_w = complex(phi.value_fn(w))
    return (1.0 - phi_z.conjugate() * phi_w) / (1.0 - z.conjugate() * w)


def f_z(phi: HoloMap, z, w) -> complex:
    """
    F_z(w) = (1-|z|^2)/(1-|phi(z)|^2) ((1 - conj(phi(z)) phi(w))/(1 - conj(z) w))^2

    w = z 이면 Q_phi(z) (실수) 를 돌려줍니다.
    """
    z = as_complex(z)
    if not isinstance(w, BoundaryPoint) and as_complex(w) == z:
        return complex(q_ratio(phi, z, r_max=1.0))
    phi_z = complex(phi.value_fn(z))
    scale = (1.0 - abs(z) ** 2) / (1.0 - abs(phi_z) ** 2)
    return complex(scale * dbr_kernel(phi, z, w) ** 2)


def f_z_trace(phi: HoloMap, z, grid: CircleGrid) -> BoundarySamples:
    """원주 위 |F_z| 표본 (phi 의 특이각 노드는 이웃 평균으로 채워짐)"""
    z = complex(as_complex(z))
    phi_z = complex(phi.value_fn(z))
    scale = (1.0 - abs(z) ** 2) / (1.0 - abs(phi_z) ** 2)

    def modulus(theta):
        zeta = np.exp(1j * np.asarray(theta, dtype=float))
        kernel = (1.0 - phi_z.conjugate() * phi.boundary_fn(theta)) / (1.0 - z.conjugate() * zeta)
        return scale * np.abs(kernel) ** 2

    return sample_function(modulus, grid, phi.singular_support,
                           tuple(None for _ in phi.singular_support))


# ============================================================================
# 주 정리 우변
# ============================================================================

@dataclass(frozen=True)
class _MainBound:
    rhs: float
    i1: float
    omega: float
    quad_error: float


def _deriv_log_trace(phi: HoloMap, grid: CircleGrid, e: ArcSet) -> BoundarySamples:
    trace = boundary_trace(phi, grid, which='deriv')
    fractions = cell_fractions(e, grid.n)
    unknown = [i for i, k in trace.singular_orders.items() if k is None and fractions[i] > 0]
    if len(unknown) / grid.n > MAX_CLAMPED_MASS:
        raise BoundarySingularity(f"{phi.label}: {len(unknown)} E-nodes without a boundary derivative")
    return log_modulus(trace)


def _omega(z, e: ArcSet, grid: CircleGrid):
    if e.is_full():
        return 1.0, 0.0
    est = harmonic_measure_estimate(z, e, grid)
    return float(est.value), est.error


def _check_clamped_on(logs: BoundarySamples, e: ArcSet) -> None:
    if logs.clamped is None:
        return
    mass = float(np.sum(logs.clamped * cell_fractions(e, logs.grid.n))) / logs.grid.n
    if mass > MAX_CLAMPED_MASS:
        raise NotLogIntegrable(f"clamped mass {mass:.3e} on E exceeds {MAX_CLAMPED_MASS:.3e}")


def _main_bound(phi: HoloMap, e: ArcSet, z, grid: CircleGrid,
                r_max: Optional[float] = None) -> _MainBound:
    z = as_complex(z)
    check_radius(z, r_max)
    omega, omega_err = _omega(z, e, grid)
    if not e.arcs:
        return _MainBound(rhs=cone_constant(z), i1=0.0, omega=0.0, quad_error=0.0)
    logs = _deriv_log_trace(phi, grid, e)
    _check_clamped_on(logs, e)
    est = integrate_boundary(z, logs, e, poisson_kernel)
    i1 = float(est.value.real)
    rest = 1.0 - omega
    if rest < EPS_DEG:
        rhs = math.exp(i1)
    else:
        rhs = math.exp(i1) * (cone_constant(z) / rest) ** rest
    return _MainBound(rhs=rhs, i1=i1, omega=omega, quad_error=est.error + omega_err)


def reverse_bound_rhs(phi: HoloMap, e: ArcSet, z, grid: CircleGrid,
                      r_max: Optional[float] = None) -> float:
    """
    주 정리 우변 |O(z)| {(1/(1-omega_z(E))) (1+|z|)/(1-|z|)}^{1-omega_z(E)}

    O 는 모듈러스 |phi'| chi_E + chi_{T\\E} 의 외부함수이고
    log|O(z)| = int_E log|phi'| d(omega_z) 입니다. 1 - omega < eps_deg 이면
    |O(z)| 를 돌려줍니다.

    Args:
        phi: 자기사상
        e: 호 집합 E
        z: 평가점
        grid: 원주 격자

    Raises:
        NotLogIntegrable: E 위 클램핑 질량이 허용치를 넘을 때
        BoundarySingularity: E 위에서 경계 도함수를 얻을 수 없을 때
    """
    return _main_bound(phi, e, z, grid, r_max).rhs


def reverse_bound_estimate(phi: HoloMap, e: ArcSet, z, grid: CircleGrid,
                           r_max: Optional[float] = None):
    """(우변, 구적 오차)"""
    bound = _main_bound(phi, e, z, grid, r_max)
    return bound.rhs, bound.quad_error


def _sup_on_e(phi: HoloMap, e: ArcSet, grid: CircleGrid) -> float:
    trace = boundary_trace(phi, grid, which='deriv')
    fractions = cell_fractions(e, grid.n)
    for index, order in trace.singular_orders.items():
        if fractions[index] > 0 and (order is None or order < 0):
            raise UnboundedOnE(f"{phi.label}: |phi'| blows up at angle {grid.nodes[index]:.6g} in E")
    modulus = np.abs(trace.values)
    inside = (fractions > 0) & np.isfinite(modulus)
    sup = float(np.max(modulus[inside])) if inside.any() else 0.0
    if sup > SUP_OVERFLOW_GUARD:
        raise UnboundedOnE(f"{phi.label}: grid max of |phi'| on E is {sup:.3e}")
    return sup


def two_constants_bound(phi: HoloMap, e: ArcSet, z, grid: CircleGrid,
                        r_max: Optional[float] = None) -> float:
    """||phi'||_{inf,E}^{omega} ((1+|z|)/(1-|z|))^{1-omega} (진단용)"""
    z = as_complex(z)
    check_radius(z, r_max)
    omega, _ = _omega(z, e, grid) if e.arcs else (0.0, 0.0)
    sup = _sup_on_e(phi, e, grid) if e.arcs else 1.0
    return sup ** omega * cone_constant(z) ** (1.0 - omega)


def simple_bound_rhs(phi: HoloMap, e: ArcSet, z, grid: CircleGrid,
                     r_max: Optional[float] = None) -> float:
    """
    e^{1/e} ||phi'||_{inf,E}^{omega_z(E)} ((1+|z|)/(1-|z|))^{1-omega_z(E)}

    Raises:
        UnboundedOnE: E 안에 |phi'| 의 극이 있거나 격자 최댓값이 오버플로 가드를 넘을 때
    """
    return E_TO_ONE_OVER_E * two_constants_bound(phi, e, z, grid, r_max)


def triv_bound_slack(phi: HoloMap, e: ArcSet, z, grid: CircleGrid,
                     r_max: Optional[float] = None) -> float:
    """||phi'||_{inf,E}^{omega_z(E)} - |O(z)| (>= -tol)"""
    bound = _main_bound(phi, e, z, grid, r_max)
    sup = _sup_on_e(phi, e, grid) if e.arcs else 1.0
    return sup ** bound.omega - math.exp(bound.i1)


def inner_bound_rhs(theta: HoloMap, z, grid: CircleGrid, r_max: Optional[float] = None) -> float:
    """
    내부함수 따름정리 |O_{|theta'|}(z)| = exp(int_T log|theta'| d(omega_z))

    Raises:
        ParamOutOfDomain: theta 가 내부함수가 아닐 때
    """
    if not theta.inner:
        raise ParamOutOfDomain(f"{theta.label}: inner bound needs an inner map")
    return reverse_bound_rhs(theta, ArcSet.full(), z, grid, r_max)


# ============================================================================
# 증명 사슬
# ============================================================================

def g_z_log_trace(dlogs: Optional[BoundarySamples], flogs: BoundarySamples,
                  e: ArcSet) -> BoundarySamples:
    """
    G_z 의 경계 로그 모듈러스 chi_E log|phi'| + chi_{T\\E} log|F_z|

    호 끝 셀은 E 비율로 두 값을 섞고 제외 노드는 구적 대체값을 쓰므로,
    원 전체 격자합이 I_1 + I_2 의 격자합과 같습니다.

    Args:
        dlogs: log|phi'| 표본 (E 가 공집합이면 None)
        flogs: log|F_z| 표본
        e: 호 집합
    """
    if dlogs is None or not e.arcs:
        return flogs
    fractions = cell_fractions(e, flogs.grid.n)
    d_values = resolved_values(dlogs)
    f_values = resolved_values(flogs)
    values = (np.where(fractions > 0.0, fractions * d_values, 0.0)
              + np.where(fractions < 1.0, (1.0 - fractions) * f_values, 0.0))

    clamped = np.zeros(flogs.grid.n, dtype=bool)
    if dlogs.clamped is not None:
        clamped |= dlogs.clamped & (fractions > 0.0)
    if flogs.clamped is not None:
        clamped |= flogs.clamped & (fractions < 1.0)

    source = None
    if dlogs.source is not None and flogs.source is not None:
        d_source, f_source = dlogs.source, flogs.source

        def source(theta):
            return np.where(e.contains(theta), d_source(theta), f_source(theta))

    return BoundarySamples(grid=flogs.grid, values=values, source=source,
                           log_scale=True, clamped=clamped)


def bound_chain(phi: HoloMap, e: ArcSet, z, grid: CircleGrid,
                r_max: Optional[float] = None, abs_floor: Optional[float] = None) -> ChainReport:
    """
    증명 사슬의 모든 중간량을 계산하고 각 고리를 점검

    G_z 는 모듈러스 |phi'| chi_E + |F_z| chi_{T\\E} 의 외부함수이며
    log|G_z(z)| = I_1 + I_2 입니다. 검사 순서:
    Q = F_z(z) <= |G_z(z)| <= 우변, I_2 <= 오목성 상한,
    int_{T\\E} |F_z| <= int_T |F_z| <= (1+|z|)/(1-|z|), E 위 |F_z| <= |phi'|.

    Returns:
        ChainReport: 모든 중간량

    Raises:
        ChainViolation: 처음 깨진 고리와 잔차
    """
    z = complex(as_complex(z))
    check_radius(z, r_max)
    cone = cone_constant(z)
    q = q_ratio(phi, z, r_max)
    fzz = f_z(phi, z, z).real

    main = _main_bound(phi, e, z, grid, r_max)
    omega, i1 = main.omega, main.i1
    rest = 1.0 - omega
    quad_error = main.quad_error

    ftrace = f_z_trace(phi, z, grid)
    comp = e.complement()
    full_est = integrate_boundary(z, ftrace, None, poisson_kernel)
    full_taburetka = float(full_est.value.real)
    quad_error += full_est.error

    flogs = log_modulus(ftrace)
    i2_comp = 0.0
    if comp.arcs:
        i2_est = integrate_boundary(z, flogs, comp, poisson_kernel)
        i2_comp = float(i2_est.value.real)
        quad_error += i2_est.error
    if rest < EPS_DEG or not comp.arcs:
        i2 = i2_bound = taburetka = 0.0
    else:
        tab_est = integrate_boundary(z, ftrace, comp, poisson_kernel)
        taburetka = float(tab_est.value.real)
        i2 = i2_comp
        i2_bound = rest * math.log(taburetka / rest)
        quad_error += tab_est.error
    gzz = math.exp(i1 + i2)

    estone_min: Optional[float] = None
    retained = 1.0
    dlogs: Optional[BoundarySamples] = None
    if e.arcs:
        dtrace = boundary_trace(phi, grid, which='deriv')
        dlogs = log_modulus(dtrace)
        retained = 1.0 - dtrace.excluded_measure
        on_e = (cell_fractions(e, grid.n) > 0) & ~dtrace.excluded & ~ftrace.excluded
        if on_e.any():
            gaps = np.abs(dtrace.values[on_e]) - ftrace.values[on_e]
            scales = np.maximum(1.0, np.abs(dtrace.values[on_e]))
            worst = int(np.argmin(gaps / scales))
            estone_min = float(gaps[worst])
            estone_scale = float(scales[worst])

    # |G_z(z)| from the outer function itself, against exp(I_1 + I_2) over the whole complement
    g_z = outer_from_modulus(g_z_log_trace(dlogs, flogs, e), label=f"G_z[{phi.label}]")
    gz_outer = abs(complex(g_z.eval(z, r_max)))
    gz_direct = math.exp(i1 + i2_comp)

    try:
        rhs_simple: Optional[float] = simple_bound_rhs(phi, e, z, grid, r_max)
    except UnboundedOnE:
        rhs_simple = None

    report = ChainReport(
        z=DiskPoint(value=z), q=q, fzz=fzz, gzz=gzz, i1=i1, i2=i2, i2_bound=i2_bound,
        rhs_main=main.rhs, rhs_simple=rhs_simple, omega_e=omega, taburetka=taburetka,
        quad_error=quad_error, full_taburetka=full_taburetka, estone_min_slack=estone_min,
        omega_e_complement=1.0 - omega, retained_fraction=retained, gz_outer=gz_outer,
        family=phi.label,
    )

    links = [
        ('fzz_eq_q', -abs(fzz - q), EQUALITY_RTOL * max(1.0, q)),
        ('q_le_gzz', gzz - fzz, tolerance(gzz, quad_error, abs_floor)),
        ('gz_outer', -abs(gz_outer - gz_direct), tolerance(gz_direct, quad_error, abs_floor)),
        ('gzz_le_rhs', main.rhs - gzz, tolerance(main.rhs, quad_error, abs_floor)),
        ('i2_le_bound', i2_bound - i2, tolerance(i2_bound, quad_error, abs_floor)),
        ('taburetka_le_full', full_taburetka - taburetka, tolerance(full_taburetka, quad_error, abs_floor)),
        ('taburetka_le_cone', cone - full_taburetka, tolerance(cone, quad_error, abs_floor)),
    ]
    if estone_min is not None:
        links.append(('estone', estone_min, tolerance(estone_scale, 0.0, abs_floor)))
    for link, residual, tol in links:
        if residual < -tol:
            logger.warning("%s at z=%s: link %s residual %.3e (tol %.1e)",
                           phi.label, z, link, residual, tol)
            raise ChainViolation(link, residual, f"{phi.label}, z={z}")
    logger.debug("chain ok for %s at z=%s: q=%.6g gzz=%.6g rhs=%.6g", phi.label, z, q, gzz, main.rhs)
    return report
