"""
원주 격자, 호 집합, 조화측도, Poisson/Herglotz 구적 모듈

주기 사다리꼴 규칙으로 원주 위 적분을 계산합니다. 매끄러운 경계 데이터에
대해서는 스펙트럼 정확도를 갖고, 호의 끝점은 노드 셀에 비율로 배분됩니다.
경계에 가까운 z 는 arg z 주변 8개 셀만 이분 세분화합니다.
로그 특이점을 가진 노드는 제외하고 Navot 보정 항으로 대체합니다.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.constants import KERNEL_WIDTH_CELLS, REFINE_CELLS, SINGULAR_SNAP, TWO_PI
from config.settings import ADAPTIVE_REFINEMENT, CLAMP_FLOOR, GRID_N, MAX_CLAMPED_MASS, MAX_REFINE_DEPTH
from lab.holomap import HoloMap, as_complex, check_radius
from models.errors import GridTooCoarse, NotLogIntegrable, SpecParseError
from models.geometry_models import ArcSet, BoundarySamples, CircleGrid

logger = logging.getLogger(__name__)

Kernel = Callable[[complex, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureResult:
    """구적 결과와 오차 추정"""
    value: complex
    error: float
    refined_depth: int = 0
    excluded_measure: float = 0.0


# ============================================================================
# 커널
# ============================================================================

def poisson_kernel(z: complex, zeta: np.ndarray) -> np.ndarray:
    """dω_z/dm = (1-|z|^2)/|zeta-z|^2"""
    return (1.0 - abs(z) ** 2) / np.abs(zeta - z) ** 2


def herglotz_kernel(z: complex, zeta: np.ndarray) -> np.ndarray:
    """(zeta+z)/(zeta-z)"""
    return (zeta + z) / (zeta - z)


def herglotz_deriv_kernel(z: complex, zeta: np.ndarray) -> np.ndarray:
    """d/dz (zeta+z)/(zeta-z) = 2 zeta/(zeta-z)^2"""
    return 2.0 * zeta / (zeta - z) ** 2


# ============================================================================
# 호 집합
# ============================================================================

def normalize(arcs: Sequence[Tuple[float, float]]) -> ArcSet:
    """호 리스트를 정규형 ArcSet 으로 변환"""
    return ArcSet(arcs=list(arcs))


def arc_measure(e: ArcSet) -> float:
    """m(E)"""
    return e.measure()


def complement(e: ArcSet) -> ArcSet:
    """T \\ E"""
    return e.complement()


def contains(e: ArcSet, angles) -> np.ndarray:
    return e.contains(angles)


def parse_arc_set(text: str) -> ArcSet:
    """
    호 집합 명세 해석

    "full" / "T" -> 전체 원, "empty" -> 공집합, "a,b|c,d" -> [a,b) U [c,d)
    """
    text = text.strip()
    if text.lower() in ("full", "t"):
        return ArcSet.full()
    if text.lower() in ("empty", ""):
        return ArcSet.empty()
    try:
        arcs = []
        for piece in text.split("|"):
            start, end = (float(v) for v in piece.split(","))
            arcs.append((start, end))
        return ArcSet(arcs=arcs)
    except ValueError as e:
        raise SpecParseError(f"bad arc set {text!r}: expected 'a,b|c,d'") from e


def map_arcs_by_automorphism(e: ArcSet, z) -> ArcSet:
    """
    tau(w) = (w - z)/(1 - conj(z) w) 에 의한 E 의 상

    tau 는 T 위에서 방향을 보존하므로 끝점만 옮기면 됩니다.
    """
    z = as_complex(z)
    if e.is_full() or not e.arcs:
        return e
    images = []
    for a, b in e.arcs:
        wa, wb = np.exp(1j * a), np.exp(1j * b)
        ta = (wa - z) / (1 - np.conj(z) * wa)
        tb = (wb - z) / (1 - np.conj(z) * wb)
        start = float(np.angle(ta)) % TWO_PI
        length = (float(np.angle(tb)) - start) % TWO_PI
        if length == 0.0 and b - a > math.pi:
            length = TWO_PI
        images.append((start, start + length))
    return ArcSet(arcs=images)


def harmonic_measure_exact(z, e: ArcSet) -> float:
    """
    호 합집합의 조화측도 닫힌 형태

    각 호 [a, b) 에 대해 omega_z = phi/pi - (b - a)/(2pi), 여기서 phi 는 z 에서
    끝점을 바라보는 반시계 방향 각도입니다.
    """
    z = as_complex(z)
    if e.is_full():
        return 1.0
    total = 0.0
    for a, b in e.arcs:
        ang_a = np.angle(np.exp(1j * a) - z)
        ang_b = np.angle(np.exp(1j * b) - z)
        phi = (ang_b - ang_a) % TWO_PI
        total += phi / math.pi - (b - a) / TWO_PI
    return float(total)


def cell_fractions(e: Optional[ArcSet], n: int) -> np.ndarray:
    """각 노드 셀 [theta_j - h/2, theta_j + h/2) 중 E 에 속하는 비율"""
    if e is None or e.is_full():
        return np.ones(n)
    h = TWO_PI / n
    nodes = h * np.arange(n)
    return e.overlap(nodes - h / 2, nodes + h / 2) / h


# ============================================================================
# 표본 생성
# ============================================================================

def sample_function(
    fn: Callable[[np.ndarray], np.ndarray],
    grid: CircleGrid,
    singular_angles: Sequence[float] = (),
    orders: Sequence[Optional[float]] = (),
    log_scale: bool = False,
) -> BoundarySamples:
    """
    각도 함수를 격자 위에서 표본화

    특이각에 닿는 노드는 NaN 으로 표시하고 차수를 기록합니다.

    Args:
        fn: 각도 배열 -> 값 배열
        grid: 원주 격자
        singular_angles: 제외할 경계 특이각
        orders: 특이각별 로그 특이 차수
        log_scale: 값이 로그 스케일인지 (True 면 차수로 Navot 보정)
    """
    nodes = grid.nodes
    with np.errstate(all='ignore'):
        values = np.asarray(fn(nodes))
    values = values.astype(complex) if np.iscomplexobj(values) else values.astype(float)
    singular: Dict[int, Optional[float]] = {}
    for k, angle in enumerate(singular_angles):
        index = int(round((angle % TWO_PI) / grid.spacing)) % grid.n
        gap = abs((nodes[index] - angle + math.pi) % TWO_PI - math.pi)
        if gap <= SINGULAR_SNAP:
            singular[index] = orders[k] if k < len(orders) else None
            values[index] = np.nan
    return BoundarySamples(grid=grid, values=values, singular_orders=singular,
                           source=fn, log_scale=log_scale)


def log_modulus(samples: BoundarySamples, clamp_floor: float = CLAMP_FLOOR) -> BoundarySamples:
    """
    log|h| 표본 (clamp_floor 아래는 클램핑)

    제외 노드와 특이 차수는 그대로 유지됩니다.
    """
    if samples.log_scale:
        return samples
    modulus = np.abs(samples.values)
    excluded = samples.excluded
    clamped = (~excluded) & (modulus < clamp_floor)
    with np.errstate(divide='ignore', invalid='ignore'):
        logs = np.log(np.maximum(modulus, clamp_floor))
    logs[excluded] = np.nan
    source = samples.source
    log_source = None
    if source is not None:
        def log_source(theta):
            with np.errstate(all='ignore'):
                return np.log(np.maximum(np.abs(source(theta)), clamp_floor))
    if clamped.any():
        logger.debug("clamped %d nodes below %.1e", int(clamped.sum()), clamp_floor)
    return BoundarySamples(grid=samples.grid, values=logs, quad_error=samples.quad_error,
                           singular_orders=dict(samples.singular_orders), source=log_source,
                           log_scale=True, clamped=clamped)


def multiply_samples(a: BoundarySamples, b: BoundarySamples) -> BoundarySamples:
    """두 모듈러스 표본의 곱 (특이 차수는 더해짐)"""
    if a.grid != b.grid:
        raise ValueError("samples live on different grids")
    orders: Dict[int, Optional[float]] = {}
    for index in set(a.singular_orders) | set(b.singular_orders):
        ka = a.singular_orders.get(index, 0.0)
        kb = b.singular_orders.get(index, 0.0)
        orders[index] = None if ka is None or kb is None else ka + kb
    values = a.values * b.values
    source = None
    if a.source is not None and b.source is not None:
        sa, sb = a.source, b.source

        def source(theta):
            return sa(theta) * sb(theta)
    for index in orders:
        values[index] = np.nan
    return BoundarySamples(grid=a.grid, values=values, singular_orders=orders, source=source)


# ============================================================================
# 구적 핵심부
# ============================================================================

def _fill_from_neighbors(values: np.ndarray, index: int) -> complex:
    n = len(values)
    neighbors = [values[(index - 1) % n], values[(index + 1) % n]]
    finite = [v for v in neighbors if np.isfinite(v)]
    return np.mean(finite) if finite else 0.0


def _substitute(values: np.ndarray, index: int, kappa: Optional[float], log_scale: bool,
                zeta: np.ndarray) -> complex:
    """제외 노드 대체값: 로그 스케일이고 차수를 알면 Navot 보정, 아니면 이웃 평균"""
    n = len(values)
    if log_scale and kappa is not None:
        regular = []
        for j in ((index - 1) % n, (index + 1) % n):
            if np.isfinite(values[j]):
                regular.append(values[j] - kappa * np.log(np.abs(zeta[j] - zeta[index])))
        r_s = np.mean(regular) if regular else 0.0
        return r_s - kappa * math.log(n)
    return _fill_from_neighbors(values, index)


def _grid_sum(
    z: complex,
    values: np.ndarray,
    singular_orders: Dict[int, Optional[float]],
    log_scale: bool,
    fractions: np.ndarray,
    kernel: Kernel,
    skip: Optional[np.ndarray] = None,
) -> complex:
    """
    sum_j K(zeta_j) v_j f_j / n

    제외 노드: 로그 스케일이고 차수 kappa 를 알면 Navot 보정
    K_s f_s (r_s - kappa log n)/n, 아니면 이웃 평균으로 채움.
    """
    n = len(values)
    zeta = np.exp(1j * TWO_PI * np.arange(n) / n)
    weights = kernel(z, zeta) * fractions / n
    if skip is not None:
        weights = np.where(skip, 0.0, weights)
    retained = np.isfinite(values)
    for index in singular_orders:
        retained[index] = False
    total = np.sum(np.where(retained, weights * np.where(retained, values, 0.0), 0.0))

    for index in np.flatnonzero(~retained):
        if weights[index] == 0.0:
            continue
        kappa = singular_orders.get(int(index))
        total += weights[index] * _substitute(values, int(index), kappa, log_scale, zeta)
    return total


def resolved_values(samples: BoundarySamples) -> np.ndarray:
    """
    제외 노드를 구적 대체값으로 바꾼 표본값

    가중합 sum_j w_j v_j 가 integrate_boundary 의 격자합과 같아지므로
    서로 다른 표본을 노드별로 섞을 때 씁니다.
    """
    values = samples.values.copy()
    n = len(values)
    zeta = np.exp(1j * TWO_PI * np.arange(n) / n)
    for index in np.flatnonzero(samples.excluded):
        kappa = samples.singular_orders.get(int(index))
        values[index] = _substitute(samples.values, int(index), kappa, samples.log_scale, zeta)
    return values


def _coarse_sum(z, samples: BoundarySamples, e: Optional[ArcSet], kernel: Kernel) -> complex:
    values = samples.values[::2]
    orders = {i // 2: k for i, k in samples.singular_orders.items() if i % 2 == 0}
    return _grid_sum(z, values, orders, samples.log_scale, cell_fractions(e, len(values)), kernel)


def _window(z: complex, n: int) -> np.ndarray:
    h = TWO_PI / n
    center = int(round((np.angle(z) % TWO_PI) / h)) % n
    half = REFINE_CELLS // 2
    return np.array([(center + k) % n for k in range(-half, half)])


def _fine_sum(z, source, e: Optional[ArcSet], n: int, cells: np.ndarray,
              depth: int, kernel: Kernel) -> complex:
    h = TWO_PI / n
    m = 2 ** depth
    sub = h / m
    offsets = -h / 2 + (np.arange(m) + 0.5) * sub
    theta = (TWO_PI * cells[:, None] / n + offsets[None, :]).ravel()
    if e is None or e.is_full():
        frac = np.ones_like(theta)
    else:
        frac = e.overlap(theta - sub / 2, theta + sub / 2) / sub
    with np.errstate(all='ignore'):
        vals = np.asarray(source(theta))
    keep = np.isfinite(vals)
    zeta = np.exp(1j * theta)
    terms = kernel(z, zeta) * frac * np.where(keep, vals, 0.0) * sub / TWO_PI
    return np.sum(np.where(keep, terms, 0.0))


def integrate_boundary(
    z,
    samples: BoundarySamples,
    e: Optional[ArcSet] = None,
    kernel: Kernel = poisson_kernel,
    adaptive: Optional[bool] = None,
    max_depth: int = MAX_REFINE_DEPTH,
) -> QuadratureResult:
    """
    int_E u(zeta) K(z, zeta) dm(zeta) 와 오차 추정

    Args:
        z: 원판 내부 점
        samples: 피적분 함수 표본
        e: 적분 영역 (None 이면 원 전체)
        kernel: poisson_kernel / herglotz_kernel / herglotz_deriv_kernel
        adaptive: 경계 근처 국소 세분화 허용 (None 이면 설정값)
        max_depth: 최대 이분 깊이

    Returns:
        QuadratureResult: 값, |I_n - I_{n/2}| (세분화 시 |I(d) - I(d-1)|)

    Raises:
        GridTooCoarse: 커널 폭이 4 격자 간격보다 좁은데 세분화할 수 없을 때
    """
    z = as_complex(z)
    n = samples.grid.n
    h = samples.grid.spacing
    fractions = cell_fractions(e, n)
    width = 1.0 - abs(z)
    adaptive = ADAPTIVE_REFINEMENT if adaptive is None else adaptive

    if width >= KERNEL_WIDTH_CELLS * h:
        fine = _grid_sum(z, samples.values, samples.singular_orders, samples.log_scale,
                         fractions, kernel)
        coarse = _coarse_sum(z, samples, e, kernel)
        return QuadratureResult(value=fine, error=float(abs(fine - coarse)),
                                excluded_measure=samples.excluded_measure)

    if not adaptive:
        raise GridTooCoarse(
            f"kernel width {width:.3e} < {KERNEL_WIDTH_CELLS} x spacing {h:.3e} and refinement disabled")
    if samples.source is None:
        raise GridTooCoarse("near-boundary point needs refinement but samples carry no source")
    depth = max(1, math.ceil(math.log2(KERNEL_WIDTH_CELLS * h / width)))
    if depth > max_depth:
        raise GridTooCoarse(f"refinement depth {depth} exceeds {max_depth} (|z| = {abs(z):.12f})")

    cells = _window(z, n)
    skip = np.zeros(n, dtype=bool)
    skip[cells] = True
    far = _grid_sum(z, samples.values, samples.singular_orders, samples.log_scale,
                    fractions, kernel, skip=skip)
    near = _fine_sum(z, samples.source, e, n, cells, depth, kernel)
    near_prev = _fine_sum(z, samples.source, e, n, cells, depth - 1, kernel)
    logger.debug("refined %d cells around arg z to depth %d", len(cells), depth)
    return QuadratureResult(value=far + near, error=float(abs(near - near_prev)),
                            refined_depth=depth, excluded_measure=samples.excluded_measure)


# ============================================================================
# 공개 연산
# ============================================================================

def _ones(grid: CircleGrid) -> BoundarySamples:
    return sample_function(lambda theta: np.ones_like(np.asarray(theta, dtype=float)), grid)


def harmonic_measure_estimate(z, e: ArcSet, grid: CircleGrid,
                              adaptive: Optional[bool] = None,
                              r_max: Optional[float] = None) -> QuadratureResult:
    """omega_z(E) 와 구적 오차"""
    z = as_complex(z)
    check_radius(z, r_max)
    if not e.arcs:
        return QuadratureResult(value=0.0, error=0.0)
    result = integrate_boundary(z, _ones(grid), e, poisson_kernel, adaptive)
    value = float(np.clip(result.value.real, 0.0, 1.0))
    return QuadratureResult(value=value, error=result.error, refined_depth=result.refined_depth)


def harmonic_measure(z, e: ArcSet, grid: CircleGrid, adaptive: Optional[bool] = None,
                     r_max: Optional[float] = None) -> float:
    """
    조화측도 omega_z(E)

    Args:
        z: 원판 내부 점 (|z| <= r_max)
        e: 호 집합
        grid: 원주 격자

    Returns:
        float: [0, 1] 범위 값; z = 0 이면 m(E)
    """
    return float(harmonic_measure_estimate(z, e, grid, adaptive, r_max).value)


def poisson_integral(z, u: BoundarySamples, e: Optional[ArcSet] = None,
                     adaptive: Optional[bool] = None, r_max: Optional[float] = None) -> float:
    """실수값 표본 u 의 조화 확장 값 int u d(omega_z)"""
    z = as_complex(z)
    check_radius(z, r_max)
    return float(integrate_boundary(z, u, e, poisson_kernel, adaptive).value.real)


def refine_estimate(f: Callable[[np.ndarray], np.ndarray], z, n: int = GRID_N,
                    e: Optional[ArcSet] = None, adaptive: Optional[bool] = None) -> Tuple[float, float]:
    """
    각도 함수 f 의 Poisson 적분과 반격자 오차 |I_n - I_{n/2}|

    Args:
        f: 각도 배열을 받아 실수값 배열을 돌려주는 함수
        z: 원판 내부 점
        n: 격자점 수
        e: 적분 영역 (None 이면 원 전체)

    Returns:
        (값, 오차 추정)

    Example:
        >>> refine_estimate(lambda t: np.cos(t), 0.5, 1024)[0]   # Re z
        0.5
    """
    samples = sample_function(f, CircleGrid(n=n))
    result = integrate_boundary(z, samples, e, poisson_kernel, adaptive)
    return float(result.value.real), result.error


def samples_to_rows(samples: BoundarySamples) -> List[Dict[str, float]]:
    """CSV 행 딕셔너리 (angle, re, im, weight)"""
    return [dict(zip(("angle", "re", "im", "weight"), row)) for row in samples.to_rows()]


def herglotz_integral(z, logh: BoundarySamples, adaptive: Optional[bool] = None,
                      r_max: Optional[float] = None) -> complex:
    """int (zeta+z)/(zeta-z) log h dm (지수화 전), 실수부 = int log h d(omega_z)"""
    z = as_complex(z)
    check_radius(z, r_max)
    return complex(integrate_boundary(z, logh, None, herglotz_kernel, adaptive).value)


def _check_clamped(logh: BoundarySamples, e: Optional[ArcSet] = None) -> float:
    if logh.clamped is None:
        return 0.0
    mass = float(np.sum(logh.clamped * cell_fractions(e, logh.grid.n))) / logh.grid.n
    if mass > MAX_CLAMPED_MASS:
        raise NotLogIntegrable(f"clamped mass {mass:.3e} exceeds {MAX_CLAMPED_MASS:.3e}")
    return mass


def outer_from_modulus(h: BoundarySamples, adaptive: Optional[bool] = None,
                       unimodular: complex = 1.0, label: str = "") -> HoloMap:
    """
    경계 모듈러스 h 를 갖는 외부함수 O_h

    O_h(0) > 0 이 되도록 회전을 정규화하며, 다른 회전은 unimodular 인자로 줍니다.
    제외 노드의 특이 차수는 외부함수의 log_orders 가 됩니다.

    Raises:
        NotLogIntegrable: 클램핑된 질량이 허용치를 넘을 때
    """
    logh = log_modulus(h)
    clamped_mass = _check_clamped(logh)
    grid = logh.grid
    lam = complex(unimodular)

    def value_fn(w):
        w_arr = np.atleast_1d(np.asarray(w, dtype=complex))
        out = np.array([
            lam * np.exp(integrate_boundary(p, logh, None, herglotz_kernel, adaptive).value)
            for p in w_arr.ravel()
        ]).reshape(w_arr.shape)
        return out if np.ndim(w) else complex(out[0])

    def deriv_fn(w):
        w_arr = np.atleast_1d(np.asarray(w, dtype=complex))
        out = []
        for p in w_arr.ravel():
            base = np.exp(integrate_boundary(p, logh, None, herglotz_kernel, adaptive).value)
            slope = integrate_boundary(p, logh, None, herglotz_deriv_kernel, adaptive).value
            out.append(lam * base * slope)
        out = np.array(out).reshape(w_arr.shape)
        return out if np.ndim(w) else complex(out[0])

    filled = logh.values.copy()
    for index in np.flatnonzero(~np.isfinite(filled)):
        filled[index] = _fill_from_neighbors(logh.values, int(index))
    coeffs = (np.fft.rfft(filled) / grid.n)[: grid.n // 2]
    modes = np.arange(len(coeffs))

    def log_trace(theta_flat: np.ndarray) -> np.ndarray:
        # log O(e^{it}) = c_0 + 2 sum_{k>=1} c_k e^{ikt}
        out = np.empty(theta_flat.shape, dtype=complex)
        for start in range(0, len(theta_flat), 256):
            block = theta_flat[start:start + 256]
            out[start:start + 256] = coeffs[0].real + 2.0 * (
                np.exp(1j * np.outer(block, modes[1:])) @ coeffs[1:])
        if logh.source is not None:
            with np.errstate(all='ignore'):
                out = logh.source(theta_flat) + 1j * out.imag
        return out

    def log_slope(theta_flat: np.ndarray) -> np.ndarray:
        out = np.empty(theta_flat.shape, dtype=complex)
        for start in range(0, len(theta_flat), 256):
            block = theta_flat[start:start + 256]
            out[start:start + 256] = 2.0 * np.exp(-1j * block) * (
                np.exp(1j * np.outer(block, modes[1:])) @ (modes[1:] * coeffs[1:]))
        return out

    def boundary_fn(theta):
        theta_arr = np.atleast_1d(np.asarray(theta, dtype=float))
        out = (lam * np.exp(log_trace(theta_arr.ravel()))).reshape(theta_arr.shape)
        return out if np.ndim(theta) else complex(out[0])

    def boundary_deriv_fn(theta):
        theta_arr = np.atleast_1d(np.asarray(theta, dtype=float))
        flat = theta_arr.ravel()
        out = (lam * np.exp(log_trace(flat)) * log_slope(flat)).reshape(theta_arr.shape)
        return out if np.ndim(theta) else complex(out[0])

    singular = sorted(logh.singular_orders)
    logger.info("outer function built on n=%d (clamped mass %.2e, %d singular nodes)",
                grid.n, clamped_mass, len(singular))
    return HoloMap(
        family='outer',
        params={'grid_n': grid.n, 'unimodular': lam},
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        boundary_fn=boundary_fn,
        boundary_deriv_fn=boundary_deriv_fn,
        singular_support=tuple(float(grid.nodes[i]) for i in singular),
        log_orders=tuple(logh.singular_orders[i] for i in singular),
        inner=False,
        self_map=False,
        label=label or f"outer[n={grid.n}]",
    )
