"""
원판 정칙 자기사상 함수족

Moebius 변환, 유한 Blaschke 곱, 특이 내부함수(S 포함), B_alpha,
외부함수 거듭제곱, 곱/합성/몫, 도함수 사상을 닫힌 형태로 생성합니다.
곱과 합성의 도함수는 항상 규칙(곱의 법칙, 연쇄 법칙)으로 계산하며
수치 미분은 독립 오라클(oracle_deriv)에서만 씁니다.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from config.constants import MAX_BLASCHKE_ZEROS, ORACLE_MAX_RADIUS, ORACLE_NODES, SINGULAR_SNAP, TWO_PI
from lab.boundary_geometry import sample_function
from lab.holomap import HoloMap, as_complex
from models.errors import ContourTooClose, ParamOutOfDomain
from models.geometry_models import BoundarySamples, CircleGrid

logger = logging.getLogger(__name__)

UNIMODULAR_TOL = 1e-12


def _out(z, value):
    """스칼라 입력이면 complex 로 돌려줌"""
    return complex(value) if np.ndim(z) == 0 else value


def _unimodular(lam, name: str = "lambda") -> complex:
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise ParamOutOfDomain(f"{name} must be unimodular, got |{name}| = {abs(lam)}")
    return lam


def _in_disk(a, name: str = "a") -> complex:
    a = complex(as_complex(a))
    if not abs(a) < 1.0:
        raise ParamOutOfDomain(f"{name} must lie in the open disk, got |{name}| = {abs(a)}")
    return a


def _merge_orders(supports: Sequence[Tuple[Tuple[float, ...], Tuple[Optional[float], ...]]],
                  combine) -> Tuple[Tuple[float, ...], Tuple[Optional[float], ...]]:
    """특이각 합집합과 각도별 차수 결합 (combine: 차수 리스트 -> 차수)"""
    angles: List[float] = []
    collected: List[List[Optional[float]]] = []
    for support, orders in supports:
        for k, angle in enumerate(support):
            order = orders[k] if k < len(orders) else None
            for j, known in enumerate(angles):
                if abs((angle - known + math.pi) % TWO_PI - math.pi) <= SINGULAR_SNAP:
                    collected[j].append(order)
                    break
            else:
                angles.append(angle)
                collected.append([order])
    merged = []
    for orders in collected:
        merged.append(None if any(o is None for o in orders) else combine(orders))
    return tuple(angles), tuple(merged)


# ============================================================================
# 기본 함수족
# ============================================================================

def moebius(lam=1.0, a=0.0) -> HoloMap:
    """
    Moebius 변환 lambda (z - a)/(1 - conj(a) z)

    Args:
        lam: 단위 복소수 lambda
        a: 원판 내부 점

    Returns:
        HoloMap: 원을 원으로 보내는 내부함수

    Raises:
        ParamOutOfDomain: |lambda| != 1 또는 |a| >= 1

    Example:
        >>> moebius(1, 0.5).eval(0)
        (-0.5+0j)
    """
    lam = _unimodular(lam)
    a = _in_disk(a)
    ac = a.conjugate()
    scale = 1.0 - abs(a) ** 2

    def value_fn(z):
        return _out(z, lam * (z - a) / (1 - ac * z))

    def deriv_fn(z):
        return _out(z, lam * scale / (1 - ac * z) ** 2)

    return HoloMap(
        family='moebius',
        params={'lam': lam, 'a': a},
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        boundary_fn=lambda t: value_fn(np.exp(1j * np.asarray(t))),
        boundary_deriv_fn=lambda t: deriv_fn(np.exp(1j * np.asarray(t))),
        label=f"moebius:{_fmt(lam)},{_fmt(a)}",
    )


def identity() -> HoloMap:
    return moebius(1.0, 0.0)


def blaschke(zeros: Sequence, lam=1.0) -> HoloMap:
    """
    유한 Blaschke 곱 lambda prod_k (z - a_k)/(1 - conj(a_k) z)

    도함수는 접두/접미 곱으로 계산하므로 영점 위에서도 유한합니다.

    Args:
        zeros: 영점 리스트 (중복도는 반복으로 표현, 최대 64개)
        lam: 단위 복소수

    Raises:
        ParamOutOfDomain: 영점이 원판 밖이거나 개수가 범위를 벗어날 때
    """
    lam = _unimodular(lam)
    zs = np.array([_in_disk(a, "zero") for a in zeros], dtype=complex)
    if not 1 <= len(zs) <= MAX_BLASCHKE_ZEROS:
        raise ParamOutOfDomain(f"blaschke needs 1..{MAX_BLASCHKE_ZEROS} zeros, got {len(zs)}")
    zc = zs.conj()
    scales = 1.0 - np.abs(zs) ** 2

    def factors(z):
        z = np.asarray(z, dtype=complex)
        w = z[None, ...]
        shape = (-1,) + (1,) * z.ndim
        num = w - zs.reshape(shape)
        den = 1 - zc.reshape(shape) * w
        return num / den, scales.reshape(shape) / den ** 2

    def value_fn(z):
        f, _ = factors(z)
        return _out(z, lam * np.prod(f, axis=0))

    def deriv_fn(z):
        f, df = factors(z)
        ones = np.ones_like(f[:1])
        prefix = np.cumprod(np.concatenate([ones, f[:-1]], axis=0), axis=0)
        suffix = np.cumprod(np.concatenate([ones, f[:0:-1]], axis=0), axis=0)[::-1]
        return _out(z, lam * np.sum(prefix * suffix * df, axis=0))

    return HoloMap(
        family='blaschke',
        params={'zeros': [complex(a) for a in zs], 'lam': lam},
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        boundary_fn=lambda t: value_fn(np.exp(1j * np.asarray(t))),
        boundary_deriv_fn=lambda t: deriv_fn(np.exp(1j * np.asarray(t))),
        label="blaschke:" + ",".join(_fmt(a) for a in zs),
    )


def power(n: int) -> HoloMap:
    """z^n (영점 0 이 n 개인 Blaschke 곱)"""
    if n < 1:
        raise ParamOutOfDomain(f"power needs n >= 1, got {n}")
    return blaschke([0.0] * n)


def singular_inner(masses: Sequence[Tuple[float, float]]) -> HoloMap:
    """
    원자 특이 내부함수 exp(-sum_k sigma_k (zeta_k + z)/(zeta_k - z))

    질량 하나 (각도 0, 가중치 1) 이면 S(z) = exp((z+1)/(z-1)) 입니다.

    Args:
        masses: (각도, 가중치 sigma > 0) 리스트

    Raises:
        ParamOutOfDomain: 가중치가 양수가 아니거나 질량이 없을 때
    """
    if not masses:
        raise ParamOutOfDomain("singular inner function needs at least one mass")
    angles = np.array([float(angle) % TWO_PI for angle, _ in masses])
    weights = np.array([float(weight) for _, weight in masses])
    if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
        raise ParamOutOfDomain(f"mass weights must be positive, got {weights.tolist()}")
    points = np.exp(1j * angles)

    def exponent(z):
        z = np.asarray(z, dtype=complex)
        shape = (-1,) + (1,) * z.ndim
        p = points.reshape(shape)
        return -np.sum(weights.reshape(shape) * (p + z) / (p - z), axis=0)

    def exponent_slope(z):
        z = np.asarray(z, dtype=complex)
        shape = (-1,) + (1,) * z.ndim
        p = points.reshape(shape)
        return -np.sum(weights.reshape(shape) * 2 * p / (p - z) ** 2, axis=0)

    def value_fn(z):
        with np.errstate(all='ignore'):
            return _out(z, np.exp(exponent(z)))

    def deriv_fn(z):
        with np.errstate(all='ignore'):
            return _out(z, np.exp(exponent(z)) * exponent_slope(z))

    def boundary_phase(t):
        # (zeta_k + zeta)/(zeta_k - zeta) = i cot((t - t_k)/2) on T
        t = np.asarray(t, dtype=float)
        shape = (-1,) + (1,) * t.ndim
        with np.errstate(all='ignore'):
            cot = 1.0 / np.tan((t[None, ...] - angles.reshape(shape)) / 2)
        return -np.sum(weights.reshape(shape) * cot, axis=0)

    def boundary_fn(t):
        with np.errstate(all='ignore'):
            return _out(t, np.exp(1j * boundary_phase(t)))

    def boundary_deriv_fn(t):
        zeta = np.exp(1j * np.asarray(t, dtype=float))
        with np.errstate(all='ignore'):
            return _out(t, np.exp(1j * boundary_phase(t)) * exponent_slope(zeta))

    if len(masses) == 1 and angles[0] == 0.0 and weights[0] == 1.0:
        label = "S"
    else:
        label = "singular:" + ",".join(f"{a:g}@{w:g}" for a, w in zip(angles, weights))
    return HoloMap(
        family='singular',
        params={'masses': list(zip(angles.tolist(), weights.tolist()))},
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        boundary_fn=boundary_fn,
        boundary_deriv_fn=boundary_deriv_fn,
        singular_support=tuple(angles.tolist()),
        log_orders=tuple(0.0 for _ in angles),
        deriv_log_orders=tuple(-2.0 for _ in angles),
        label=label,
    )


def atomic_s() -> HoloMap:
    """S(z) = exp((z+1)/(z-1))"""
    return singular_inner([(0.0, 1.0)])


def b_alpha(alpha) -> HoloMap:
    """
    B_alpha(z) = (S(z) - alpha)/(1 - conj(alpha) S(z))

    각도 0 에 영점이 누적되는 무한 Blaschke 곱을 닫힌 형태로 표현합니다.

    Raises:
        ParamOutOfDomain: alpha = 0 또는 |alpha| >= 1
    """
    alpha = _in_disk(alpha, "alpha")
    if alpha == 0:
        raise ParamOutOfDomain("b_alpha requires alpha != 0")
    composed = compose(moebius(1.0, alpha), atomic_s())
    return relabel(composed, f"balpha:{_fmt(alpha)}", {'alpha': alpha})


def outer_power(c, factors: Sequence[Tuple[float, float]]) -> HoloMap:
    """
    닫힌 형태 외부함수 c prod_k (1 - e^{-i alpha_k} z)^{p_k}

    1 - z 는 outer_power(1, [(0, 1)]), 2/(1-z)^2 는 outer_power(2, [(0, -2)]) 입니다.
    자기사상이 아니므로 self_map=False 로 표시됩니다.
    """
    c = complex(c)
    if c == 0:
        raise ParamOutOfDomain("outer constant must be nonzero")
    angles = np.array([float(angle) % TWO_PI for angle, _ in factors])
    powers = np.array([float(p) for _, p in factors])
    rot = np.exp(-1j * angles)

    def bases(z):
        z = np.asarray(z, dtype=complex)
        shape = (-1,) + (1,) * z.ndim
        return 1 - rot.reshape(shape) * z[None, ...], shape

    def value_fn(z):
        b, shape = bases(z)
        with np.errstate(all='ignore'):
            return _out(z, c * np.prod(b ** powers.reshape(shape), axis=0))

    def deriv_fn(z):
        b, shape = bases(z)
        with np.errstate(all='ignore'):
            slope = np.sum(-powers.reshape(shape) * rot.reshape(shape) / b, axis=0)
            return _out(z, c * np.prod(b ** powers.reshape(shape), axis=0) * slope)

    singular = [k for k, p in enumerate(powers) if p != 0]
    return HoloMap(
        family='outer',
        params={'c': c, 'factors': list(zip(angles.tolist(), powers.tolist()))},
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        boundary_fn=lambda t: value_fn(np.exp(1j * np.asarray(t))),
        boundary_deriv_fn=lambda t: deriv_fn(np.exp(1j * np.asarray(t))),
        singular_support=tuple(float(angles[k]) for k in singular),
        log_orders=tuple(float(powers[k]) for k in singular),
        deriv_log_orders=tuple(float(powers[k]) - 1.0 for k in singular),
        inner=False,
        self_map=False,
        label="outer:" + "|".join([_fmt(c)] + [f"{a:g}^{p:g}" for a, p in zip(angles, powers)]),
    )


# ============================================================================
# 조합
# ============================================================================

def product(f: HoloMap, g: HoloMap) -> HoloMap:
    """
    곱 f g (도함수는 곱의 법칙)

    두 내부함수의 곱은 내부함수이며 T 위에서 |(fg)'| = |f'| + |g'| 이므로
    도함수 특이 차수는 두 차수의 최솟값입니다.
    """
    support, log_orders = _merge_orders(
        [(f.singular_support, f.log_orders), (g.singular_support, g.log_orders)], sum)
    _, deriv_orders = _merge_orders(
        [(f.singular_support, f.deriv_log_orders or f.log_orders),
         (g.singular_support, g.deriv_log_orders or g.log_orders)], min)

    def value_fn(z):
        return f.value_fn(z) * g.value_fn(z)

    def deriv_fn(z):
        return f.deriv_fn(z) * g.value_fn(z) + f.value_fn(z) * g.deriv_fn(z)

    def boundary_fn(t):
        return f.boundary_fn(t) * g.boundary_fn(t)

    def boundary_deriv_fn(t):
        return f.boundary_deriv_fn(t) * g.boundary_fn(t) + f.boundary_fn(t) * g.boundary_deriv_fn(t)

    return HoloMap(
        family='product',
        params={'f': f.label, 'g': g.label},
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        boundary_fn=boundary_fn,
        boundary_deriv_fn=boundary_deriv_fn,
        singular_support=support,
        log_orders=log_orders,
        deriv_log_orders=deriv_orders,
        inner=f.inner and g.inner,
        self_map=f.self_map and g.self_map,
        label=f"prod({f.label},{g.label})",
        extras={'factors': (f, g)},
    )


def compose(f: HoloMap, g: HoloMap) -> HoloMap:
    """
    합성 f(g(z)) (도함수는 연쇄 법칙 f'(g) g')

    경계 특이집합은 g 의 것을 따릅니다. f 의 경계 특이점의 역상은 추적하지
    않으므로 f 는 닫힌 원판에서 정칙인 함수(Moebius, Blaschke)를 권장합니다.
    """
    if f.singular_support:
        logger.warning("compose: singular support of outer map %s is not pulled back", f.label)

    def value_fn(z):
        return f.value_fn(g.value_fn(z))

    def deriv_fn(z):
        return f.deriv_fn(g.value_fn(z)) * g.deriv_fn(z)

    def boundary_fn(t):
        return f.value_fn(g.boundary_fn(t))

    def boundary_deriv_fn(t):
        return f.deriv_fn(g.boundary_fn(t)) * g.boundary_deriv_fn(t)

    return HoloMap(
        family='compose',
        params={'f': f.label, 'g': g.label},
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        boundary_fn=boundary_fn,
        boundary_deriv_fn=boundary_deriv_fn,
        singular_support=g.singular_support,
        log_orders=tuple(0.0 if (f.inner and g.inner) else None for _ in g.singular_support),
        deriv_log_orders=g.deriv_log_orders,
        inner=f.inner and g.inner,
        self_map=f.self_map and g.self_map,
        label=f"compose({f.label},{g.label})",
        extras={'factors': (f, g)},
    )


def quotient_blaschke(f: HoloMap, zeros: Sequence) -> HoloMap:
    """
    f / B (B 는 주어진 영점의 Blaschke 곱)

    B 가 f 를 나눈다고 가정하며 영점 위에서는 값이 정의되지 않습니다.
    """
    b = blaschke(zeros)

    def value_fn(z):
        return f.value_fn(z) / b.value_fn(z)

    def deriv_fn(z):
        bz = b.value_fn(z)
        return (f.deriv_fn(z) * bz - f.value_fn(z) * b.deriv_fn(z)) / bz ** 2

    def boundary_fn(t):
        return f.boundary_fn(t) / b.boundary_fn(t)

    def boundary_deriv_fn(t):
        bt = b.boundary_fn(t)
        return (f.boundary_deriv_fn(t) * bt - f.boundary_fn(t) * b.boundary_deriv_fn(t)) / bt ** 2

    return HoloMap(
        family='quotient_blaschke',
        params={'f': f.label, 'zeros': b.params['zeros']},
        value_fn=value_fn,
        deriv_fn=deriv_fn,
        boundary_fn=boundary_fn,
        boundary_deriv_fn=boundary_deriv_fn,
        singular_support=f.singular_support,
        log_orders=f.log_orders,
        deriv_log_orders=tuple(None for _ in f.singular_support),
        inner=f.inner,
        self_map=False,
        label=f"quot({f.label},{b.label})",
    )


def derivative_map(f: HoloMap) -> HoloMap:
    """
    도함수 f' 를 하나의 HoloMap 으로

    값은 f 의 닫힌 형태 도함수이고, f'' 는 Cauchy 오라클로 계산합니다.
    """
    holder = {}

    def deriv_fn(z):
        z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.array([oracle_deriv(holder['self'], p) for p in z_arr.ravel()]).reshape(z_arr.shape)
        return _out(z, out if np.ndim(z) else out[0])

    def boundary_deriv_fn(t, step: float = 1e-6):
        t = np.asarray(t, dtype=float)
        zeta = np.exp(1j * t)
        slope = (f.boundary_deriv_fn(t + step) - f.boundary_deriv_fn(t - step)) / (2 * step)
        return _out(t, slope / (1j * zeta))

    mapped = HoloMap(
        family='derivative',
        params={'f': f.label},
        value_fn=f.deriv_fn,
        deriv_fn=deriv_fn,
        boundary_fn=f.boundary_deriv_fn,
        boundary_deriv_fn=boundary_deriv_fn,
        singular_support=f.singular_support,
        log_orders=f.deriv_log_orders,
        deriv_log_orders=tuple(None for _ in f.singular_support),
        inner=False,
        self_map=False,
        label=f"deriv({f.label})",
        extras={'base': f},
    )
    holder['self'] = mapped
    return mapped


def relabel(f: HoloMap, label: str, params: dict) -> HoloMap:
    return HoloMap(
        family=f.family, params={**f.params, **params}, value_fn=f.value_fn, deriv_fn=f.deriv_fn,
        boundary_fn=f.boundary_fn, boundary_deriv_fn=f.boundary_deriv_fn,
        singular_support=f.singular_support, log_orders=f.log_orders,
        deriv_log_orders=f.deriv_log_orders, inner=f.inner, self_map=f.self_map,
        label=label, extras=f.extras,
    )


def _fmt(value) -> str:
    value = complex(value)
    if value.imag == 0:
        return f"{value.real:g}"
    return f"{value.real:g}{value.imag:+g}j"


# ============================================================================
# 오라클과 경계 표본
# ============================================================================

def oracle_deriv(f: HoloMap, z) -> complex:
    """
    Cauchy 적분 도함수 오라클

    반지름 rho = min(0.1, (1-|z|)/2) 원 위 256 노드 사다리꼴 규칙으로
    f'(z) = (1/2 pi i) oint f(w)/(w-z)^2 dw 를 계산합니다.

    Raises:
        ContourTooClose: |z| >= 1 이라 원판 안에 윤곽을 둘 수 없을 때
    """
    z = complex(as_complex(z))
    if not abs(z) < 1.0:
        raise ContourTooClose(f"|z| = {abs(z)} leaves no room for a contour")
    rho = min(ORACLE_MAX_RADIUS, (1.0 - abs(z)) / 2)
    t = TWO_PI * np.arange(ORACLE_NODES) / ORACLE_NODES
    unit = np.exp(1j * t)
    values = np.asarray(f.value_fn(z + rho * unit), dtype=complex)
    return complex(np.mean(values / unit) / rho)


def boundary_trace(f: HoloMap, grid: CircleGrid, which: str = 'value') -> BoundarySamples:
    """
    닫힌 형태로 원주 위 값(또는 도함수)을 표본화

    특이각 노드는 NaN 으로 표시됩니다. 내부함수의 값 표본은 단위 모듈러스를
    1e-12 이내로 확인하며, 어긋난 노드는 경고 후 제외합니다.

    Args:
        f: 함수
        grid: 원주 격자
        which: 'value' (f) 또는 'deriv' (f')
    """
    if which == 'value':
        fn, orders = f.boundary_fn, f.log_orders
    elif which == 'deriv':
        fn, orders = f.boundary_deriv_fn, f.deriv_log_orders
    else:
        raise ValueError(f"unknown trace kind: {which}")
    samples = sample_function(fn, grid, f.singular_support, orders)

    if which == 'value' and f.inner:
        modulus = np.abs(samples.values)
        bad = np.isfinite(modulus) & (np.abs(modulus - 1.0) > UNIMODULAR_TOL)
        if bad.any():
            worst = float(np.max(np.abs(modulus[bad] - 1.0)))
            logger.warning("%s: %d nodes off the unit circle (max %.2e), excluded",
                           f.label, int(bad.sum()), worst)
            for index in np.flatnonzero(bad):
                samples.values[index] = np.nan
                samples.singular_orders[int(index)] = None
    return samples


def radial_boundary_value(f: HoloMap, angle: float, k_min: int = 4, k_max: int = 24) -> Tuple[complex, float]:
    """
    반경 r_k = 1 - 2^{-k} 위 값의 Richardson 외삽 (교차 확인용)

    Returns:
        Tuple[complex, float]: (외삽값, 마지막 두 외삽값의 차)
    """
    zeta = np.exp(1j * angle)
    ks = np.arange(k_min, k_max + 1)
    values = np.asarray(f.value_fn((1.0 - 2.0 ** (-ks)) * zeta), dtype=complex)
    extrapolated = 2 * values[1:] - values[:-1]
    return complex(extrapolated[-1]), float(abs(extrapolated[-1] - extrapolated[-2]))


def critical_points(f: HoloMap, radius: float = 0.98, nr: int = 48, ntheta: int = 96,
                    tol: float = 1e-10) -> List[complex]:
    """
    원판 안 f' 의 영점 탐색

    극좌표 격자에서 |f'| 의 국소 최솟값을 씨앗으로 잡고 scipy Newton 으로 다듬습니다.

    Returns:
        List[complex]: |z| < 1 인 영점 (모듈러스 순 정렬)
    """
    r = np.linspace(0.0, radius, nr)
    t = TWO_PI * np.arange(ntheta) / ntheta
    grid = r[:, None] * np.exp(1j * t[None, :])
    modulus = np.abs(np.asarray(f.deriv_fn(grid)))

    seeds = []
    for i in range(nr):
        for j in range(ntheta):
            window = modulus[max(i - 1, 0):i + 2, [(j - 1) % ntheta, j, (j + 1) % ntheta]]
            if modulus[i, j] <= window.min():
                seeds.append(grid[i, j])
                if i == 0:
                    break

    second = derivative_map(f)
    roots: List[complex] = []
    for seed in seeds:
        try:
            root = complex(optimize.newton(f.deriv_fn, seed, fprime=second.deriv_fn, tol=tol, maxiter=100))
        except (RuntimeError, ContourTooClose, ZeroDivisionError):
            continue
        if abs(root) < 1.0 and abs(f.deriv_fn(root)) < 1e-8 and all(abs(root - k) > 1e-8 for k in roots):
            roots.append(root)
    logger.debug("%s: %d critical points from %d seeds", f.label, len(roots), len(seeds))
    return sorted(roots, key=abs)
