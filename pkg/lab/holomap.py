"""
평가 가능한 원판 정칙 사상 HoloMap

닫힌 형태(closed form) 공식으로 값, 도함수, 경계값, 경계 도함수를 계산합니다.
모든 공식은 numpy 배열에 대해 벡터화되어 있으며 닫힌 원판 전체에서 호출할 수
있습니다. 정의역 검사(|z| <= r_max)는 공개 메서드 eval/deriv 에서만 합니다.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from config.settings import R_MAX
from models.errors import ParamOutOfDomain
from models.geometry_models import BoundaryPoint, DiskPoint

logger = logging.getLogger(__name__)

ComplexFn = Callable[[np.ndarray], np.ndarray]


def as_complex(z) -> Any:
    """DiskPoint / BoundaryPoint / 숫자 / 배열을 복소 numpy 값으로 변환"""
    if isinstance(z, DiskPoint):
        return complex(z.value)
    if isinstance(z, BoundaryPoint):
        return z.value
    if np.isscalar(z):
        return complex(z)
    return np.asarray(z, dtype=complex)


def check_radius(z, r_max: Optional[float] = None) -> None:
    """평가점이 |z| <= r_max 인지 확인"""
    limit = R_MAX if r_max is None else r_max
    radius = np.max(np.abs(z)) if np.ndim(z) else abs(z)
    if radius > limit:
        raise ParamOutOfDomain(f"|z| = {radius:.6g} exceeds r_max = {limit}")


@dataclass(frozen=True)
class HoloMap:
    """
    원판의 정칙 자기사상 (또는 바운드 객체로 쓰이는 외부함수)

    Attributes:
        family: 함수족 태그 (moebius/blaschke/singular/outer/product/compose/
            quotient_blaschke/derivative)
        params: 함수족별 매개변수
        value_fn: 닫힌 원판에서의 값 공식
        deriv_fn: 도함수 공식
        boundary_fn: 원주 위 값 (각도 배열 -> 복소 배열)
        boundary_deriv_fn: 원주 위 도함수 (각도 배열 -> 복소 배열)
        singular_support: 닫힌 형태가 연장되지 않는 경계 각도
        log_orders: 특이각에서 |f| 의 로그 특이 차수 (None = 모름)
        deriv_log_orders: 특이각에서 |f'| 의 로그 특이 차수
        inner: 내부함수 여부
        self_map: 자기사상 불변식이 강제되는지 (외부 바운드 객체는 False)
        label: 함수 명세 문자열
    """
    family: str
    params: Dict[str, Any]
    value_fn: ComplexFn
    deriv_fn: ComplexFn
    boundary_fn: ComplexFn
    boundary_deriv_fn: ComplexFn
    singular_support: Tuple[float, ...] = ()
    log_orders: Tuple[Optional[float], ...] = ()
    deriv_log_orders: Tuple[Optional[float], ...] = ()
    inner: bool = True
    self_map: bool = True
    label: str = ""
    extras: Dict[str, Any] = field(default_factory=dict, compare=False)

    def eval(self, z, r_max: Optional[float] = None):
        """|z| <= r_max 에서의 값"""
        w = as_complex(z)
        check_radius(w, r_max)
        return self.value_fn(w)

    def deriv(self, z, r_max: Optional[float] = None):
        """|z| <= r_max 에서의 도함수"""
        w = as_complex(z)
        check_radius(w, r_max)
        return self.deriv_fn(w)

    def boundary_eval(self, zeta):
        """원주 위 값. zeta 는 각도 배열 또는 BoundaryPoint"""
        return self.boundary_fn(_angles(zeta))

    def boundary_deriv(self, zeta):
        """원주 위 도함수 phi'(zeta) (경계 도함수 값, 각도 미분이 아님)"""
        return self.boundary_deriv_fn(_angles(zeta))

    def is_singular_angle(self, angle: float, snap: float = 1e-12) -> bool:
        for s in self.singular_support:
            gap = abs((angle - s + np.pi) % (2 * np.pi) - np.pi)
            if gap <= snap:
                return True
        return False

    def __str__(self) -> str:
        return self.label or self.family


def _angles(zeta) -> Any:
    if isinstance(zeta, BoundaryPoint):
        return zeta.angle
    if np.isscalar(zeta) and not isinstance(zeta, complex):
        return float(zeta)
    arr = np.asarray(zeta)
    if np.iscomplexobj(arr):
        return np.angle(arr)
    return arr.astype(float)
