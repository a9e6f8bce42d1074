"""
원판/원주 기하 관련 Pydantic 모델

경계점, 원판 내부점, 호 집합, 원주 격자, 격자 위 표본을 정의합니다.
호 집합은 반열린 구간 [a, b)의 유한 합집합으로 표현됩니다.
"""

import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

TWO_PI = 2.0 * math.pi


def _coerce_complex(value):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    return value


class BoundaryPoint(BaseModel):
    """
    단위원 위의 점 zeta

    Attributes:
        angle: 각도 (라디안, [0, 2pi)로 정규화)

    Example:
        >>> BoundaryPoint(angle=math.pi).value
        (-1+1.2246467991473532e-16j)
    """
    angle: float = Field(description="각도 (라디안)")

    @field_validator('angle')
    @classmethod
    def _wrap(cls, angle: float) -> float:
        if not math.isfinite(angle):
            raise ValueError("angle must be finite")
        wrapped = math.fmod(angle, TWO_PI)
        if wrapped < 0:
            wrapped += TWO_PI
        return 0.0 if wrapped >= TWO_PI else wrapped

    @property
    def value(self) -> complex:
        return complex(math.cos(self.angle), math.sin(self.angle))


class DiskPoint(BaseModel):
    """
    원판 내부의 점 z (|z| < 1)

    평가 API는 추가로 |z| <= r_max 를 요구합니다.

    Attributes:
        value: 복소수 값
    """
    value: complex = Field(description="복소수 값 (|z| < 1)")

    @field_validator('value', mode='before')
    @classmethod
    def _from_pair(cls, value):
        return _coerce_complex(value)

    @field_validator('value')
    @classmethod
    def _inside(cls, value: complex) -> complex:
        if not abs(value) < 1.0:
            raise ValueError(f"|z| must be < 1, got {abs(value)}")
        return value

    @field_serializer('value')
    def _to_pair(self, value: complex) -> List[float]:
        return [value.real, value.imag]


class ArcSet(BaseModel):
    """
    원주 위 호들의 유한 합집합 E

    생성 시 자동으로 정규화됩니다: 각 호는 [a, b) (0 <= a < b <= 2pi)이고,
    시작점 순으로 정렬되며, 겹치거나 맞닿은 호는 병합됩니다.
    전체 원은 [(0, 2pi)] 하나로 표현됩니다.

    Attributes:
        arcs: (시작각, 끝각) 반열린 구간 리스트

    Example:
        >>> ArcSet(arcs=[(0.0, math.pi)]).measure()
        0.5
    """
    arcs: List[Tuple[float, float]] = Field(default_factory=list, description="반열린 호 리스트")

    @model_validator(mode='after')
    def _normalize(self) -> 'ArcSet':
        pieces: List[Tuple[float, float]] = []
        for start, end in self.arcs:
            if not (math.isfinite(start) and math.isfinite(end)):
                raise ValueError("arc endpoints must be finite")
            length = end - start
            if length < 0:
                raise ValueError(f"arc end {end} precedes start {start}")
            if length == 0:
                continue
            if length >= TWO_PI:
                pieces = [(0.0, TWO_PI)]
                break
            a = start % TWO_PI
            b = a + length
            if b > TWO_PI:
                pieces.append((a, TWO_PI))
                pieces.append((0.0, b - TWO_PI))
            else:
                pieces.append((a, b))

        pieces.sort()
        merged: List[Tuple[float, float]] = []
        for a, b in pieces:
            if merged and a <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], b))
            else:
                merged.append((a, b))
        object.__setattr__(self, 'arcs', merged)
        return self

    @classmethod
    def full(cls) -> 'ArcSet':
        return cls(arcs=[(0.0, TWO_PI)])

    @classmethod
    def empty(cls) -> 'ArcSet':
        return cls(arcs=[])

    def measure(self) -> float:
        """정규화 호 길이 m(E)"""
        return min(1.0, sum(b - a for a, b in self.arcs) / TWO_PI)

    def is_full(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0][0] == 0.0 and self.arcs[0][1] >= TWO_PI

    def complement(self) -> 'ArcSet':
        """여집합 T \\ E"""
        gaps: List[Tuple[float, float]] = []
        cursor = 0.0
        for a, b in self.arcs:
            if a > cursor:
                gaps.append((cursor, a))
            cursor = max(cursor, b)
        if cursor < TWO_PI:
            gaps.append((cursor, TWO_PI))
        return ArcSet(arcs=gaps)

    def contains(self, angles) -> np.ndarray:
        """각도 배열의 E 소속 여부 (불리언 마스크)"""
        theta = np.mod(np.asarray(angles, dtype=float), TWO_PI)
        mask = np.zeros(theta.shape, dtype=bool)
        for a, b in self.arcs:
            mask |= (theta >= a) & (theta < b)
        return mask

    def overlap(self, lo, hi) -> np.ndarray:
        """
        구간 [lo, hi) 각각이 E와 겹치는 길이

        lo, hi는 같은 모양의 배열이며 hi - lo <= 2pi 를 가정합니다.
        """
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        total = np.zeros(np.broadcast(lo, hi).shape)
        for a, b in self.arcs:
            for shift in (-TWO_PI, 0.0, TWO_PI):
                total += np.clip(np.minimum(hi, b + shift) - np.maximum(lo, a + shift), 0.0, None)
        return total


class CircleGrid(BaseModel):
    """
    원주 위 균등 격자 (주기 사다리꼴 규칙)

    Attributes:
        n: 격자점 수 (2의 거듭제곱, 기본값 4096)

    Note:
        노드는 2*pi*j/n, 가중치는 모두 1/n 입니다.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(default=4096, description="격자점 수 (2의 거듭제곱)")

    @field_validator('n')
    @classmethod
    def _power_of_two(cls, n: int) -> int:
        if n < 8 or n & (n - 1):
            raise ValueError(f"grid size must be a power of two >= 8, got {n}")
        return n

    @property
    def spacing(self) -> float:
        return TWO_PI / self.n

    @property
    def nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.n, 1.0 / self.n)

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.nodes)


class BoundarySamples(BaseModel):
    """
    원주 격자 위 함수값 표본

    Attributes:
        grid: 원주 격자
        values: 노드별 값 (실수 또는 복소수, 제외된 노드는 NaN)
        quad_error: 마지막 세분화의 |I_n - I_{n/2}| 추정
        singular_orders: 제외된 노드 인덱스 -> 로그 특이 차수 kappa
            (|h(zeta)| ~ |zeta - zeta_s|^kappa; 모르면 None)
        source: 임의 각도에서 값을 다시 계산하는 함수 (국소 세분화용, 직렬화 제외)
        log_scale: 값이 log|h| 인지 여부 (True 면 차수로 로그 특이점 보정)
        clamped: 클램핑된 노드 마스크 (log_modulus 가 채움)
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    grid: CircleGrid
    values: np.ndarray
    quad_error: float = 0.0
    singular_orders: Dict[int, Optional[float]] = Field(default_factory=dict)
    source: Optional[Callable[[np.ndarray], np.ndarray]] = Field(default=None, exclude=True)
    log_scale: bool = False
    clamped: Optional[np.ndarray] = Field(default=None, exclude=True)

    @model_validator(mode='after')
    def _check_length(self) -> 'BoundarySamples':
        if self.values.shape != (self.grid.n,):
            raise ValueError(f"values length {self.values.shape} != grid size {self.grid.n}")
        return self

    @property
    def excluded(self) -> np.ndarray:
        """제외 노드 마스크"""
        mask = ~np.isfinite(self.values)
        for index in self.singular_orders:
            mask[index] = True
        return mask

    @property
    def excluded_measure(self) -> float:
        return float(np.count_nonzero(self.excluded)) / self.grid.n

    def to_rows(self) -> List[Tuple[float, float, float, float]]:
        """CSV 행 (angle, re, im, weight)"""
        values = self.values.astype(complex)
        return [
            (float(theta), float(v.real), float(v.imag), 1.0 / self.grid.n)
            for theta, v in zip(self.grid.nodes, values)
        ]
