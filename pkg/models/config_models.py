"""
검증 스위트 설정 Pydantic 모델

SuiteConfig 는 key = value 설정 파일이나 CLI 인자로부터 만들어집니다.
시드가 고정되면 실행 전체가 결정적입니다.
"""

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from config.settings import ABS_FLOOR, EQUALITY_RTOL, GRID_N, R_MAX, SEED

DEFAULT_FAMILIES = [
    "moebius:1,0.3",
    "blaschke:0,0",
    "blaschke:0,0.5",
    "S",
    "balpha:0.5",
    "prod(S,blaschke:0)",
]

DEFAULT_ARCS = [
    "full",
    "0,3.141592653589793",
    "1.5707963267948966,4.71238898038469",
    "empty",
]


class SuiteConfig(BaseModel):
    """
    검증 스위트 설정

    Attributes:
        grid_n: 원주 격자점 수 (2의 거듭제곱)
        r_max: 평가 허용 최대 |z|
        abs_floor: 부등식 허용오차 하한
        equality_rtol: 등호 판정 상대 허용오차
        families: 함수 명세 문자열 리스트
        arcs: 호 집합 명세 리스트 ("full", "empty", "a,b|c,d")
        z_samples: 함수족/호 집합당 z 표본 수
        z_radius: z 표본 반경 상한 (r_max 이하)
        seed: 난수 시드
        chain_points: 증명 사슬을 감사할 z 개수 (z 표본의 앞부분)
        output_json: JSON 보고서 경로 (None 이면 자동 생성)
        output_csv: CSV 레코드 경로 (None 이면 자동 생성)

    Example:
        >>> cfg = SuiteConfig(families=["moebius:1,0.3"], z_samples=4)
    """
    grid_n: int = Field(default=GRID_N, description="격자점 수")
    r_max: float = Field(default=R_MAX, gt=0.0, lt=1.0, description="최대 |z|")
    abs_floor: float = Field(default=ABS_FLOOR, gt=0.0, description="허용오차 하한")
    equality_rtol: float = Field(default=EQUALITY_RTOL, gt=0.0, description="등호 판정 허용오차")
    families: List[str] = Field(default_factory=lambda: list(DEFAULT_FAMILIES))
    arcs: List[str] = Field(default_factory=lambda: list(DEFAULT_ARCS))
    z_samples: int = Field(default=8, ge=0, description="z 표본 수")
    z_radius: float = Field(default=0.9, gt=0.0, lt=1.0, description="z 표본 반경")
    seed: int = Field(default=SEED, description="난수 시드")
    chain_points: int = Field(default=2, ge=0, description="사슬 감사 점 수")
    output_json: Optional[str] = None
    output_csv: Optional[str] = None

    @field_validator('grid_n')
    @classmethod
    def _power_of_two(cls, n: int) -> int:
        if n < 8 or n & (n - 1):
            raise ValueError(f"grid_n must be a power of two >= 8, got {n}")
        return n

    @model_validator(mode='after')
    def _samples_inside_r_max(self) -> 'SuiteConfig':
        if self.z_radius > self.r_max:
            raise ValueError(f"z_radius {self.z_radius} exceeds r_max {self.r_max}")
        return self
