"""
검증 보고서 관련 Pydantic 모델

증명 사슬 보고서(ChainReport), 각도 미분 보고서(AngularReport),
스위트 레코드와 요약, 반증 탐색 레코드의 구조를 정의합니다.
JSON 필드 이름은 타입 정의와 정확히 일치합니다.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from .geometry_models import BoundaryPoint, DiskPoint


class ChainReport(BaseModel):
    """
    한 점 z에서 주 정리 증명 사슬의 모든 중간량

    Attributes:
        z: 평가점
        q: Q_phi(z)
        fzz: F_z(z) (= Q_phi(z))
        gzz: |G_z(z)|
        i1: I_1(z) = log|O(z)|
        i2: I_2(z)
        i2_bound: 오목성 단계의 우변
        rhs_main: 주 정리 우변
        rhs_simple: e^{1/e} 따름정리 우변 (||phi'||_{inf,E} 가 무한이면 None)
        omega_e: omega_z(E)
        taburetka: E 여집합 위 |F_z| 의 조화측도 적분
        quad_error: 구적 오차 추정 합
        full_taburetka: 원 전체 위 |F_z| 의 조화측도 적분
        estone_min_slack: E 노드에서 |phi'| - |F_z| 의 최솟값
        omega_e_complement: omega_z(T \\ E)
        retained_fraction: 제외되지 않은 노드 비율
        gz_outer: outer_from_modulus 로 만든 G_z 의 |G_z(z)|
        family: 함수 명세 라벨

    Example:
        >>> report.q <= report.gzz <= report.rhs_main
        True
    """
    model_config = ConfigDict(ser_json_inf_nan='null')

    z: DiskPoint
    q: float
    fzz: float
    gzz: float
    i1: float
    i2: float
    i2_bound: float
    rhs_main: float
    rhs_simple: Optional[float] = None
    omega_e: float
    taburetka: float
    quad_error: float
    full_taburetka: float = 0.0
    estone_min_slack: Optional[float] = None
    omega_e_complement: float = 0.0
    retained_fraction: float = 1.0
    gz_outer: Optional[float] = None
    family: Optional[str] = None

    def to_csv_row(self) -> Dict[str, Any]:
        """스윕 집계용 CSV 행 (CHAIN_FIELDS 순서)"""
        return {
            'family': self.family,
            'z_re': self.z.value.real,
            'z_im': self.z.value.imag,
            'q': self.q,
            'fzz': self.fzz,
            'gzz': self.gzz,
            'gz_outer': self.gz_outer,
            'i1': self.i1,
            'i2': self.i2,
            'i2_bound': self.i2_bound,
            'rhs_main': self.rhs_main,
            'rhs_simple': self.rhs_simple,
            'omega_e': self.omega_e,
            'taburetka': self.taburetka,
            'quad_error': self.quad_error,
        }


CHAIN_FIELDS = [
    'family', 'z_re', 'z_im', 'q', 'fzz', 'gzz', 'gz_outer', 'i1', 'i2',
    'i2_bound', 'rhs_main', 'rhs_simple', 'omega_e', 'taburetka', 'quad_error',
]


class AngularReport(BaseModel):
    """
    경계점 zeta 에서의 각도 미분 추정 결과

    Attributes:
        zeta: 경계점
        exists: 각도 미분 존재 판정
        status: exists / diverges / inconclusive
        liminf_estimate: 마지막 반경들의 Q 최솟값 (발산하면 None = +inf 표시)
        derivative_estimate: 차분몫 극한 추정 (없으면 None)
        radii: 사용한 반경 r_k = 1 - 2^{-k}
        convergence_residual: 두 극한 추정의 모듈러스 차이 (또는 마지막 상대 변화)
        stolz_estimate: Stolz 각 pi/4 광선 위 Q 의 마지막 값
    """
    model_config = ConfigDict(ser_json_inf_nan='null')

    zeta: BoundaryPoint
    exists: bool
    status: Literal['exists', 'diverges', 'inconclusive'] = 'exists'
    liminf_estimate: Optional[float] = None
    derivative_estimate: Optional[complex] = None
    radii: List[float] = Field(default_factory=list)
    convergence_residual: float = 0.0
    stolz_estimate: Optional[float] = None

    @field_serializer('derivative_estimate')
    def _pair(self, value: Optional[complex]) -> Optional[List[float]]:
        return None if value is None else [value.real, value.imag]

    def to_csv_row(self) -> Dict[str, Any]:
        """CSV 행 (angle, exists, liminf, |deriv|, residual)"""
        return {
            'angle': self.zeta.angle,
            'exists': self.exists,
            'liminf': self.liminf_estimate,
            'abs_deriv': None if self.derivative_estimate is None else abs(self.derivative_estimate),
            'residual': self.convergence_residual,
        }


class CheckRecord(BaseModel):
    """
    스위트 검사 한 건의 결과

    Attributes:
        check_id: 검사 식별자 (예: schwarz_pick, theorem_main)
        family: 함수 명세 문자열
        inputs: 입력 요약 (z, 호 집합 등)
        slack: 부등식 여유 (음수 = 위반)
        tol: 적용된 허용오차
        passed: slack >= -tol
        quad_error: 구적 오차 추정
        note: 부가 설명 (오류 메시지 등)
    """
    model_config = ConfigDict(ser_json_inf_nan='null')

    check_id: str
    family: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    slack: float
    tol: float
    passed: bool
    quad_error: float = 0.0
    note: str = ""


class SuiteSummary(BaseModel):
    """
    스위트 요약

    Attributes:
        min_slack: 검사별 최소 여유
        max_chain_violation: 증명 사슬 최대 위반량 (0 이면 위반 없음)
        total_records: 전체 레코드 수
        failed_records: 실패 레코드 수
        runtime_seconds: 실행 시간
    """
    model_config = ConfigDict(ser_json_inf_nan='null')

    min_slack: Dict[str, float] = Field(default_factory=dict)
    max_chain_violation: float = 0.0
    total_records: int = 0
    failed_records: int = 0
    runtime_seconds: float = 0.0


class SuiteReport(BaseModel):
    """
    검증 스위트 전체 보고서

    Attributes:
        records: 검사 레코드 리스트
        summary: 요약
        errors: 노드별 오류 기록
        chain_reports: 증명 사슬 노드가 만든 ChainReport 들
    """
    model_config = ConfigDict(ser_json_inf_nan='null')

    records: List[CheckRecord] = Field(default_factory=list)
    summary: SuiteSummary = Field(default_factory=SuiteSummary)
    errors: List[Dict[str, Any]] = Field(default_factory=list)
    chain_reports: List[ChainReport] = Field(default_factory=list)


class FalsifyRecord(BaseModel):
    """
    무작위 반증 탐색 결과

    Attributes:
        family: 함수족 이름
        budget: 표본 수
        seed: 난수 시드
        min_slack: 주 정리 우변 - Q 의 최솟값
        tol_at_min: 최소 지점의 허용오차
        argmin: 최소 지점 구성 (함수 명세, 호, z)
        violations: 어느 검사에서든 -tol 보다 작은 여유를 보인 표본 수
        check_min_slack: 검사별 최소 여유 (schwarz_pick, lower_bound, theorem_main,
            theorem_simple, julia, chain)
        check_violations: 검사별 위반 표본 수
        evaluated: 실제로 평가된 표본 수
        skipped: 오류로 건너뛴 표본 수
    """
    model_config = ConfigDict(ser_json_inf_nan='null')

    family: str
    budget: int
    seed: int
    min_slack: float
    tol_at_min: float
    argmin: Dict[str, Any] = Field(default_factory=dict)
    violations: int = 0
    evaluated: int = 0
    skipped: int = 0
    check_min_slack: Dict[str, float] = Field(default_factory=dict)
    check_violations: Dict[str, int] = Field(default_factory=dict)
