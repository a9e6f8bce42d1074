"""
워크플로우 상태 관리 모듈

검증 스위트 LangGraph 워크플로우의 상태 정의와 초기화, 검사 레코드 생성
헬퍼를 제공합니다.
"""

import math
import time
from typing import Any, Dict, List, Optional, TypedDict

import numpy as np

from models.config_models import SuiteConfig
from models.report_models import ChainReport, CheckRecord


class SuiteState(TypedDict, total=False):
    """
    LangGraph 검증 스위트 상태

    각 노드는 이 상태를 읽고 부분 딕셔너리로 업데이트합니다.
    """
    # 설정
    config: SuiteConfig
    grid: Any

    # prepare 노드가 채우는 입력
    functions: List[Any]
    arcs: List[Any]
    z_points: List[complex]

    # 결과 누적
    records: List[CheckRecord]
    chain_reports: List[ChainReport]

    # 에러 추적
    errors: List[Dict[str, Any]]

    # 실행 시간 추적
    start_time: float
    summary: Optional[Dict[str, Any]]


def create_initial_state(config: SuiteConfig) -> SuiteState:
    """
    초기 스위트 상태 생성

    Args:
        config: 스위트 설정

    Returns:
        초기화된 SuiteState
    """
    return SuiteState(
        config=config,
        grid=None,
        functions=[],
        arcs=[],
        z_points=[],
        records=[],
        chain_reports=[],
        errors=[],
        start_time=time.perf_counter(),
        summary=None,
    )


def node_rng(config: SuiteConfig, node_index: int) -> np.random.Generator:
    """노드별 독립 난수 생성기 (시드 고정 시 결정적)"""
    return np.random.default_rng([config.seed, node_index])


def make_record(check_id: str, family: str, slack: float, tol: float,
                inputs: Optional[Dict[str, Any]] = None, quad_error: float = 0.0,
                note: str = "") -> CheckRecord:
    """
    검사 레코드 생성 (passed = slack >= -tol)

    NaN 여유는 실패로 기록됩니다.
    """
    slack = float(slack)
    passed = (not math.isnan(slack)) and slack >= -tol
    return CheckRecord(
        check_id=check_id, family=family, inputs=inputs or {}, slack=slack,
        tol=float(tol), passed=passed, quad_error=float(quad_error), note=note,
    )


def failed_record(check_id: str, family: str, error: Exception,
                  inputs: Optional[Dict[str, Any]] = None) -> CheckRecord:
    """모듈 예외를 실패 레코드로 변환"""
    return CheckRecord(
        check_id=check_id, family=family, inputs=inputs or {}, slack=math.nan, tol=0.0,
        passed=False, note=f"{type(error).__name__}: {error}",
    )


def point_inputs(z: complex, arcs: Optional[List] = None, **extra) -> Dict[str, Any]:
    """레코드 입력 요약"""
    inputs: Dict[str, Any] = {'z': [float(z.real), float(z.imag)]}
    if arcs is not None:
        inputs['arcs'] = [[float(a), float(b)] for a, b in arcs]
    inputs.update(extra)
    return inputs
