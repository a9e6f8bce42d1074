"""
LangGraph 그래프 정의 모듈

검증 스위트를 상태 기반 그래프로 구성합니다. 모든 노드는 순차 실행되며
각 노드는 자기 검사 레코드를 상태에 누적합니다.
"""

import logging
import time

from langgraph.graph import END, StateGraph

from models.config_models import SuiteConfig
from models.report_models import SuiteReport, SuiteSummary
from workflow import nodes
from workflow.state import SuiteState, create_initial_state

logger = logging.getLogger(__name__)


def create_workflow():
    """
    LangGraph 워크플로우 생성 및 컴파일

    워크플로우는 다음 단계로 구성됩니다:
    1. prepare: 함수 명세/호 집합 해석, z 표본 생성
    2. schwarz_pick: Schwarz-Pick 부등식과 하한
    3. theorem: 주 정리, e^{1/e} 따름정리, 내부함수 따름정리
    4. chain: 증명 사슬 감사
    5. julia: Julia 보조정리 잔차
    6. angular: 각도 미분 판정
    7. classification: Moebius/외부함수 분류와 나눔 관찰
    8. summarize: 요약

    Returns:
        컴파일된 StateGraph 객체
    """
    workflow = StateGraph(SuiteState)

    workflow.add_node("prepare", nodes.prepare_node)
    workflow.add_node("schwarz_pick", nodes.schwarz_pick_node)
    workflow.add_node("theorem", nodes.theorem_node)
    workflow.add_node("chain", nodes.chain_node)
    workflow.add_node("julia", nodes.julia_node)
    workflow.add_node("angular", nodes.angular_node)
    workflow.add_node("classification", nodes.classification_node)
    workflow.add_node("summarize", nodes.summarize_node)

    workflow.set_entry_point("prepare")
    workflow.add_edge("prepare", "schwarz_pick")
    workflow.add_edge("schwarz_pick", "theorem")
    workflow.add_edge("theorem", "chain")
    workflow.add_edge("chain", "julia")
    workflow.add_edge("julia", "angular")
    workflow.add_edge("angular", "classification")
    workflow.add_edge("classification", "summarize")
    workflow.add_edge("summarize", END)

    return workflow.compile()


def run_suite(config: SuiteConfig) -> SuiteReport:
    """
    검증 스위트 실행

    시드가 같으면 runtime_seconds 를 제외한 보고서가 동일합니다.
    모듈 예외는 실패 레코드가 되며 스위트 전체를 중단하지 않습니다.

    Args:
        config: 스위트 설정

    Returns:
        SuiteReport: 레코드, 요약, 오류 기록

    Example:
        >>> report = run_suite(SuiteConfig(families=["moebius:1,0.3"]))
        >>> report.summary.failed_records
        0
    """
    start = time.perf_counter()
    logger.info("suite start: %d families, %d arc sets, grid n=%d",
                len(config.families), len(config.arcs), config.grid_n)

    graph = create_workflow()
    final_state = graph.invoke(create_initial_state(config))

    summary = SuiteSummary(**(final_state.get("summary") or {}))
    summary.runtime_seconds = time.perf_counter() - start
    report = SuiteReport(
        records=final_state.get("records", []),
        summary=summary,
        errors=final_state.get("errors", []),
        chain_reports=final_state.get("chain_reports", []),
    )
    logger.info("suite done: %d records, %d failed, %.2fs",
                summary.total_records, summary.failed_records, summary.runtime_seconds)
    return report


def generate_mermaid_diagram() -> str:
    """워크플로우의 Mermaid 다이어그램 문자열"""
    return """```mermaid
graph TD
    Start([시작]) --> Prepare[준비<br/>prepare]
    Prepare --> SP[Schwarz-Pick<br/>schwarz_pick]
    SP --> Theorem[주 정리<br/>theorem]
    Theorem --> Chain[증명 사슬<br/>chain]
    Chain --> Julia[Julia 잔차<br/>julia]
    Julia --> Angular[각도 미분<br/>angular]
    Angular --> Class[분류<br/>classification]
    Class --> Summary[요약<br/>summarize]
    Summary --> End([종료])

    style Start fill:#90EE90
    style End fill:#FFB6C1
```"""


def print_workflow_diagram():
    """워크플로우 다이어그램을 콘솔에 출력"""
    print("\n" + "=" * 80)
    print("검증 스위트 워크플로우 구조")
    print("=" * 80)
    print(generate_mermaid_diagram())
    print("=" * 80 + "\n")
