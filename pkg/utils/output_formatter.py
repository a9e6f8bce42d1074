"""
출력 포맷팅 유틸리티 모듈

스위트 요약, 점 평가 결과, 증명 사슬, 반증 탐색, 각도 미분 판정을
콘솔에 보기 좋은 형식으로 출력하는 함수들을 제공합니다.
"""

import math
from collections import defaultdict
from typing import Any, Dict, List, Optional

from models.report_models import AngularReport, ChainReport, FalsifyRecord, SuiteReport


def _num(value: Optional[float], width: int = 14) -> str:
    if value is None:
        return f"{'-':>{width}}"
    if isinstance(value, float) and math.isinf(value):
        return f"{'inf':>{width}}"
    return f"{value:>{width}.6e}"


def print_suite_summary(report: SuiteReport) -> None:
    """
    스위트 요약을 검사별 테이블로 출력

    Args:
        report: 스위트 보고서

    Example:
        >>> print_suite_summary(run_suite(SuiteConfig()))
    """
    summary = report.summary
    print("\n" + "=" * 80)
    print("📊 검증 스위트 요약")
    print("=" * 80)

    counts: Dict[str, List[int]] = defaultdict(lambda: [0, 0])
    for record in report.records:
        counts[record.check_id][0] += 1
        if not record.passed:
            counts[record.check_id][1] += 1

    print(f"\n{'검사':<22} | {'레코드':>6} | {'실패':>5} | {'최소 여유':>14}")
    print("-" * 60)
    for check_id, (total, failed) in counts.items():
        marker = "✅" if failed == 0 else "❌"
        print(f"{check_id:<22} | {total:>6} | {failed:>5} | {_num(summary.min_slack.get(check_id))} {marker}")

    print("\n" + "-" * 60)
    print(f"전체 레코드: {summary.total_records}개, 실패: {summary.failed_records}개")
    print(f"최대 증명 사슬 위반량: {summary.max_chain_violation:.3e}")
    print(f"실행 시간: {summary.runtime_seconds:.2f}초")
    if report.errors:
        print_error_summary(report.errors)
    print("=" * 80)


def print_evaluation(label: str, values: Dict[str, Any]) -> None:
    """
    한 점에서의 평가 결과 출력 (eval 서브커맨드)

    Args:
        label: 함수 명세
        values: 이름 -> 값 (None 은 '-' 로 표시)
    """
    print("\n" + "=" * 80)
    print(f"🔎 {label}")
    print("=" * 80)
    for name, value in values.items():
        if isinstance(value, complex):
            print(f"   {name:<20} {value.real:+.12g} {value.imag:+.12g}i")
        elif isinstance(value, float) or value is None:
            print(f"   {name:<20} {_num(value).strip()}")
        else:
            print(f"   {name:<20} {value}")
    print("=" * 80)


def print_chain_report(label: str, report: ChainReport) -> None:
    """증명 사슬 중간량 출력"""
    print("\n" + "=" * 80)
    print(f"⛓️  증명 사슬: {label} at z = {report.z.value}")
    print("=" * 80)
    print(f"   Q = F_z(z)           {report.q:.12g}")
    print(f"   |G_z(z)|             {report.gzz:.12g}   (I1 = {report.i1:.6g}, I2 = {report.i2:.6g})")
    print(f"   외부함수 |G_z(z)|    {_num(report.gz_outer).strip()}")
    print(f"   주 정리 우변         {report.rhs_main:.12g}")
    print(f"   e^(1/e) 우변         {_num(report.rhs_simple).strip()}")
    print(f"   I2 오목성 상한       {report.i2_bound:.12g}")
    print(f"   omega_z(E)           {report.omega_e:.12g}")
    print(f"   int_(T-E) |F_z|      {report.taburetka:.12g}")
    print(f"   int_T |F_z|          {report.full_taburetka:.12g}")
    print(f"   E 위 |phi'|-|F_z|    {_num(report.estone_min_slack).strip()}")
    print(f"   구적 오차            {report.quad_error:.3e}")
    print("=" * 80)


def print_falsify_record(record: FalsifyRecord) -> None:
    """반증 탐색 결과 출력"""
    print("\n" + "=" * 80)
    print(f"🎯 반증 탐색: {record.family} (budget={record.budget}, seed={record.seed})")
    print("=" * 80)
    print(f"   평가 {record.evaluated}개, 건너뜀 {record.skipped}개")
    print(f"   최소 여유: {record.min_slack:.6e} (tol {record.tol_at_min:.1e})")
    if record.argmin:
        print(f"   최소 지점: {record.argmin}")
    for check_id, value in record.check_min_slack.items():
        count = record.check_violations.get(check_id, 0)
        print(f"   {check_id:<16} 최소 여유 {_num(value)}   위반 {count}")
    if record.violations:
        print(f"   ❌ 위반 {record.violations}건 (구현 버그 가능성)")
    else:
        print("   ✅ 위반 없음")
    print("=" * 80)


def print_angular_report(label: str, report: AngularReport) -> None:
    """각도 미분 판정 출력"""
    status = {'exists': '✅ 존재', 'diverges': '♾️  발산', 'inconclusive': '❔ 판정 불가'}
    print("\n" + "=" * 80)
    print(f"📐 각도 미분: {label} at angle {report.zeta.angle:.12g}")
    print("=" * 80)
    print(f"   판정: {status.get(report.status, report.status)}")
    print(f"   liminf 추정: {_num(report.liminf_estimate).strip()}")
    if report.derivative_estimate is not None:
        d = report.derivative_estimate
        print(f"   미분 추정: {d.real:+.10g} {d.imag:+.10g}i (|.| = {abs(d):.10g})")
    print(f"   Stolz 경로 Q: {_num(report.stolz_estimate).strip()}")
    print(f"   수렴 잔차: {report.convergence_residual:.3e}")
    print("=" * 80)


def print_error_summary(errors: List[Dict[str, Any]]) -> None:
    """
    에러 요약 출력

    스위트 실행 중 발생한 에러를 노드별로 그룹화하여 출력합니다.

    Args:
        errors: 에러 리스트 (node, check, family, error, fallback 필드)
    """
    if not errors:
        return
    print("\n⚠️  에러 요약")
    by_node: Dict[str, List[Dict[str, Any]]] = defaultdict(list)
    for error in errors:
        by_node[error.get('node', 'unknown')].append(error)
    for node, items in by_node.items():
        print(f"   [{node}] {len(items)}건")
        for item in items[:5]:
            print(f"      • {item.get('family', '')}: {item.get('error', '')}")
        if len(items) > 5:
            print(f"      … 외 {len(items) - 5}건")
