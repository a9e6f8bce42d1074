"""
LangGraph 노드 함수 모듈

검증 스위트의 각 단계를 구현하는 노드 함수들을 제공합니다.
각 노드는 SuiteState 를 입력받아 부분 딕셔너리로 상태를 업데이트합니다.
모듈 예외는 실패 레코드와 errors 항목으로 기록되며 스위트를 중단하지 않습니다.
"""

import logging
import math
import time
from typing import Any, Callable, Dict, List

import numpy as np

from config.constants import ANGULAR_CROSS_RTOL, TWO_PI
from config.settings import NON_OUTER_THRESHOLD
from lab.angular_limits import angular_derivative, jc_consistency
from lab.boundary_geometry import parse_arc_set
from lab.classification import divisibility_check, moebius_detect, outer_check
from lab.function_spec import parse_function
from lab.holo_zoo import derivative_map
from lab.holomap import HoloMap
from lab.schwarz_pick_core import (
    bound_chain,
    cone_constant,
    inner_bound_rhs,
    julia_residual,
    lower_bound_slack,
    q_ratio,
    reverse_bound_estimate,
    schwarz_pick_slack,
    simple_bound_rhs,
    tolerance,
)
from models.errors import ChainViolation, LabError, UnboundedOnE
from models.geometry_models import BoundaryPoint, CircleGrid
from models.report_models import CheckRecord
from workflow.state import SuiteState, failed_record, make_record, node_rng, point_inputs

logger = logging.getLogger(__name__)

SCHWARZ_PICK_TOL = 1e-12
OUTER_TOL = 1e-6
DIVISIBILITY_TOL = 1e-6
JULIA_PROBES = 2
ANGULAR_PROBES = 2
# Generic angular probes keep this distance (radians) from the singular support
ANGULAR_SAFE_GAP = 0.25

NODE_ORDER = ('prepare', 'schwarz_pick', 'theorem', 'chain', 'julia', 'angular', 'classification')


def _node_index(name: str) -> int:
    return NODE_ORDER.index(name)


def _guarded(node: str, check_id: str, family: str,
             inputs: Dict[str, Any], errors: List[Dict[str, Any]],
             fn: Callable[[], List[CheckRecord]]) -> List[CheckRecord]:
    """검사 실행, LabError 와 예상치 못한 예외는 실패 레코드로 변환"""
    try:
        return fn()
    except Exception as e:
        if isinstance(e, LabError):
            logger.warning("%s/%s failed for %s: %s", node, check_id, family, e)
        else:
            logger.exception("%s/%s unexpected failure for %s", node, check_id, family)
        errors.append({
            "node": node,
            "check": check_id,
            "family": family,
            "error": str(e),
            "fallback": "failed_record",
        })
        return [failed_record(check_id, family, e, inputs)]


def _self_maps(state: SuiteState) -> List[HoloMap]:
    return [f for f in state.get("functions", []) if f.self_map]


def _inner_maps(state: SuiteState) -> List[HoloMap]:
    return [f for f in state.get("functions", []) if f.inner]


# ============================================================================
# 준비 노드
# ============================================================================

def prepare_node(state: SuiteState) -> Dict[str, Any]:
    """
    준비 노드

    함수 명세와 호 집합을 해석하고 z 표본을 뽑습니다.
    해석 실패는 'parse' 실패 레코드가 됩니다.
    """
    config = state["config"]
    errors = state.get("errors", []).copy()
    records = state.get("records", []).copy()

    functions = []
    for spec in config.families:
        try:
            functions.append(parse_function(spec))
        except LabError as e:
            print(f"\n⚠️ 함수 명세 해석 실패: {spec} ({e})")
            errors.append({"node": "prepare", "check": "parse", "family": spec,
                           "error": str(e), "fallback": "skip_family"})
            records.append(failed_record("parse", spec, e))

    arcs = []
    for text in config.arcs:
        try:
            arcs.append(parse_arc_set(text))
        except (ValueError, LabError) as e:
            errors.append({"node": "prepare", "check": "parse_arcs", "family": text,
                           "error": str(e), "fallback": "skip_arc_set"})
            records.append(failed_record("parse_arcs", text, e))

    rng = node_rng(config, _node_index('prepare'))
    z_points: List[complex] = []
    if config.z_samples > 0:
        z_points.append(0j)
        for _ in range(config.z_samples - 1):
            radius = config.z_radius * math.sqrt(rng.random())
            z_points.append(complex(radius * np.exp(1j * TWO_PI * rng.random())))

    print(f"  준비 완료: 함수 {len(functions)}개, 호 집합 {len(arcs)}개, z 표본 {len(z_points)}개")
    return {
        "grid": CircleGrid(n=config.grid_n),
        "functions": functions,
        "arcs": arcs,
        "z_points": z_points,
        "records": records,
        "errors": errors,
    }


# ============================================================================
# 부등식 노드들
# ============================================================================

def schwarz_pick_node(state: SuiteState) -> Dict[str, Any]:
    """Schwarz-Pick 부등식과 하한 검사"""
    config = state["config"]
    errors = state.get("errors", []).copy()
    records = state.get("records", []).copy()

    for phi in _self_maps(state):
        for z in state.get("z_points", []):
            inputs = point_inputs(z)

            def run(phi=phi, z=z, inputs=inputs):
                return [
                    make_record("schwarz_pick", phi.label,
                                schwarz_pick_slack(phi, z, config.r_max), SCHWARZ_PICK_TOL, inputs),
                    make_record("lower_bound", phi.label,
                                lower_bound_slack(phi, z, config.r_max), config.abs_floor, inputs),
                ]

            records.extend(_guarded("schwarz_pick", "schwarz_pick", phi.label, inputs, errors, run))
    return {"records": records, "errors": errors}


def theorem_node(state: SuiteState) -> Dict[str, Any]:
    """주 정리 우변, e^{1/e} 따름정리, 내부함수 따름정리 검사"""
    config = state["config"]
    grid = state["grid"]
    errors = state.get("errors", []).copy()
    records = state.get("records", []).copy()

    for phi in _self_maps(state):
        for e in state.get("arcs", []):
            for z in state.get("z_points", []):
                inputs = point_inputs(z, e.arcs)

                def run(phi=phi, e=e, z=z, inputs=inputs):
                    q = q_ratio(phi, z, config.r_max)
                    rhs, error = reverse_bound_estimate(phi, e, z, grid, config.r_max)
                    tol = tolerance(rhs, error, config.abs_floor)
                    out = [make_record("theorem_main", phi.label, rhs - q, tol, inputs, error)]
                    try:
                        simple = simple_bound_rhs(phi, e, z, grid, config.r_max)
                    except UnboundedOnE as err:
                        logger.debug("simple bound skipped: %s", err)
                        return out
                    out.append(make_record("theorem_simple", phi.label, simple - q,
                                           tolerance(simple, error, config.abs_floor), inputs, error))
                    out.append(make_record("simple_dominates", phi.label, simple - rhs, tol, inputs, error))
                    return out

                records.extend(_guarded("theorem", "theorem_main", phi.label, inputs, errors, run))

    for theta in _inner_maps(state):
        for z in state.get("z_points", []):
            inputs = point_inputs(z)

            def run_inner(theta=theta, z=z, inputs=inputs):
                bound = inner_bound_rhs(theta, z, grid, config.r_max)
                return [make_record("inner_bound", theta.label, bound - q_ratio(theta, z, config.r_max),
                                    tolerance(bound, 0.0, config.abs_floor), inputs)]

            records.extend(_guarded("theorem", "inner_bound", theta.label, inputs, errors, run_inner))
    return {"records": records, "errors": errors}


def chain_node(state: SuiteState) -> Dict[str, Any]:
    """증명 사슬 감사 (z 표본 앞 chain_points 개)"""
    config = state["config"]
    grid = state["grid"]
    errors = state.get("errors", []).copy()
    records = state.get("records", []).copy()
    reports = state.get("chain_reports", []).copy()

    points = state.get("z_points", [])[:config.chain_points]
    for phi in _self_maps(state):
        for e in state.get("arcs", []):
            for z in points:
                inputs = point_inputs(z, e.arcs)
                try:
                    report = bound_chain(phi, e, z, grid, config.r_max, config.abs_floor)
                except ChainViolation as violation:
                    errors.append({"node": "chain", "check": violation.link, "family": phi.label,
                                   "error": str(violation), "fallback": "failed_record"})
                    records.append(make_record("chain", phi.label, violation.residual, 0.0, inputs,
                                               note=f"link {violation.link}"))
                    continue
                except Exception as err:
                    if not isinstance(err, LabError):
                        logger.exception("chain unexpected failure for %s", phi.label)
                    errors.append({"node": "chain", "check": "chain", "family": phi.label,
                                   "error": str(err), "fallback": "failed_record"})
                    records.append(failed_record("chain", phi.label, err, inputs))
                    continue
                slack = min(report.gzz - report.fzz, report.rhs_main - report.gzz,
                            report.i2_bound - report.i2, cone_constant(z) - report.full_taburetka)
                records.append(make_record("chain", phi.label, slack,
                                           tolerance(report.rhs_main, report.quad_error, config.abs_floor),
                                           inputs, report.quad_error))
                reports.append(report)
    return {"records": records, "errors": errors, "chain_reports": reports}


def julia_node(state: SuiteState) -> Dict[str, Any]:
    """Julia 보조정리 잔차 검사 (내부함수, 특이각이 아닌 무작위 zeta)"""
    config = state["config"]
    errors = state.get("errors", []).copy()
    records = state.get("records", []).copy()
    rng = node_rng(config, _node_index('julia'))

    for theta in _inner_maps(state):
        angles = [a for a in TWO_PI * rng.random(JULIA_PROBES) if not theta.is_singular_angle(a)]
        for z in state.get("z_points", []):
            for angle in angles:
                inputs = point_inputs(z, zeta=float(angle))

                def run(theta=theta, z=z, angle=angle, inputs=inputs):
                    residual = julia_residual(theta, z, BoundaryPoint(angle=angle), config.r_max)
                    return [make_record("julia", theta.label, residual, config.abs_floor, inputs)]

                records.extend(_guarded("julia", "julia", theta.label, inputs, errors, run))
    return {"records": records, "errors": errors}


def angular_node(state: SuiteState) -> Dict[str, Any]:
    """각도 미분: 일반 경계점은 닫힌 형태와 비교, 특이각은 발산 확인"""
    config = state["config"]
    errors = state.get("errors", []).copy()
    records = state.get("records", []).copy()
    rng = node_rng(config, _node_index('angular'))

    for theta in _inner_maps(state):
        generic = [float(a) for a in TWO_PI * rng.random(ANGULAR_PROBES)
                   if not theta.is_singular_angle(a, snap=ANGULAR_SAFE_GAP)]
        for angle in generic:
            inputs = {'zeta': angle}

            def run(theta=theta, angle=angle, inputs=inputs):
                residual = jc_consistency(theta, angle)
                return [make_record("angular", theta.label, -residual, ANGULAR_CROSS_RTOL, inputs)]

            records.extend(_guarded("angular", "angular", theta.label, inputs, errors, run))

        for angle in theta.singular_support:
            inputs = {'zeta': float(angle)}

            def run_singular(theta=theta, angle=angle, inputs=inputs):
                report = angular_derivative(theta, angle)
                slack = 0.0 if report.status == 'diverges' else -1.0
                return [make_record("angular_divergence", theta.label, slack, 0.0, inputs,
                                    note=report.status)]

            records.extend(_guarded("angular", "angular_divergence", theta.label, inputs,
                                    errors, run_singular))
    return {"records": records, "errors": errors}


def classification_node(state: SuiteState) -> Dict[str, Any]:
    """
    Moebius/외부함수 분류 검사

    - moebius_equality: Moebius 함수족에서 |Q - |theta'|| 최댓값
    - inn2_consistency: moebius_detect(theta) 와 outer_check(theta') <= tol 의 일치
    - divisibility: I 가 (I^2)' 의 내부인자를 나누는지
    """
    config = state["config"]
    grid = state["grid"]
    errors = state.get("errors", []).copy()
    records = state.get("records", []).copy()

    for theta in _inner_maps(state):
        if theta.family == 'moebius' and state.get("z_points"):
            def run_equality(theta=theta):
                worst = max(abs(q_ratio(theta, z, config.r_max) - abs(theta.deriv(z, config.r_max)))
                            for z in state["z_points"])
                return [make_record("moebius_equality", theta.label, -worst, config.equality_rtol)]

            records.extend(_guarded("classification", "moebius_equality", theta.label, {},
                                    errors, run_equality))

        def run_consistency(theta=theta):
            detected = moebius_detect(theta, rtol=config.equality_rtol, r_max=config.r_max)
            residual = outer_check(derivative_map(theta), grid=grid, r_max=config.r_max)
            outer = residual <= OUTER_TOL
            ambiguous = OUTER_TOL < residual <= NON_OUTER_THRESHOLD
            slack = 0.0 if (detected == outer and not ambiguous) else -1.0
            note = f"moebius={detected}, outer_residual={residual:.3e}"
            return [make_record("inn2_consistency", theta.label, slack, 0.0,
                                {'outer_residual': residual if math.isfinite(residual) else None},
                                note=note)]

        records.extend(_guarded("classification", "inn2_consistency", theta.label, {},
                                errors, run_consistency))

        def run_divisibility(theta=theta):
            deficit = divisibility_check(theta, grid=grid)
            return [make_record("divisibility", theta.label, -deficit, DIVISIBILITY_TOL)]

        records.extend(_guarded("classification", "divisibility", theta.label, {},
                                errors, run_divisibility))
    return {"records": records, "errors": errors}


# ============================================================================
# 요약 노드
# ============================================================================

def summarize_node(state: SuiteState) -> Dict[str, Any]:
    """검사별 최소 여유, 최대 사슬 위반량, 실행 시간 집계"""
    records = state.get("records", [])
    min_slack: Dict[str, float] = {}
    for record in records:
        if math.isnan(record.slack):
            continue
        current = min_slack.get(record.check_id, math.inf)
        min_slack[record.check_id] = min(current, record.slack)

    chain_violations = [-r.slack for r in records
                        if r.check_id == "chain" and not r.passed and not math.isnan(r.slack)]
    failed = sum(1 for r in records if not r.passed)
    summary = {
        "min_slack": min_slack,
        "max_chain_violation": max([0.0] + chain_violations),
        "total_records": len(records),
        "failed_records": failed,
        "runtime_seconds": time.perf_counter() - state.get("start_time", time.perf_counter()),
    }
    print(f"  요약: 레코드 {len(records)}개, 실패 {failed}개")
    return {"summary": summary}
