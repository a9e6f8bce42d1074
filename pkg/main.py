"""
역 Schwarz-Pick 부등식 수치 실험실 CLI

서브커맨드:
    eval     한 점에서 Q, |phi'|, Schwarz-Pick 여유, 주 정리/따름정리 우변 출력
    chain    증명 사슬 중간량 출력 (선택적으로 JSON 저장)
    verify   검증 스위트 실행, JSON 보고서와 CSV 레코드 저장
    falsify  주 정리 여유의 무작위 최소화
    sweep    극좌표 격자 위 Q, |phi'|, 주 정리 우변 (히트맵 CSV)
    angular  경계점에서의 각도 미분 판정

함수 명세 문법 (lab.function_spec):
    moebius:lam,a   blaschke:a1,a2,...   S   balpha:alpha   id   power:n
    singular:angle@mass,...   outer:c|angle^p,...
    prod(f,g)   compose(f,g)   deriv(f)   quot(f,blaschke:...)
    명세 안의 복소수는 Python 표기(0.3+0.4j), --z 는 "re,im" 으로 적습니다.

예시:
    python main.py eval balpha:0.5 --z=0.3,0 --arc 1.5708,4.7124
    python main.py verify --config suite.cfg
    python main.py sweep S --polar 16,64 --out heat.csv

종료 코드: 0 = 성공, 1 = 실험실 오류 또는 부등식 위반
"""

import argparse
import logging
import math
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from config.settings import GRID_N, LOG_DIR
from lab.angular_limits import angular_sweep
from lab.boundary_geometry import harmonic_measure, parse_arc_set
from lab.falsify import falsify
from lab.function_spec import parse_function
from lab.holomap import HoloMap
from lab.schwarz_pick_core import (
    bound_chain,
    inner_bound_rhs,
    lower_bound_slack,
    q_ratio,
    reverse_bound_rhs,
    schwarz_pick_slack,
    simple_bound_rhs,
    two_constants_bound,
)
from models.config_models import SuiteConfig
from models.report_models import CHAIN_FIELDS
from models.errors import LabError, UnboundedOnE
from models.geometry_models import ArcSet, CircleGrid
from utils.file_handler import (
    load_suite_config,
    save_records_to_csv,
    save_report_to_json,
    save_result_to_json,
    save_rows_to_csv,
)
from utils.output_formatter import (
    print_angular_report,
    print_chain_report,
    print_evaluation,
    print_falsify_record,
    print_suite_summary,
)
from workflow.graph import print_workflow_diagram, run_suite

SWEEP_FIELDS = ['r', 'theta', 'Q', 'abs_deriv', 'rhs_main']
ANGULAR_FIELDS = ['angle', 'exists', 'liminf', 'abs_deriv', 'residual']


def setup_logging(log_dir: Optional[str] = None) -> Path:
    """
    로깅 설정 초기화

    타임스탬프가 포함된 로그 파일(INFO 이상)과 콘솔(WARNING 이상)에 기록합니다.

    Returns:
        로그 파일 경로
    """
    directory = Path(log_dir or LOG_DIR)
    directory.mkdir(parents=True, exist_ok=True)

    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    log_file = directory / f"rsp_lab_{timestamp}.log"

    log_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    date_format = '%Y-%m-%d %H:%M:%S'
    formatter = logging.Formatter(log_format, date_format)

    file_handler = logging.FileHandler(log_file, encoding='utf-8')
    file_handler.setLevel(logging.INFO)
    file_handler.setFormatter(formatter)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.WARNING)
    console_handler.setFormatter(formatter)

    root = logging.getLogger()
    root.setLevel(logging.INFO)
    root.handlers = [file_handler, console_handler]
    return log_file


# ============================================================================
# 인자 해석
# ============================================================================

def parse_point(text: str) -> complex:
    """'re,im' 또는 're' 를 복소수로"""
    parts = [p.strip() for p in text.split(',')]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def parse_polar(text: str):
    """'nr,ntheta' 를 양의 정수 쌍으로"""
    try:
        nr, ntheta = (int(p) for p in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'nr,ntheta', got {text!r}")
    if nr < 1 or ntheta < 1:
        raise argparse.ArgumentTypeError("nr and ntheta must be positive")
    return nr, ntheta


def _arc_set(arcs: Optional[List[str]]) -> ArcSet:
    if not arcs:
        return ArcSet.full()
    return parse_arc_set("|".join(arcs))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsp-lab",
        description="Numerical laboratory for the reverse Schwarz-Pick inequality",
    )
    parser.add_argument('--log-dir', default=None, help="log directory (default RSP_LOG_DIR)")
    sub = parser.add_subparsers(dest='command', required=True)

    def with_grid(p):
        p.add_argument('--grid', type=int, default=GRID_N, help="circle grid size (power of two)")
        return p

    p = with_grid(sub.add_parser('eval', help="evaluate Q, |phi'| and bounds at one point"))
    p.add_argument('func')
    p.add_argument('--z', type=parse_point, required=True, help="point 're,im'")
    p.add_argument('--arc', action='append', help="arc 'a,b' (repeatable, default whole circle)")

    p = with_grid(sub.add_parser('chain', help="audit the proof chain at one point"))
    p.add_argument('func')
    p.add_argument('--z', type=parse_point, required=True)
    p.add_argument('--arc', action='append')
    p.add_argument('--out', default=None, help="save the ChainReport as JSON")
    p.add_argument('--csv', default=None, help="save the ChainReport as a one-row CSV")

    p = sub.add_parser('verify', help="run the verification suite")
    p.add_argument('--config', default=None, help="key = value suite config file")
    p.add_argument('--diagram', action='store_true', help="print the workflow diagram")

    p = with_grid(sub.add_parser('falsify', help="randomized search for violations"))
    p.add_argument('func', help="family name or function spec")
    p.add_argument('--budget', type=int, default=100)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--full-circle', action='store_true', help="fix E to the whole circle")
    p.add_argument('--out', default=None, help="save the FalsifyRecord as JSON")

    p = with_grid(sub.add_parser('sweep', help="polar grid heatmap data"))
    p.add_argument('func')
    p.add_argument('--polar', type=parse_polar, default=(16, 64), help="'nr,ntheta'")
    p.add_argument('--radius', type=float, default=0.95, help="outermost radius")
    p.add_argument('--arc', action='append')
    p.add_argument('--out', default=None, help="CSV path (default timestamped)")

    p = sub.add_parser('angular', help="angular derivative at boundary points")
    p.add_argument('func')
    p.add_argument('--zeta', type=float, action='append', required=True, help="angle (repeatable)")
    p.add_argument('--depth', type=int, default=30)
    p.add_argument('--out', default=None, help="save the reports as CSV")

    return parser


# ============================================================================
# 서브커맨드
# ============================================================================

def cmd_eval(args) -> int:
    phi = parse_function(args.func)
    grid = CircleGrid(n=args.grid)
    e = _arc_set(args.arc)
    z = args.z

    try:
        rhs_simple = simple_bound_rhs(phi, e, z, grid)
        two_constants = two_constants_bound(phi, e, z, grid)
    except UnboundedOnE as err:
        logging.getLogger(__name__).info("simple bound unavailable: %s", err)
        rhs_simple = two_constants = None

    values = {
        'phi(z)': complex(phi.eval(z)),
        'Q': q_ratio(phi, z),
        "|phi'(z)|": abs(complex(phi.deriv(z))),
        'schwarz_pick_slack': schwarz_pick_slack(phi, z),
        'lower_bound_slack': lower_bound_slack(phi, z),
        'm(E)': e.measure(),
        'omega_z(E)': harmonic_measure(z, e, grid) if e.arcs else 0.0,
        'rhs_main': reverse_bound_rhs(phi, e, z, grid),
        'rhs_simple': rhs_simple,
        'two_constants': two_constants,
    }
    if phi.inner:
        values['inner_bound'] = inner_bound_rhs(phi, z, grid)
    print_evaluation(phi.label, values)
    return 0


def cmd_chain(args) -> int:
    phi = parse_function(args.func)
    report = bound_chain(phi, _arc_set(args.arc), args.z, CircleGrid(n=args.grid))
    print_chain_report(phi.label, report)
    if args.out:
        path = save_result_to_json(report.model_dump(mode='json'), args.out)
        print(f"💾 저장 완료: {path}")
    if args.csv:
        path = save_rows_to_csv([report.to_csv_row()], CHAIN_FIELDS, args.csv, prefix="chain")
        print(f"💾 저장 완료: {path}")
    return 0


def cmd_verify(args) -> int:
    config = load_suite_config(args.config) if args.config else SuiteConfig()
    if args.diagram:
        print_workflow_diagram()
    report = run_suite(config)
    print_suite_summary(report)
    json_path = save_report_to_json(report, config.output_json)
    csv_path = save_records_to_csv(report.records, config.output_csv)
    print(f"💾 보고서: {json_path}")
    print(f"💾 레코드: {csv_path}")
    if report.chain_reports:
        chain_path = save_rows_to_csv([c.to_csv_row() for c in report.chain_reports],
                                      CHAIN_FIELDS, prefix="suite_chains")
        print(f"💾 증명 사슬: {chain_path}")
    return 0 if report.summary.failed_records == 0 else 1


def cmd_falsify(args) -> int:
    record = falsify(args.func, args.budget, args.seed, CircleGrid(n=args.grid), args.full_circle)
    print_falsify_record(record)
    if args.out:
        save_result_to_json(record.model_dump(mode='json'), args.out)
    return 0 if record.violations == 0 else 1


def sweep_rows(phi: HoloMap, e: ArcSet, grid: CircleGrid, nr: int, ntheta: int,
               radius: float = 0.95) -> List[dict]:
    """
    극좌표 격자 r_i = radius (i+1)/nr, theta_j = 2 pi j/ntheta 위의 행

    주 정리 우변을 계산할 수 없는 점은 rhs_main 을 비워 둡니다.
    """
    logger = logging.getLogger(__name__)
    rows = []
    for i in range(nr):
        r = radius * (i + 1) / nr
        for j in range(ntheta):
            theta = 2.0 * math.pi * j / ntheta
            z = complex(r * math.cos(theta), r * math.sin(theta))
            try:
                rhs = reverse_bound_rhs(phi, e, z, grid)
            except LabError as err:
                logger.info("sweep r=%.4f theta=%.4f: %s", r, theta, err)
                rhs = None
            rows.append({
                'r': r,
                'theta': theta,
                'Q': q_ratio(phi, z),
                'abs_deriv': abs(complex(phi.deriv(z))),
                'rhs_main': rhs,
            })
    return rows


def cmd_sweep(args) -> int:
    phi = parse_function(args.func)
    nr, ntheta = args.polar
    rows = sweep_rows(phi, _arc_set(args.arc), CircleGrid(n=args.grid), nr, ntheta, args.radius)
    path = save_rows_to_csv(rows, SWEEP_FIELDS, args.out, prefix="sweep")
    finite = [row['rhs_main'] - row['Q'] for row in rows if row['rhs_main'] is not None]
    print(f"\n💾 {len(rows)}개 행 저장: {path}")
    if finite:
        print(f"   최소 (rhs_main - Q): {float(np.min(finite)):.6e}")
    return 0


def cmd_angular(args) -> int:
    phi = parse_function(args.func)
    reports = angular_sweep(phi, args.zeta, args.depth)
    for report in reports:
        print_angular_report(phi.label, report)
    if args.out:
        save_rows_to_csv([r.to_csv_row() for r in reports], ANGULAR_FIELDS, args.out, prefix="angular")
    return 0


COMMANDS = {
    'eval': cmd_eval,
    'chain': cmd_chain,
    'verify': cmd_verify,
    'falsify': cmd_falsify,
    'sweep': cmd_sweep,
    'angular': cmd_angular,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    메인 실행 함수

    Returns:
        종료 코드
    """
    args = build_parser().parse_args(argv)
    log_file = setup_logging(args.log_dir)
    logger = logging.getLogger(__name__)
    logger.info("=" * 80)
    logger.info("command: %s (log file %s)", args.command, log_file)

    try:
        return COMMANDS[args.command](args)
    except (LabError, ValidationError) as e:
        print(f"\n❌ {type(e).__name__}: {e}")
        logger.error("%s failed: %s", args.command, e, exc_info=True)
        return 1
    except KeyboardInterrupt:
        print("\n\n⚠️  사용자에 의해 중단되었습니다.")
        logger.warning("사용자에 의해 중단되었습니다")
        return 1


if __name__ == "__main__":
    sys.exit(main())
