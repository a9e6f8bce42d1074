"""
파일 처리 유틸리티 모듈

스위트 보고서를 JSON 으로, 검사 레코드와 스윕 데이터를 CSV 로 저장하고,
key = value 형식의 스위트 설정 파일을 읽는 함수들을 제공합니다.
파일명을 주지 않으면 타임스탬프가 붙은 이름을 자동으로 만듭니다.
"""

import csv
import json
import logging
import math
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ValidationError

from config.settings import OUTPUT_DIR
from models.config_models import SuiteConfig
from models.errors import ConfigError
from models.report_models import CheckRecord, SuiteReport

logger = logging.getLogger(__name__)

# Config keys whose values are ';'-separated lists
LIST_KEYS = ('families', 'arcs')


def _timestamped(prefix: str, suffix: str, output_dir: Optional[str] = None) -> Path:
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    directory = Path(output_dir or OUTPUT_DIR)
    directory.mkdir(parents=True, exist_ok=True)
    return directory / f"{prefix}_{timestamp}.{suffix}"


def _target(filename: Optional[str], prefix: str, suffix: str, output_dir: Optional[str]) -> Path:
    if filename is None:
        return _timestamped(prefix, suffix, output_dir)
    filepath = Path(filename)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    return filepath


def save_report_to_json(report: SuiteReport, filename: Optional[str] = None,
                        output_dir: Optional[str] = None) -> str:
    """
    스위트 보고서를 JSON 파일로 저장

    Args:
        report: 스위트 보고서
        filename: 파일명 (None 이면 suite_report_<timestamp>.json)
        output_dir: 자동 파일명의 디렉토리 (None 이면 RSP_OUTPUT_DIR)

    Returns:
        저장된 파일 경로
    """
    filepath = _target(filename, "suite_report", "json", output_dir)
    filepath.write_text(report.model_dump_json(indent=2), encoding='utf-8')
    logger.info("report saved: %s", filepath)
    return str(filepath)


def save_records_to_csv(records: Sequence[CheckRecord], filename: Optional[str] = None,
                        output_dir: Optional[str] = None) -> str:
    """
    검사 레코드를 CSV 로 저장

    열: check_id, family, slack, tol, passed, quad_error, note, inputs (JSON 문자열)
    """
    rows = []
    for record in records:
        row = record.model_dump(exclude={'inputs'})
        row['inputs'] = json.dumps(_make_serializable(record.inputs), ensure_ascii=False)
        rows.append(row)
    fields = ['check_id', 'family', 'slack', 'tol', 'passed', 'quad_error', 'note', 'inputs']
    return save_rows_to_csv(rows, fields, filename, "suite_records", output_dir)


def save_rows_to_csv(rows: Iterable[Dict[str, Any]], fields: Sequence[str],
                     filename: Optional[str] = None, prefix: str = "rows",
                     output_dir: Optional[str] = None) -> str:
    """
    딕셔너리 행들을 CSV 로 저장 (스윕, 각도 판정, 경계 표본 공용)

    Returns:
        저장된 파일 경로
    """
    filepath = _target(filename, prefix, "csv", output_dir)
    with open(filepath, 'w', encoding='utf-8', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=list(fields), extrasaction='ignore')
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    logger.info("csv saved: %s", filepath)
    return str(filepath)


def save_result_to_json(result: Any, filename: Optional[str] = None, prefix: str = "result",
                        output_dir: Optional[str] = None) -> str:
    """
    임의의 결과(딕셔너리 또는 Pydantic 모델)를 JSON 파일로 저장

    Args:
        result: 저장할 결과
        filename: 파일명 (None 이면 <prefix>_<timestamp>.json)
        prefix: 자동 파일명 접두어

    Returns:
        저장된 파일 경로
    """
    filepath = _target(filename, prefix, "json", output_dir)
    with open(filepath, 'w', encoding='utf-8') as f:
        json.dump(_make_serializable(result), f, ensure_ascii=False, indent=2)
    return str(filepath)


def load_suite_config(path: str) -> SuiteConfig:
    """
    key = value 설정 파일에서 SuiteConfig 생성

    '#' 뒤는 주석이고, families/arcs 는 ';' 로 구분한 리스트입니다.

    Example:
        grid_n = 4096
        families = moebius:1,0.3; S
        arcs = full; 0,3.14159

    Raises:
        ConfigError: 파일이 없거나, 알 수 없는 키, 잘못된 값
    """
    filepath = Path(path)
    if not filepath.exists():
        raise ConfigError(f"config file not found: {path}")

    values: Dict[str, Any] = {}
    for number, raw in enumerate(filepath.read_text(encoding='utf-8').splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{number}: expected 'key = value', got {raw!r}")
        if key not in SuiteConfig.model_fields:
            raise ConfigError(f"{path}:{number}: unknown key {key!r}")
        if key in LIST_KEYS:
            values[key] = [item.strip() for item in value.split(';') if item.strip()]
        else:
            values[key] = value

    try:
        return SuiteConfig(**values)
    except ValidationError as e:
        raise ConfigError(f"{path}: {e}") from e


def _make_serializable(obj: Any) -> Any:
    """
    객체를 JSON 직렬화 가능한 형태로 변환

    복소수는 [re, im], 비유한 실수는 None, numpy 배열은 리스트,
    Pydantic 모델은 model_dump(mode='json') 으로 변환합니다.
    """
    if isinstance(obj, BaseModel):
        return _make_serializable(obj.model_dump(mode='json'))
    if isinstance(obj, dict):
        return {str(k): _make_serializable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_make_serializable(item) for item in obj]
    if isinstance(obj, np.ndarray):
        return _make_serializable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [_make_serializable(float(obj.real)), _make_serializable(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj

