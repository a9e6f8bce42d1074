import csv
import json
import math

from pathlib import Path

import numpy as np
import pytest

from models.errors import ConfigError
from models.geometry_models import DiskPoint
from models.report_models import CHAIN_FIELDS, ChainReport, SuiteReport, SuiteSummary
from utils.file_handler import (
    load_suite_config,
    save_records_to_csv,
    save_report_to_json,
    save_result_to_json,
    save_rows_to_csv,
)
from workflow.state import failed_record, make_record


def _report():
    records = [
        make_record("schwarz_pick", "S", 0.25, 1e-12, {'z': [0.1, 0.2]}),
        failed_record("julia", "S", ValueError("boom")),
    ]
    return SuiteReport(records=records, summary=SuiteSummary(total_records=2, failed_records=1))


def _read_json(path):
    return json.loads(Path(path).read_text(encoding='utf-8'))


def test_report_json_writes_nan_as_null(tmp_path):
    path = save_report_to_json(_report(), str(tmp_path / "report.json"))
    data = _read_json(path)
    assert data["summary"]["failed_records"] == 1
    assert data["records"][1]["slack"] is None
    assert data["records"][0]["inputs"] == {'z': [0.1, 0.2]}


def test_report_json_gets_timestamped_name(tmp_path):
    path = save_report_to_json(_report(), output_dir=str(tmp_path))
    assert path.startswith(str(tmp_path))
    assert "suite_report_" in path and path.endswith(".json")


def test_records_csv(tmp_path):
    path = save_records_to_csv(_report().records, str(tmp_path / "nested" / "records.csv"))
    with open(path, encoding='utf-8') as f:
        rows = list(csv.DictReader(f))
    assert [r["check_id"] for r in rows] == ["schwarz_pick", "julia"]
    assert rows[0]["passed"] == "True"
    assert json.loads(rows[0]["inputs"]) == {'z': [0.1, 0.2]}


def test_rows_csv_ignores_extra_keys(tmp_path):
    rows = [{'r': 0.5, 'theta': 1.0, 'q': 2.0, 'extra': 'x'}]
    path = save_rows_to_csv(rows, ['r', 'theta', 'q'], prefix="sweep", output_dir=str(tmp_path))
    with open(path, encoding='utf-8') as f:
        header = f.readline().strip()
    assert header == "r,theta,q"
    assert "sweep_" in path


def test_chain_report_csv_row(tmp_path):
    report = ChainReport(
        z=DiskPoint(value=0.1 + 0.2j), q=1.5, fzz=1.5, gzz=1.6, i1=0.3, i2=0.17,
        i2_bound=0.2, rhs_main=1.8, rhs_simple=None, omega_e=0.5, taburetka=0.7,
        quad_error=1e-9, gz_outer=1.6, family="S",
    )
    path = save_rows_to_csv([report.to_csv_row()], CHAIN_FIELDS, prefix="chain",
                            output_dir=str(tmp_path))
    with open(path, encoding='utf-8') as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 1
    assert list(rows[0]) == CHAIN_FIELDS
    assert rows[0]["family"] == "S"
    assert float(rows[0]["z_re"]) == 0.1 and float(rows[0]["z_im"]) == 0.2
    assert float(rows[0]["rhs_main"]) == 1.8
    assert rows[0]["rhs_simple"] == ""


def test_result_json_serializes_numeric_types(tmp_path):
    result = {
        'value': 1 + 2j,
        'array': np.array([1.0, math.inf]),
        'count': np.int64(3),
        'flag': np.bool_(True),
        'model': SuiteSummary(max_chain_violation=0.5),
    }
    data = _read_json(save_result_to_json(result, str(tmp_path / "out.json")))
    assert data['value'] == [1.0, 2.0]
    assert data['array'] == [1.0, None]
    assert data['count'] == 3 and data['flag'] is True
    assert data['model']['max_chain_violation'] == 0.5


def test_load_suite_config(tmp_path):
    path = tmp_path / "suite.cfg"
    path.write_text(
        "# small suite\n"
        "grid_n = 1024\n"
        "families = moebius:1,0.3; S ; prod(S,blaschke:0)\n"
        "arcs = full; 0,3.14159   # half circle\n"
        "z_samples = 4\n"
        "seed = 7\n",
        encoding='utf-8',
    )
    config = load_suite_config(str(path))
    assert config.grid_n == 1024
    assert config.families == ["moebius:1,0.3", "S", "prod(S,blaschke:0)"]
    assert config.arcs == ["full", "0,3.14159"]
    assert config.z_samples == 4 and config.seed == 7


@pytest.mark.parametrize("text", [
    "grid_n = 1000\n",
    "colour = red\n",
    "just some words\n",
    "z_radius = 1.5\n",
    "r_max = 0.5\nz_radius = 0.9\n",
])
def test_load_suite_config_errors(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text, encoding='utf-8')
    with pytest.raises(ConfigError):
        load_suite_config(str(path))


def test_load_suite_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_suite_config(str(tmp_path / "nope.cfg"))
