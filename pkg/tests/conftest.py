"""
pytest 공용 픽스처

격자, 함수족 인스턴스, 출력 디렉토리 격리를 제공합니다.
"""

import numpy as np
import pytest

from lab import holo_zoo
from models.geometry_models import CircleGrid


@pytest.fixture(scope="session")
def grid():
    """기본 원주 격자 (n = 4096)"""
    return CircleGrid(n=4096)


@pytest.fixture(scope="session")
def small_grid():
    """빠른 검사용 격자 (n = 1024)"""
    return CircleGrid(n=1024)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture(scope="session")
def zoo():
    """대표 자기사상 함수족"""
    return {
        'moebius': holo_zoo.moebius(np.exp(0.7j), 0.3 - 0.4j),
        'blaschke': holo_zoo.blaschke([0.0, 0.5, -0.3 + 0.6j]),
        'S': holo_zoo.atomic_s(),
        'balpha': holo_zoo.b_alpha(0.5),
        'product': holo_zoo.product(holo_zoo.atomic_s(), holo_zoo.blaschke([0.2j])),
    }


@pytest.fixture
def isolated_output(tmp_path, monkeypatch):
    """자동 생성 파일이 작업 디렉토리를 어지럽히지 않도록 tmp 경로로 보냄"""
    monkeypatch.setattr("utils.file_handler.OUTPUT_DIR", str(tmp_path / "results"))
    monkeypatch.setattr("main.LOG_DIR", str(tmp_path / "logs"))
    return tmp_path

