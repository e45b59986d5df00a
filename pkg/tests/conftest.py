from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def exp1_csv() -> Path:
    return DATA_DIR / "exp1.csv"


@pytest.fixture
def exp2_csv() -> Path:
    return DATA_DIR / "exp2.csv"


@pytest.fixture
def rig_cfg() -> Path:
    return DATA_DIR / "rig.cfg"
