import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def golden_path() -> Path:
    return DATA_DIR / "golden_tribology.txt"


@pytest.fixture(scope="session")
def conformance_path() -> Path:
    return DATA_DIR / "conformance_sample.txt"
