import os
from pathlib import Path

import pytest


@pytest.fixture
def golden_dir() -> Path:
    return Path(os.environ.get(
        "PERFECTCHAIN_GOLDEN_DIR", Path(__file__).parent / "golden"
    ))
