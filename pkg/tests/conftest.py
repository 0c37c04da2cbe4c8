import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qualisem.worldmodel import Property

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def temp_prop() -> Property:
    return Property("temp", ("cold", "cool", "warm", "hot"),
                    (10.0, 20.0, 30.0), unit="celsius")


@pytest.fixture
def pos_prop() -> Property:
    return Property("pos", ("left", "mid", "right"), (1.0, 2.0))


@pytest.fixture
def declarations(temp_prop, pos_prop):
    return {"temp": temp_prop, "pos": pos_prop}


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
