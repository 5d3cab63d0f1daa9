import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

sys.path.insert(0, str(ROOT / "tests"))

from volcheck.census import load_census  # noqa: E402


@pytest.fixture(scope="session")
def mini_census():
    return load_census(DATA / "mini_census.jsonl")


@pytest.fixture(scope="session")
def fixtures_census():
    return load_census(DATA / "fixtures.jsonl")


@pytest.fixture(scope="session")
def m004(mini_census):
    return next(r for r in mini_census if r.name == "m004")


@pytest.fixture(scope="session")
def m003(mini_census):
    return next(r for r in mini_census if r.name == "m003")
