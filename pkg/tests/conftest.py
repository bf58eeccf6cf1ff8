from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from acikoszul.fileformat import load

CORPUS = Path(__file__).resolve().parents[1] / "corpus"

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def corpus_path(name: str) -> Path:
    return CORPUS / f"{name}.ring"


def corpus_ring(name: str):
    """(R, x) for a corpus file; x is the shipped system of parameters."""
    pf = load(corpus_path(name))
    R = pf.presentation()
    return R, pf.sequence(R).elements


@pytest.fixture(scope="session")
def intro():
    return corpus_ring("intro")


@pytest.fixture(scope="session")
def ex39():
    return corpus_ring("example39")


@pytest.fixture(scope="session")
def ex310():
    return corpus_ring("example310")


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
