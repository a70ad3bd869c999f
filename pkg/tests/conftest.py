from pathlib import Path

import numpy as np
import pytest

from chaoswave import SecretKey
from chaoswave.pgm import read_pgm

DATA = Path(__file__).parent / "data"
CORPUS = sorted(DATA.glob("*.pgm"))


@pytest.fixture
def key():
    return SecretKey()


@pytest.fixture(scope="session")
def corpus():
    return {p.stem: read_pgm(p) for p in CORPUS}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
