import numpy as np
import pytest

from arccoord import corpus


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def torus():
    return corpus.symmetric_torus()


@pytest.fixture
def pants():
    return corpus.pair_of_pants()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
