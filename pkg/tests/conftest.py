import numpy as np
import pytest

from outerlorentz import setting3


@pytest.fixture
def s3():
    return setting3()


@pytest.fixture
def f210():
    return np.array([2.0, 1.0, 0.0])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
