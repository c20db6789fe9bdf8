import random

import pytest

from dab.coeffield import SimpleExtension
from dab.diffring import DiffRing


@pytest.fixture
def r1():
    return DiffRing(1, ["y"])


@pytest.fixture
def rxy():
    return DiffRing(1, ["x", "y"])


@pytest.fixture
def r2():
    return DiffRing(2, ["y"])


@pytest.fixture
def sqrt2():
    return SimpleExtension([-2, 0, 1], "s")


@pytest.fixture
def zeta5():
    return SimpleExtension([1, 1, 1, 1, 1], "zeta")


@pytest.fixture
def rng():
    return random.Random(20240501)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
