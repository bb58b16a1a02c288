import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from bdshift import CanonicalFunction, ShiftSpec, golden_mean, shift  # noqa: E402


@pytest.fixture
def golden():
    return golden_mean()


@pytest.fixture
def f35():
    return ShiftSpec(CanonicalFunction.ceiling(Fraction(3, 5)), name="ceil-3n/5")


@pytest.fixture
def zero():
    return shift(["0"], 0, name="zero")


@pytest.fixture
def x32():
    # f(n) = ceil(3n/2) over the alphabet {0, 1, 2}
    return ShiftSpec(CanonicalFunction.ceiling(Fraction(3, 2)), name="ceil-3n/2")


@pytest.fixture(params=["golden", "f35"])
def instance(request):
    return request.getfixturevalue(request.param)


def pytest_terminal_summary(terminalreporter):
    import oracles

    if oracles.ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in oracles.ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
