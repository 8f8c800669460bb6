import sys

import pytest

from newtonsegre import make_spec, parse_ideal

PLANE5_TEXT = "x1^2*x2^6,x1^3*x2^4,x1^4*x2^3,x1^5*x2,x1^7"
AXES3_TEXT = "x1*x2,x1*x3,x2*x3"


@pytest.fixture
def plane5():
    return parse_ideal(PLANE5_TEXT)


@pytest.fixture
def axes3():
    return parse_ideal(AXES3_TEXT)


@pytest.fixture
def fat_point():
    return make_spec([(2, 0), (1, 1), (0, 2)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
