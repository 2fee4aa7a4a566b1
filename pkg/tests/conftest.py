import pytest

from transversal_kit import quasigroup as qg

ACCEPTANCE_LINES = []


@pytest.fixture
def q3():
    # e=0, a=1, b=2; rows are left operands
    return qg.validate([[0, 1, 2], [1, 2, 1], [2, 0, 0]], 0, ["e", "a", "b"])


@pytest.fixture
def z3():
    return qg.validate([[(a + b) % 3 for b in range(3)] for a in range(3)])


@pytest.fixture
def z4():
    return qg.validate([[(a + b) % 4 for b in range(4)] for a in range(4)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
