import numpy as np
import pytest

from qincompat import Basis

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def comp2():
    return Basis.computational(2)


@pytest.fixture
def comp3():
    return Basis.computational(3)


def rotation_basis(theta: float) -> Basis:
    """Qubit basis at Bloch angle theta from the computational one."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return Basis(np.array([[c, -s], [s, c]], dtype=complex))
