from fractions import Fraction

import pytest

from twisted_zhu.fock import FockVOA
from twisted_zhu.verma import AModuleSpec, VermaModule

THETA_MODULE = {"m": "0", "dim": 1, "action": [{"word": [], "matrix": [["1/1"]]}]}


@pytest.fixture(scope="session")
def theta():
    return FockVOA("theta")


@pytest.fixture(scope="session")
def trivial():
    return FockVOA("trivial")


@pytest.fixture(scope="session")
def theta_module(theta):
    """M(U) for the 1-dim A_theta(M(1))-module, levels n <= 3/2."""
    U = AModuleSpec.from_json(THETA_MODULE, 2)
    return VermaModule(theta, U, W=4, n_max=Fraction(3, 2))


@pytest.fixture(scope="session")
def theta_pairing(theta_module):
    from twisted_zhu.pairing import build_pairing

    return build_pairing(theta_module)


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
