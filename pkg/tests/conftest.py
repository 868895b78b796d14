import pytest

from qubit_ri.model import MachineConfig

ACCEPTANCE_LINES = []


@pytest.fixture
def aniso_cfg():
    """Anisotropic couplings J^H = (4, 16), J^C = (2, 8) at resonance."""
    return MachineConfig.build(tau=0.5, jxx_h=4, jyy_h=16, jxx_c=2, jyy_c=8)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
