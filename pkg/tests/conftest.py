import pytest

from tatekit import atlas
from tatekit.structure import tower


@pytest.fixture(scope="session")
def radford25():
    return atlas.radford(2, 5).build()


@pytest.fixture(scope="session")
def cyclic5():
    return atlas.cyclic(5).build()


@pytest.fixture(scope="session")
def truncated25():
    return atlas.truncated(2, 5).build()


@pytest.fixture(scope="session")
def vsl2_5():
    return atlas.vsl2(5).build()


@pytest.fixture(scope="session")
def rt(radford25):
    """Radford(2,5) tower with window 8."""
    return tower(radford25, 8)


@pytest.fixture(scope="session")
def ct(cyclic5):
    return tower(cyclic5, 10)


def pytest_configure(config):
    config.acceptance_lines = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.acceptance_lines
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
