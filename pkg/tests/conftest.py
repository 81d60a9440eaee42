import pytest

from jantzen.rootsys import build_root_system


@pytest.fixture
def A1():
    return build_root_system("A", 1)


@pytest.fixture
def A2():
    return build_root_system("A", 2)


@pytest.fixture
def B2():
    return build_root_system("B", 2)


@pytest.fixture
def B3():
    return build_root_system("B", 3)


@pytest.fixture
def D4():
    return build_root_system("D", 4)


# one line per acceptance criterion, repeated at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
