import pytest

from extremal_arith import build_table

SMALL_LIMIT = 10**5


@pytest.fixture(scope="session")
def table():
    return build_table(SMALL_LIMIT)


def pytest_addoption(parser):
    parser.addoption("--acceptance-n", type=int, default=10**6, help="upper end of acceptance sweeps")


# Acceptance criteria record PASS/FAIL lines here for the terminal summary.
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
