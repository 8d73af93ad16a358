import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bettikit import GF, QQ, parse_ideal  # noqa: E402

FIELDS = [QQ, GF(2), GF(3)]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


@pytest.fixture(scope="session")
def ideal_I():
    return parse_ideal("a*c, a*e, b*d, d*e")


@pytest.fixture(scope="session")
def ideal_J():
    return parse_ideal("wx, xy, wz, yz", ["w", "x", "y", "z"])


@pytest.fixture(scope="session")
def acceptance():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
