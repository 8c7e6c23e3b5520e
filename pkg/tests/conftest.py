import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gencol.io import read_graph6_file  # noqa: E402

DATA = Path(__file__).parent / "data"
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def small_corpus():
    """All connected graphs on one to seven vertices."""
    return read_graph6_file(DATA / "connected_upto7.g6")


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
