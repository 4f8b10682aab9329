from pathlib import Path

import pytest

from subcad.formula import load_problem

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / f"{name}.txt"


@pytest.fixture
def problem():
    return lambda name: load_problem(FIXTURES / f"{name}.txt")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
