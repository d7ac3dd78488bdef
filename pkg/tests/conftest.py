import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import TOWER_SPECS  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture(params=sorted(TOWER_SPECS[1]), ids=str)
def quad_tower_name(request):
    return request.param


@pytest.fixture(params=sorted(TOWER_SPECS[2]), ids=str)
def cubic_tower_name(request):
    return request.param


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def acceptance():
    def record(number, ok, text):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
