import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from innerrates.examples import BUNDLED, load_example  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def examples():
    return {name: load_example(name) for name in BUNDLED}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
