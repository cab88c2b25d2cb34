import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fpmap.mzv import load_relation_table  # noqa: E402


@pytest.fixture(scope="session")
def table():
    return load_relation_table()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
