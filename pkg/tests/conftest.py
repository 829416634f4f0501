import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_criterion_lines = []


@pytest.fixture(scope="session")
def record():
    """Collects one pass/fail line per acceptance criterion."""

    def _record(line):
        _criterion_lines.append(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criterion_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in _criterion_lines:
        terminalreporter.write_line(line)
    artifact = config.rootpath / "acceptance_report.txt"
    artifact.write_text("\n".join(_criterion_lines) + "\n")
