"""Shared test plumbing.

The acceptance tests record one verdict line each; pytest's terminal
summary echoes them so the criterion outcomes stay visible even when
stdout capture hides the in-test prints.
"""

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion_report():
    def record(line):
        print(line)
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
