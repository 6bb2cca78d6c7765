"""Shared pytest wiring for the suite.

The acceptance tests each record one ``[PASS]``/``[FAIL]`` verdict line;
besides printing it inline, the hook below echoes the collected lines in
a dedicated terminal section so the run log always ends with the
ten-line criterion table, whatever the capture settings.
"""

import time

import pytest


class CriterionLog:
    """Accumulates one verdict line per acceptance criterion."""

    def __init__(self):
        self.lines = []
        self.session_start = time.perf_counter()

    def record(self, number: int, label: str, passed: bool) -> bool:
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {label}"
        self.lines.append((number, line))
        print(line)
        return passed


_LOG = CriterionLog()


@pytest.fixture(scope="session")
def criterion_log():
    return _LOG


def pytest_sessionstart(session):
    _LOG.session_start = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if _LOG.lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_LOG.lines):
            terminalreporter.write_line(line)
