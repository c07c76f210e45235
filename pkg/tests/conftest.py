"""Shared pytest wiring: surface the acceptance-criterion verdict lines.

The acceptance tests each print one ``criterion N: PASS/FAIL`` line, but
pytest captures stdout of passing tests; this hook repeats the collected
lines in the terminal summary so a plain ``pytest -v`` shows all ten.
"""

from __future__ import annotations

import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "_SUMMARY_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
