import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict[int, tuple[str, bool]] = {}
_PATTERN = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n = int(m.group(1))
        ok = report.outcome == "passed" and _CRITERIA.get(n, ("", True))[1]
        _CRITERIA[n] = (m.group(2).replace("_", " "), ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        name, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {name}")
