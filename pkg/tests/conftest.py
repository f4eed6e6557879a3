"""Shared pytest configuration: a per-criterion verdict line for the acceptance suite."""

import re

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CRITERIA = {
    1: "subgraph counts",
    2: "closeness inexpressibility",
    3: "harmonic",
    4: "eigenvector values and bvp",
    5: "betweenness",
    6: "local PageRank",
    7: "counterexample measures",
    8: "synthesis round trips",
    9: "oracle equivalence",
    10: "measure hygiene",
}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
_outcomes: dict = {}


def pytest_runtest_logreport(report):
    match = _PATTERN.search(report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    failed = report.failed or (report.when == "call" and report.skipped)
    if failed:
        _outcomes[number] = False
    else:
        _outcomes.setdefault(number, True)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        if number not in _outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if _outcomes[number] else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} ({title}): {status}")
