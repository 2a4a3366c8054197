import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "series identity suite",
    2: "worked examples as witness sets",
    3: "Durfee table at n = 10",
    4: "oracle equivalence of every partition theorem",
    5: "fishhook bijections",
    6: "inequality between embedding tables",
    7: "fixed-dissection generating functions",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion checked by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number = getattr(report, "criterion", None)
    if number is not None:
        _outcomes.setdefault(number, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        results = _outcomes.get(number)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number} ({title}): {status}")
