import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_TITLES = {
    1: "Phi classification counts",
    2: "Phi stable under raising the entry bound",
    3: "unique decomposition on random ring elements",
    4: "lamplighter agrees with wreath-product oracle",
    5: "presentation relators evaluate to identity",
    6: "Cayley graph / DL vertex identification",
    7: "Reidemeister numbers: det vs SNF vs brute force",
    8: "Gamma_3(2) order-three special cases and witnesses",
    9: "R_infinity certificates for random automorphisms",
    10: "automorphism calculus laws",
}

_results: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test belongs to acceptance criterion n")


def pytest_runtest_logreport(report):
    num = getattr(report, "acceptance_number", None)
    if num is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(num, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report.acceptance_number = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_TITLES):
        outcomes = _results.get(num)
        if outcomes is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {num:2d} {ACCEPTANCE_TITLES[num]}: {status}")
