import time

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE: dict[int, str] = {}
SUITE_BUDGET = 60.0
_START = [0.0]


def pytest_sessionstart(session):
    _START[0] = time.perf_counter()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is None or rep.when not in ("setup", "call"):
        return
    n = crit.args[0]
    if rep.failed:
        ACCEPTANCE[n] = "FAIL"
    elif rep.when == "call" and ACCEPTANCE.get(n) != "FAIL":
        ACCEPTANCE[n] = "PASS"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _START[0]
    if 10 in ACCEPTANCE and elapsed >= SUITE_BUDGET:
        ACCEPTANCE[10] = "FAIL"
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n:>2}: {ACCEPTANCE[n]}")
    terminalreporter.write_line(f"session time {elapsed:.1f} s (budget {SUITE_BUDGET:.0f} s)")
