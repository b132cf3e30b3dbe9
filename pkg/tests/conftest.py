import time

import pytest

SUITE_BUDGET_S = 30.0
_results: dict[int, dict] = {}
_start = [0.0]


def pytest_sessionstart(session):
    _start[0] = time.perf_counter()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _results.setdefault(number, {"title": title, "passed": True})
    if rep.failed or (rep.when == "call" and rep.skipped):
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    elapsed = time.perf_counter() - _start[0]
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        ok = entry["passed"]
        note = ""
        if number == 9:
            ok = ok and elapsed < SUITE_BUDGET_S
            note = f" (session runtime {elapsed:.1f} s, budget {SUITE_BUDGET_S:.0f} s)"
        tr.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {entry['title']}{note}")
