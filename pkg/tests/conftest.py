import re

_outcomes = {}
_durations = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    _durations[k] = _durations.get(k, 0.0) + report.duration
    if report.when == "call" or report.outcome != "passed":
        # a failure in setup or teardown must not be masked by a passing call
        if _outcomes.get(k) != "FAIL":
            _outcomes[k] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for k in sorted(_outcomes):
        terminalreporter.write_line(
            f"criterion {k:2d} {_outcomes[k]:4s} {CRITERIA.get(k, '')} ({_durations[k]:.1f} s)")
