import re

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one test per acceptance criterion")


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        prev = _results.get(key)
        if prev is None or prev[0] == "PASS":
            _results[key] = ("PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), (status, duration) in sorted(_results.items()):
        terminalreporter.write_line(f"criterion {num} {name.replace('_', ' ')}: {status} ({duration:.2f}s)")
