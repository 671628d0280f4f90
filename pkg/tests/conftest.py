import pytest

# criterion number -> (label, passed, seconds)
_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when == "teardown" and report.passed:
        return
    number, label = marker.args
    entry = _CRITERIA.setdefault(number, [label, True, 0.0])
    if report.failed or report.skipped:
        entry[1] = False
    if report.when == "call":
        entry[2] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        label, ok, secs = _CRITERIA[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  {label}  ({secs:.1f} s)"
        )
