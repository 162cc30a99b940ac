import pytest

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    # a setup error also counts as a failed criterion
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _criteria[number] = (title, report.passed, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed, duration = _criteria[number]
        terminalreporter.write_line(
            f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}  [{duration:.2f}s]")
