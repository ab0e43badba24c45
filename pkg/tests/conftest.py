import pytest

from qsteer import _backend

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion exercised by the test")


@pytest.fixture(params=_backend.available())
def kernels(request):
    return _backend.load(request.param)


def pytest_runtest_logreport(report):
    if report.when != "call" and not report.failed:
        return
    marker = next((m for m in getattr(report, "_criterion", ()) if m), None)
    if marker is None:
        return
    number, title = marker
    ok = _criteria.get(number, (title, True))[1] and report.passed
    _criteria[number] = (title, ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    report._criterion = [tuple(m.args)] if m else []


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
