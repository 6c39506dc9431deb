import pytest

_verdicts = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, text): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when not in ("setup", "call"):
        return
    key, text = mark.args
    if report.when == "setup" and report.passed:
        return
    ok = _verdicts.get(key, (text, True))[1] and report.passed
    _verdicts[key] = (text, ok)


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_verdicts, key=lambda k: int(k[2:])):
        text, ok = _verdicts[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {text}")
