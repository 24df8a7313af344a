import pytest

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    ident, text = marker.args
    ok = rep.passed if rep.when == "call" else False
    prev = _ACCEPTANCE.get(ident, (True, text))[0]
    _ACCEPTANCE[ident] = (prev and ok, text)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for ident in sorted(_ACCEPTANCE):
        ok, text = _ACCEPTANCE[ident]
        terminalreporter.write_line(f"{ident} {'PASS' if ok else 'FAIL'}  {text}")
