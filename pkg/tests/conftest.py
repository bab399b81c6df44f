"""Collects outcomes of tests tagged with ``@pytest.mark.criterion`` and prints
one PASS/FAIL line per criterion at the end of the run."""

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    number, title = props["criterion"]
    ok = _results.get(number, (True, title))[0]
    if report.failed or (report.when == "call" and report.skipped):
        ok = False
    _results[number] = (ok, title)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        ok, title = _results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
