"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", marker.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    number, title = props["criterion"]
    if report.when == "call" or report.failed or report.skipped:
        previous = _RESULTS.get(number, (title, "PASS"))[1]
        if report.failed:
            status = "FAIL"
        elif report.skipped:
            status = "SKIP" if previous == "PASS" else previous
        else:
            status = previous
        _RESULTS[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, status = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
    passed = sum(status == "PASS" for _, status in _RESULTS.values())
    terminalreporter.write_line(f"{passed}/{len(_RESULTS)} criteria pass")

