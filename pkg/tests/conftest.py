import pytest

_results: dict[int, list[tuple[str, str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
        if report.skipped and isinstance(report.longrepr, tuple):
            detail = report.longrepr[2].removeprefix("Skipped: ")
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _results.setdefault(marker.args[0], []).append((item.name, status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        rows = _results[n]
        status = "FAIL" if any(s == "FAIL" for _, s, _ in rows) else rows[0][1]
        details = " | ".join(f"{name}: {d}" if d else name for name, _, d in rows)
        terminalreporter.write_line(f"criterion {n}: {status}  {details}")
