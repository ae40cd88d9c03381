import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_RESULTS_KEY = pytest.StashKey[dict]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    results = item.config.stash.setdefault(_RESULTS_KEY, {})
    detail = dict(report.user_properties).get("detail", "")
    results[marker.args[0]] = (marker.args[1], report.outcome, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        title, outcome, detail = results[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{status}] {num:>2}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
