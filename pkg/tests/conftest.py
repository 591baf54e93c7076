from hypothesis import HealthCheck, settings

settings.register_profile("exact", max_examples=200, derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")

_criteria: list[str] = []


def pytest_runtest_logreport(report):
    if report.when == "call":
        _criteria.extend(line for line in report.capstdout.splitlines()
                         if line.startswith("criterion "))


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
