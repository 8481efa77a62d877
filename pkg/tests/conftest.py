import pytest

CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the terminal summary."""

    def register(number, label):
        CRITERIA[number] = [label, "FAIL"]
        request.node.criterion_number = number

    return register


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    number = getattr(item, "criterion_number", None)
    if number is not None and report.when == "call":
        if hasattr(report, "wasxfail"):
            CRITERIA[number][1] = f"FAIL (known, {report.wasxfail.removeprefix('reason: ')})"
        else:
            CRITERIA[number][1] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        label, status = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}: {label}")
