import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    """Record one 'criterion k: PASS|FAIL ...' line; echoed now and again in the terminal summary."""

    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
