import pytest

# (criterion number, passed, summary) recorded by test_acceptance.py
ACCEPTANCE_LINES = {}


@pytest.fixture
def record_criterion():
    def record(number, passed, summary):
        ACCEPTANCE_LINES[number] = (bool(passed), summary)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        passed, summary = ACCEPTANCE_LINES[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}")
