import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record and print one PASS/FAIL line for an acceptance criterion, then assert it."""

    def report(number, ok, summary):
        line = f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'} {summary}"
        print(line)
        _ACCEPTANCE_LINES.append(line)
        assert ok, summary

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
