import pytest

ACCEPTANCE_LINES: list[tuple[int, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion's outcome, then assert it."""

    def check(number: int, ok: bool, text: str):
        ACCEPTANCE_LINES.append((number, bool(ok), text))
        assert ok, f"criterion {number}: {text}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {text}")
