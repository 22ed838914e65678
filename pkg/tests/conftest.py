import pytest

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record and print one PASS/FAIL line for an acceptance criterion."""

    def record(k: int, ok: bool, detail: str) -> bool:
        line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {detail}"
        _CRITERIA[k] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[k])
