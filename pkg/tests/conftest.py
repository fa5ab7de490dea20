import pytest
from hypothesis import settings

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

_ACCEPTANCE: list[tuple[int, bool, str]] = []


@pytest.fixture
def acceptance_log():
    """Collects one summary line per acceptance criterion."""
    def log(number: int, passed: bool, text: str) -> None:
        _ACCEPTANCE.append((number, passed, text))
    return log


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number, passed, text in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {text}")
