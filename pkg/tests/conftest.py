import contextlib

import pytest

_VERDICTS = {}


@pytest.fixture
def criterion():
    """Record a PASS/FAIL line for one acceptance criterion."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        try:
            yield
        except BaseException:
            _VERDICTS[number] = f"criterion {number}: FAIL  {title}"
            print(_VERDICTS[number])
            raise
        _VERDICTS[number] = f"criterion {number}: PASS  {title}"
        print(_VERDICTS[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_VERDICTS):
            terminalreporter.write_line(_VERDICTS[n])
