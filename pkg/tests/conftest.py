import time
from contextlib import contextmanager

import pytest

CRITERIA: dict[int, tuple[str, str, float]] = {}


@contextmanager
def _criterion(number: int, title: str, limit: float | None = None):
    """Record a pass/fail line for an acceptance criterion, including its time budget."""
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        CRITERIA[number] = ("FAIL", title, time.perf_counter() - start)
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        CRITERIA[number] = ("FAIL", f"{title} (over the {limit:g} s budget)", elapsed)
        pytest.fail(f"criterion {number} took {elapsed:.3f} s, budget {limit:g} s")
    CRITERIA[number] = ("PASS", title, elapsed)


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        status, title, elapsed = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}  [{elapsed:.3f} s]")
