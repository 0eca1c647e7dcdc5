import math
import threading

import pytest
from hypothesis import given, strategies as st

from schurzeta.numeric import StirlingCache, binomial, factorial, falling_factorial, stirling2


@pytest.mark.parametrize("n, r, expected", [(5, 2, 10), (7, 0, 1), (0, 0, 1), (4, 7, 0), (4, -1, 0)])
def test_binomial_values(n, r, expected):
    assert binomial(n, r) == expected


@pytest.mark.parametrize("n", range(31))
def test_binomial_row_sums(n):
    assert sum(binomial(n, r) for r in range(n + 1)) == 2 ** n


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


@pytest.mark.parametrize("n, expected", [(0, 1), (4, 24), (10, 3628800)])
def test_factorial(n, expected):
    assert factorial(n) == expected


def test_stirling_base_cases():
    assert stirling2(0, 0) == 1
    assert all(stirling2(n, 0) == 0 for n in range(1, 12))
    assert all(stirling2(0, m) == 0 for m in range(1, 12))
    assert stirling2(3, 2) == 3


def test_stirling_matches_closed_form():
    # inclusion-exclusion formula as an independent oracle
    for n in range(12):
        for m in range(n + 1):
            closed = sum((-1) ** j * math.comb(m, j) * (m - j) ** n for j in range(m + 1)) // math.factorial(m)
            assert stirling2(n, m) == closed


@pytest.mark.parametrize("x", range(1, 9))
def test_stirling_falling_factorial_identity(x):
    for n in range(11):
        assert sum(stirling2(n, m) * falling_factorial(x, m) for m in range(n + 1)) == x ** n


@given(st.integers(0, 40), st.integers(0, 40))
def test_stirling_recurrence(n, m):
    if m >= 1:
        assert stirling2(n + 1, m) == stirling2(n, m - 1) + m * stirling2(n, m)


def test_stirling_cache_is_thread_safe():
    cache = StirlingCache()
    results = []

    def worker(n):
        results.append((n, cache(n, n // 2)))

    threads = [threading.Thread(target=worker, args=(n,)) for n in range(40, 80)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(v == stirling2(n, n // 2) for n, v in results)
