"""Exact integer helpers shared by the rest of the package.

Rationals are plain :class:`fractions.Fraction` values, which are always
reduced with a positive denominator.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction

__all__ = [
    "Fraction",
    "binomial",
    "factorial",
    "falling_factorial",
    "stirling2",
    "StirlingCache",
]


def binomial(n: int, r: int) -> int:
    """C(n, r), zero outside 0 <= r <= n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial needs n >= 0, got {n}")
    return math.factorial(n)


def falling_factorial(x: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= x - i
    return out


class StirlingCache:
    """Triangular table of Stirling numbers of the second kind.

    Rows are appended under a lock and never modified afterwards, so a row
    handed out by :meth:`row` can be read from any thread.
    """

    def __init__(self):
        self._rows: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()

    def _grow(self, n: int) -> None:
        with self._lock:
            rows = self._rows
            while len(rows) <= n:
                prev = rows[-1]
                k = len(rows)  # index of the row being built
                # S(k, m) = S(k-1, m-1) + m S(k-1, m); S(k, 0) = 0 for k >= 1
                new = [0] * (k + 1)
                for m in range(1, k + 1):
                    left = prev[m - 1]
                    right = prev[m] if m < len(prev) else 0
                    new[m] = left + m * right
                rows.append(tuple(new))

    def row(self, n: int) -> tuple[int, ...]:
        if n >= len(self._rows):
            self._grow(n)
        return self._rows[n]

    def __call__(self, n: int, m: int) -> int:
        if n < 0 or m < 0:
            raise ValueError(f"stirling2 needs n, m >= 0, got ({n}, {m})")
        if m > n:
            return 0
        return self.row(n)[m]


_STIRLING = StirlingCache()


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind {n over m}."""
    return _STIRLING(n, m)
