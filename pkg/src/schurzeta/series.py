"""Truncated multivariate power series with exact rational coefficients.

Coefficients live in a dense numpy object array of shape
``(order_1 + 1, ..., order_c + 1)``; entry ``[e_1, ..., e_c]`` is the
coefficient of ``z_1^e_1 ... z_c^e_c``.  Every operation returns a series
whose orders say how far the result is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "MultiSeries",
    "SeriesError",
    "series_add",
    "series_mul",
    "one_minus_exp_neg",
    "exp_minus_one",
    "exp_series",
    "substitute",
    "unit_inverse",
    "divide_by_corner_product",
]

_ZERO = Fraction(0)


class SeriesError(ValueError):
    """Incompatible operands or a violated truncation/divisibility contract."""


def _fraction_array(shape: tuple[int, ...]) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(_ZERO)
    return arr


class MultiSeries:
    __slots__ = ("variables", "orders", "coeffs")

    def __init__(self, variables: Sequence[str], orders: Sequence[int], coeffs: np.ndarray | None = None):
        self.variables = tuple(variables)
        self.orders = tuple(int(o) for o in orders)
        if len(self.variables) != len(self.orders):
            raise SeriesError("one order per variable required")
        if any(o < 0 for o in self.orders):
            raise SeriesError(f"orders must be non-negative: {self.orders}")
        shape = tuple(o + 1 for o in self.orders)
        if coeffs is None:
            coeffs = _fraction_array(shape)
        else:
            coeffs = np.asarray(coeffs, dtype=object)
            if coeffs.shape != shape:
                raise SeriesError(f"coefficient array has shape {coeffs.shape}, expected {shape}")
        self.coeffs = coeffs

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dict(cls, variables, orders, terms: Mapping[tuple[int, ...], object]) -> "MultiSeries":
        s = cls(variables, orders)
        for exp, c in terms.items():
            exp = tuple(exp)
            if all(e <= o for e, o in zip(exp, s.orders)):
                s.coeffs[exp] = s.coeffs[exp] + Fraction(c)
        return s

    @classmethod
    def univariate(cls, coeffs: Sequence[object], var: str = "z") -> "MultiSeries":
        arr = np.array([Fraction(c) for c in coeffs] or [_ZERO], dtype=object)
        return cls((var,), (len(arr) - 1,), arr)

    @classmethod
    def constant(cls, variables, orders, value=1) -> "MultiSeries":
        s = cls(variables, orders)
        s.coeffs[(0,) * len(s.orders)] = Fraction(value)
        return s

    # -- access -----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __getitem__(self, exp) -> Fraction:
        if isinstance(exp, int):
            exp = (exp,)
        exp = tuple(exp)
        if any(e < 0 for e in exp) or any(e > o for e, o in zip(exp, self.orders)):
            return _ZERO
        return self.coeffs[exp]

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """Non-zero terms in lexicographic exponent order."""
        for exp in np.ndindex(*self.coeffs.shape):
            c = self.coeffs[exp]
            if c:
                yield tuple(int(e) for e in exp), c

    def to_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.items())

    def truncate(self, orders: Sequence[int]) -> "MultiSeries":
        orders = tuple(min(a, b) for a, b in zip(orders, self.orders))
        sl = tuple(slice(0, o + 1) for o in orders)
        return MultiSeries(self.variables, orders, self.coeffs[sl].copy())

    def copy(self) -> "MultiSeries":
        return MultiSeries(self.variables, self.orders, self.coeffs.copy())

    # -- arithmetic -------------------------------------------------------

    def _check_vars(self, other: "MultiSeries"):
        if self.variables != other.variables:
            raise SeriesError(f"variable mismatch: {self.variables} vs {other.variables}")

    def __add__(self, other):
        if not isinstance(other, MultiSeries):
            out = self.copy()
            idx = (0,) * self.nvars
            out.coeffs[idx] = out.coeffs[idx] + Fraction(other)
            return out
        self._check_vars(other)
        orders = tuple(min(a, b) for a, b in zip(self.orders, other.orders))
        sl = tuple(slice(0, o + 1) for o in orders)
        return MultiSeries(self.variables, orders, self.coeffs[sl] + other.coeffs[sl])

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.variables, self.orders, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            f = Fraction(other)
            return MultiSeries(self.variables, self.orders, self.coeffs * f)
        self._check_vars(other)
        orders = tuple(min(a, b) for a, b in zip(self.orders, other.orders))
        out = _fraction_array(tuple(o + 1 for o in orders))
        for exp, c in self.truncate(orders).items():
            dst = tuple(slice(e, o + 1) for e, o in zip(exp, orders))
            src = tuple(slice(0, o + 1 - e) for e, o in zip(exp, orders))
            out[dst] += c * other.coeffs[src]
        return MultiSeries(self.variables, orders, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.variables == other.variables and self.orders == other.orders
                and bool(np.all(self.coeffs == other.coeffs)))

    def __repr__(self):
        terms = ", ".join(f"{exp}: {c}" for exp, c in self.items())
        return f"MultiSeries({self.variables}, orders={self.orders}, {{{terms}}})"

    def euler_derivative(self, axis: int) -> "MultiSeries":
        """z_i d/dz_i, i.e. every coefficient times its exponent along ``axis``."""
        shape = [1] * self.nvars
        shape[axis] = self.orders[axis] + 1
        weights = np.array([Fraction(e) for e in range(self.orders[axis] + 1)], dtype=object).reshape(shape)
        return MultiSeries(self.variables, self.orders, self.coeffs * weights)

    def along_axis(self, axis: int, matrix: np.ndarray, new_order: int) -> "MultiSeries":
        """Apply a linear map on the exponent index of one variable.

        ``matrix[e, j]`` is the contribution of exponent ``e`` to exponent ``j``.
        """
        moved = np.tensordot(self.coeffs, matrix, axes=([axis], [0]))
        moved = np.moveaxis(moved, -1, axis)
        orders = list(self.orders)
        orders[axis] = new_order
        return MultiSeries(self.variables, orders, moved)


def series_add(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a + b


def series_mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a * b


# ---------------------------------------------------------------------------
# univariate building blocks

def exp_series(order: int, scale: int = 1, var: str = "z") -> MultiSeries:
    """exp(scale * z) up to z^order."""
    return MultiSeries.univariate([Fraction(scale ** n, factorial(n)) for n in range(order + 1)], var)


def one_minus_exp_neg(order: int, var: str = "z") -> MultiSeries:
    """1 - exp(-z) = sum_{n>=1} (-1)^(n+1) z^n / n!."""
    if order < 0:
        raise SeriesError("order must be >= 0")
    return MultiSeries.univariate([_ZERO] + [Fraction((-1) ** (n + 1), factorial(n)) for n in range(1, order + 1)], var)


def exp_minus_one(order: int, var: str = "z") -> MultiSeries:
    """exp(z) - 1."""
    if order < 0:
        raise SeriesError("order must be >= 0")
    return MultiSeries.univariate([_ZERO] + [Fraction(1, factorial(n)) for n in range(1, order + 1)], var)


def unit_inverse(u: Sequence[Fraction], order: int) -> list[Fraction]:
    """Coefficients of 1/u up to z^order; needs u[0] != 0."""
    u = [Fraction(c) for c in u]
    if not u or u[0] == 0:
        raise SeriesError("unit inverse needs a non-zero constant term")
    inv0 = 1 / u[0]
    out = [inv0]
    for n in range(1, order + 1):
        acc = _ZERO
        for j in range(1, min(n, len(u) - 1) + 1):
            acc += u[j] * out[n - j]
        out.append(-inv0 * acc)
    return out


def _univariate_coeffs(s: MultiSeries) -> list[Fraction]:
    if s.nvars != 1:
        raise SeriesError("expected a univariate series")
    return list(s.coeffs)


def _toeplitz(g: Sequence[Fraction], order: int) -> np.ndarray:
    # matrix[e, j] = g[j - e]: multiplication by g along one axis
    mat = _fraction_array((order + 1, order + 1))
    for e in range(order + 1):
        for j in range(e, min(order, e + len(g) - 1) + 1):
            mat[e, j] = g[j - e]
    return mat


def _power_matrix(g: Sequence[Fraction], order: int) -> np.ndarray:
    # matrix[e, j] = [z^j] g(z)^e, for g with zero constant term
    mat = _fraction_array((order + 1, order + 1))
    power = [Fraction(1)] + [_ZERO] * order
    for e in range(order + 1):
        mat[e, :] = power
        nxt = [_ZERO] * (order + 1)
        for i, a in enumerate(power):
            if a:
                for j in range(1, min(len(g) - 1, order - i) + 1):
                    nxt[i + j] += a * g[j]
        power = nxt
    return mat


def substitute(outer: MultiSeries, inners: Sequence[MultiSeries]) -> MultiSeries:
    """Replace each variable z_i of ``outer`` by the univariate series ``inners[i](z_i)``.

    Inner series must have zero constant term; the result is exact up to
    ``min(outer order, inner order)`` in every variable.
    """
    if len(inners) != outer.nvars:
        raise SeriesError(f"need {outer.nvars} inner series, got {len(inners)}")
    result = outer
    for axis, inner in enumerate(inners):
        g = _univariate_coeffs(inner)
        if g[0] != 0:
            raise SeriesError(f"inner series for {outer.variables[axis]} has a non-zero constant term")
        order = min(result.orders[axis], inner.orders[0])
        result = result.truncate([order if i == axis else o for i, o in enumerate(result.orders)])
        result = result.along_axis(axis, _power_matrix(g, order), order)
    return result


def divide_by_corner_product(numerator: MultiSeries, denominators: Sequence[MultiSeries]) -> MultiSeries:
    """Divide by prod_i d_i(z_i) where each d_i is z_i times a unit.

    The numerator must vanish on every coordinate hyperplane (each monomial
    carries every variable).  Orders drop by one per variable.
    """
    if len(denominators) != numerator.nvars:
        raise SeriesError(f"need {numerator.nvars} denominators, got {len(denominators)}")
    coeffs = numerator.coeffs
    for axis, name in enumerate(numerator.variables):
        face = np.asarray(np.take(coeffs, 0, axis=axis), dtype=object)
        if any(c != 0 for c in face.flat):
            raise SeriesError(f"numerator is not divisible by {name}")
        if numerator.orders[axis] < 1:
            raise SeriesError(f"order of {name} too small to divide")
    shifted = coeffs[tuple(slice(1, None) for _ in numerator.orders)]
    result = MultiSeries(numerator.variables, [o - 1 for o in numerator.orders], shifted.copy())
    for axis, den in enumerate(denominators):
        d = _univariate_coeffs(den)
        if d[0] != 0 or len(d) < 2 or d[1] == 0:
            raise SeriesError(f"denominator for {numerator.variables[axis]} is not z times a unit")
        order = min(result.orders[axis], len(d) - 2)
        inv = unit_inverse(d[1:], order)
        result = result.truncate([order if i == axis else o for i, o in enumerate(result.orders)])
        result = result.along_axis(axis, _toeplitz(inv, order), order)
    return result
