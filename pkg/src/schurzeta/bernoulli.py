"""Schur type poly-Bernoulli numbers and the identities relating them.

Kind B is read off ``Li(1-e^{-z}) / prod(1-e^{-z_c})`` and kind C off
``Li(1-e^{-z}) / prod(e^{z_c}-1)``; the coefficient of ``z^m`` times
``prod m_c!`` is the table entry.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .numeric import binomial, stirling2
from .polylog import corner_variables, schur_polylog_series
from .reports import IdentityReport, format_fraction
from .series import divide_by_corner_product, exp_minus_one, one_minus_exp_neg, substitute
from .shapes import Partition, ShapeError, Tableau, _corner_bound_list, _ssyt_flat

__all__ = [
    "Kind",
    "BernoulliTable",
    "bernoulli_table",
    "b_from_c",
    "c_from_b",
    "hook_b_stirling",
    "hook_b_stirling_table",
    "decrement_corners",
    "IdentityReport",
    "verify_binomial_relations",
    "verify_hook_recurrence",
    "verify_hook_bc_relation",
    "verify_hook_stirling",
    "format_fraction",
]


class Kind(str, Enum):
    B = "B"
    C = "C"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BernoulliTable:
    shape: Partition
    k: Tableau
    kind: Kind
    orders: tuple[int, ...]
    values: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))
        if self.values.shape != tuple(o + 1 for o in self.orders):
            raise ValueError("value array does not cover the order box")

    def __getitem__(self, m) -> Fraction:
        """Entry at exponent vector ``m``; any negative index gives 0."""
        if isinstance(m, int):
            m = (m,)
        m = tuple(m)
        if len(m) != len(self.orders):
            raise KeyError(m)
        if any(e < 0 for e in m):
            return Fraction(0)
        if any(e > o for e, o in zip(m, self.orders)):
            raise KeyError(f"{m} is outside the computed orders {self.orders}")
        return self.values[m]

    def __eq__(self, other):
        if not isinstance(other, BernoulliTable):
            return NotImplemented
        return (self.shape == other.shape and self.k == other.k and self.kind == other.kind
                and self.orders == other.orders and bool(np.all(self.values == other.values)))

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """All entries, exponent vectors in lexicographic order."""
        for m in np.ndindex(*self.values.shape):
            yield tuple(int(e) for e in m), self.values[m]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"m_{i + 1}" for i in range(len(self.orders))] + ["numerator", "denominator"])
        for m, v in self.items():
            writer.writerow(list(m) + [v.numerator, v.denominator])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "shape": list(self.shape.parts),
            "k": [list(r) for r in self.k.rows],
            "kind": self.kind.value,
            "orders": list(self.orders),
            "corners": [list(c) for c in self.shape.corners],
            "values": [{"m": list(m), "value": format_fraction(v)} for m, v in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"), sort_keys=True)


def bernoulli_table(shape: Partition, k: Tableau, orders, kind: Kind | str = Kind.B) -> BernoulliTable:
    kind = Kind(kind)
    bounds = _corner_bound_list(shape, orders)
    if any(o < 0 for o in bounds):
        raise ValueError(f"orders must be non-negative, got {bounds}")
    li = schur_polylog_series(shape, k, [o + 1 for o in bounds])
    names = corner_variables(shape)
    inner = [one_minus_exp_neg(o + 1, v) for o, v in zip(bounds, names)]
    composed = substitute(li, inner)
    den = inner if kind is Kind.B else [exp_minus_one(o + 1, v) for o, v in zip(bounds, names)]
    quotient = divide_by_corner_product(composed, den)
    values = quotient.coeffs.copy()
    for m in np.ndindex(*values.shape):
        scale = 1
        for e in m:
            scale *= factorial(e)
        values[m] = values[m] * scale
    return BernoulliTable(shape, k, kind, bounds, values)


def _binomial_transform(values: np.ndarray, signed: bool) -> np.ndarray:
    out = values
    for axis, n in enumerate(values.shape):
        mat = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                c = binomial(i, j)
                mat[i, j] = -c if signed and (i - j) % 2 else c
        # new[.., i, ..] = sum_j mat[i, j] old[.., j, ..]
        out = np.moveaxis(np.tensordot(mat, out, axes=([1], [axis])), 0, axis)
    return out


def b_from_c(c_table: BernoulliTable) -> BernoulliTable:
    """B_m = sum_{n <= m} prod binomial(m_i, n_i) C_n."""
    if c_table.kind is not Kind.C:
        raise ValueError("b_from_c needs a kind C table")
    return BernoulliTable(c_table.shape, c_table.k, Kind.B, c_table.orders,
                          _binomial_transform(c_table.values, signed=False))


def c_from_b(b_table: BernoulliTable) -> BernoulliTable:
    """C_m = sum_{n <= m} (-1)^{|m|-|n|} prod binomial(m_i, n_i) B_n."""
    if b_table.kind is not Kind.B:
        raise ValueError("c_from_b needs a kind B table")
    return BernoulliTable(b_table.shape, b_table.k, Kind.C, b_table.orders,
                          _binomial_transform(b_table.values, signed=True))


# ---------------------------------------------------------------------------
# hooks

def _check_hook(shape: Partition) -> tuple[int, int]:
    parts = shape.parts
    if not shape.is_hook() or len(shape.corners) != 2:
        raise ShapeError(f"{parts} is not a hook (h, 1^(l-1)) with h, l >= 2")
    return parts[0], len(parts)


def hook_shape(h: int, ell: int) -> Partition:
    if h < 2 or ell < 2:
        raise ShapeError(f"hook needs h, l >= 2, got ({h}, {ell})")
    return Partition((h,) + (1,) * (ell - 1))


def decrement_corners(k: Tableau, row: bool = True, column: bool = True) -> Tableau:
    """Lower k at the row corner (1, h) and/or the column corner (l, 1) of a hook."""
    h, ell = _check_hook(k.shape)
    out = k
    if row:
        out = out.replace((1, h), out[(1, h)] - 1)
    if column:
        out = out.replace((ell, 1), out[(ell, 1)] - 1)
    return out


def _stirling_factor(n: int, a: int) -> int:
    # (-1)^(a+n) (a-1)! S(n, a-1)
    s = stirling2(n, a - 1)
    if not s:
        return 0
    sign = -1 if (a + n) % 2 else 1
    return sign * factorial(a - 1) * s


def _hook_weights(shape: Partition, k: Tableau, n_max: int, m_max: int) -> dict[tuple[int, int], Fraction]:
    # total of 1/prod m^k over hook tableaux, grouped by the two corner entries
    ks = tuple(int(v) for v in k.values())
    groups: dict[tuple[int, int], list] = {}
    for flat in _ssyt_flat(shape.parts, (n_max + 1, m_max + 1)):
        a, b = flat[shape.parts[0] - 1], flat[-1]
        num = den = 1
        for e, w in zip(flat, ks):
            if w > 0:
                den *= e ** w
            elif w < 0:
                num *= e ** -w
        groups.setdefault((a, b), []).append(Fraction(num, den))
    return {key: sum(vals, Fraction(0)) for key, vals in groups.items()}


def hook_b_stirling_table(h: int, ell: int, k: Tableau, orders: Sequence[int]) -> np.ndarray:
    """All B_{n,m}, n <= orders[0], m <= orders[1], from the Stirling-number formula."""
    shape = hook_shape(h, ell)
    if k.shape != shape:
        raise ShapeError(f"weight tableau shape {k.shape.parts} does not match hook {shape.parts}")
    n_max, m_max = (int(o) for o in orders)
    weights = _hook_weights(shape, k, n_max, m_max)
    out = np.empty((n_max + 1, m_max + 1), dtype=object)
    out.fill(Fraction(0))
    for (a, b), w in weights.items():
        fa = [_stirling_factor(n, a) for n in range(n_max + 1)]
        fb = [_stirling_factor(m, b) for m in range(m_max + 1)]
        for n, x in enumerate(fa):
            if x:
                for m, y in enumerate(fb):
                    if y:
                        out[n, m] += w * (x * y)
    return out


def hook_b_stirling(h: int, ell: int, k: Tableau, n: int, m: int) -> Fraction:
    """B_{n,m} of the hook (h, 1^(l-1)) as a finite Stirling-number sum.

    Sums over hook tableaux with row corner entry a <= n+1 and column corner
    entry b <= m+1 the quantity
    ``(-1)^(a+b+n+m) (a-1)! (b-1)! S(n, a-1) S(m, b-1) / prod m_ij^k_ij``.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    shape = hook_shape(h, ell)
    if k.shape != shape:
        raise ShapeError(f"weight tableau shape {k.shape.parts} does not match hook {shape.parts}")
    total = Fraction(0)
    for (a, b), w in _hook_weights(shape, k, n, m).items():
        x = _stirling_factor(n, a) * _stirling_factor(m, b)
        if x:
            total += w * x
    return total


# ---------------------------------------------------------------------------
# identity checks

def _params(shape: Partition, k: Tableau, orders) -> dict:
    return {"shape": list(shape.parts), "k": [list(r) for r in k.rows], "orders": list(orders)}


def verify_binomial_relations(shape: Partition, k: Tableau, orders) -> IdentityReport:
    """B from C, C from B and both round trips, entry by entry."""
    b = bernoulli_table(shape, k, orders, Kind.B)
    c = bernoulli_table(shape, k, orders, Kind.C)
    report = IdentityReport("bc-binomial", _params(shape, k, b.orders))
    for which, lhs, rhs in (("B", b, b_from_c(c)), ("C", c, c_from_b(b)),
                            ("B roundtrip", b, b_from_c(c_from_b(b))),
                            ("C roundtrip", c, c_from_b(b_from_c(c)))):
        for m, v in lhs.items():
            report.record((which,) + m, v, rhs[m])
    return report


def verify_hook_recurrence(shape: Partition, k: Tableau, orders) -> IdentityReport:
    """B^{k-}_{n,m} against the binomial combination of B^{k} entries."""
    _check_hook(shape)
    n_max, m_max = _corner_bound_list(shape, orders)
    b = bernoulli_table(shape, k, (n_max, m_max), Kind.B)
    bm = bernoulli_table(shape, decrement_corners(k), (n_max, m_max), Kind.B)
    report = IdentityReport("hook-recurrence", _params(shape, k, (n_max, m_max)))
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            rhs = b[n, m]
            rhs += sum((binomial(m, j) * b[n, j + 1] for j in range(m)), Fraction(0))
            rhs += sum((binomial(n, i) * b[i + 1, m] for i in range(n)), Fraction(0))
            rhs += sum((binomial(n, i) * binomial(m, j) * b[i + 1, j + 1]
                        for i in range(n) for j in range(m)), Fraction(0))
            report.record((n, m), bm[n, m], rhs)
    return report


def verify_hook_bc_relation(shape: Partition, k: Tableau, orders) -> IdentityReport:
    """B_{n,m} = C_{n,m} + C^{row-}_{n-1,m} + C^{col-}_{n,m-1} + C^{both-}_{n-1,m-1}."""
    h, ell = _check_hook(shape)
    if k[(1, h)] == 1 or k[(ell, 1)] == 1:
        raise ValueError("the B-C relation needs corner weights different from 1")
    n_max, m_max = _corner_bound_list(shape, orders)
    box = (n_max, m_max)
    b = bernoulli_table(shape, k, box, Kind.B)
    c = bernoulli_table(shape, k, box, Kind.C)
    c_row = bernoulli_table(shape, decrement_corners(k, True, False), box, Kind.C)
    c_col = bernoulli_table(shape, decrement_corners(k, False, True), box, Kind.C)
    c_both = bernoulli_table(shape, decrement_corners(k), box, Kind.C)
    report = IdentityReport("hook-bc-relation", _params(shape, k, box))
    for n, m in product(range(n_max + 1), range(m_max + 1)):
        rhs = c[n, m] + c_row[n - 1, m] + c_col[n, m - 1] + c_both[n - 1, m - 1]
        report.record((n, m), b[n, m], rhs)
    return report


def verify_hook_stirling(shape: Partition, k: Tableau, orders) -> IdentityReport:
    h, ell = _check_hook(shape)
    n_max, m_max = _corner_bound_list(shape, orders)
    b = bernoulli_table(shape, k, (n_max, m_max), Kind.B)
    st = hook_b_stirling_table(h, ell, k, (n_max, m_max))
    report = IdentityReport("stirling-hook", _params(shape, k, (n_max, m_max)))
    for n, m in product(range(n_max + 1), range(m_max + 1)):
        report.record((n, m), st[n, m], b[n, m])
    return report
