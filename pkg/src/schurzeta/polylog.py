"""Schur type polylogarithms, exact and numeric, plus the classical pieces.

``Li^lambda_k(z) = sum over SSYT (m_ij) of prod_corners z_c^{m_c} / prod m_ij^{k_ij}``
with one variable per corner of the shape.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .quadrature import PanelRule
from .series import MultiSeries
from .shapes import Partition, Tableau, _corner_bound_list, _corners, _cells, _ssyt_flat
from .transfer import EPS, partial_sums, power_weights, skew_tail_bracket, strip_graph
from .values import Method, NumericDomainError, ValueWithBound

if TYPE_CHECKING:
    from .reports import IdentityReport

__all__ = [
    "schur_polylog_series",
    "schur_polylog_eval",
    "schur_polylog_batch",
    "schur_polylog_corner_grid",
    "multiple_polylog_eval",
    "polylog_at_one_minus_exp",
    "polylog_one_minus_exp_grid",
    "corner_variables",
    "admissible",
    "verify_derivative_lemma",
    "verify_leading_coefficient",
]


def corner_variables(shape: Partition) -> tuple[str, ...]:
    return tuple(f"z{r}{c}" for r, c in shape.corners)


def _weights(k: Tableau, shape: Partition) -> tuple[int, ...]:
    if k.shape != shape:
        raise NumericDomainError(f"weight tableau has shape {k.shape.parts}, expected {shape.parts}")
    return tuple(int(v) for v in k.values())


def admissible(shape: Partition, k) -> bool:
    """Entries >= 1 off the corners and > 1 on them."""
    values = k.values() if isinstance(k, Tableau) else tuple(k)
    corner_set = set(shape.corners)
    return all(v > 1 if c in corner_set else v >= 1 for c, v in zip(shape.cells, values))


def schur_polylog_series(shape: Partition, k: Tableau, orders) -> MultiSeries:
    """Exact truncation: all monomials whose corner exponents stay within ``orders``.

    Weights may be any integers (non-positive ones just put powers of m in
    the numerator).
    """
    bounds = _corner_bound_list(shape, orders)
    if any(b < 0 for b in bounds):
        raise ValueError(f"orders must be non-negative, got {bounds}")
    ks = _weights(k, shape)
    series = MultiSeries(corner_variables(shape), bounds)
    if any(b < 1 for b in bounds):
        return series
    cells = shape.cells
    corner_pos = [cells.index(c) for c in shape.corners]
    # powers m^|k| cached per (m, k)
    pw: dict[tuple[int, int], int] = {}
    acc: dict[tuple[int, ...], list[int]] = {}
    for flat in _ssyt_flat(shape.parts, bounds):
        num = den = 1
        for m, w in zip(flat, ks):
            key = (m, abs(w))
            p = pw.get(key)
            if p is None:
                p = pw[key] = m ** abs(w)
            if w > 0:
                den *= p
            elif w < 0:
                num *= p
        exp = tuple(flat[i] for i in corner_pos)
        acc.setdefault(exp, []).append((num, den))
    coeffs = series.coeffs
    for exp, terms in acc.items():
        total = Fraction(0)
        for num, den in terms:
            total += Fraction(num, den)
        coeffs[exp] = total
    return series


# ---------------------------------------------------------------------------
# numeric evaluation inside the unit polydisc

def _flat_corner_index(parts: tuple[int, ...]) -> tuple[int, ...]:
    cells = _cells(parts)
    return tuple(cells.index(c) for c in _corners(parts))


def _zeta_tail_upper(parts: tuple[int, ...], ks: Sequence[float], n: int) -> float:
    """Upper bound for the sum of 1/prod m^k over SSYT with some entry > n."""
    sums = partial_sums(parts, [power_weights(w, n) for w in ks])
    graph = strip_graph(parts)
    tail = 0.0
    for mu in graph.states[:-1]:
        x = float(sums[mu][-1])
        if x:
            tail += x * skew_tail_bracket(parts, mu, ks, n)[1]
    return tail


def _geometric_tail(size: int, rho: np.ndarray, m: int) -> np.ndarray:
    """sum_{j>m} j^size rho^j, bounded by a geometric series once the ratio is < 1."""
    q = ((m + 2) / (m + 1)) ** size * rho
    out = np.full(rho.shape, np.inf)
    ok = q < 1
    out[ok] = (m + 1) ** size * rho[ok] ** (m + 1) / (1 - q[ok])
    return out


def schur_polylog_batch(shape: Partition, k: Tableau, points: np.ndarray, cutoff: int,
                        zeta_tail: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Values and rigorous truncation bounds at many points at once.

    ``points`` has shape ``(batch, corners)`` with real entries in (-1, 1).
    Every tableau with an entry above ``cutoff`` has a corner above it, which
    gives two bounds for the dropped part: ``sum_{j>M} j^{|lambda|} rho^j``
    (there are at most ``j^{|lambda|}`` tableaux with entries <= j) and, for
    admissible weights, ``zeta_tail * prod_c rho_c * sum_c rho_c^M``.
    """
    parts = shape.parts
    ks = _weights(k, shape)
    if any(w < 1 for w in ks):
        raise NumericDomainError(f"numeric evaluation needs weights >= 1, got {ks}")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    ncorner = len(shape.corners)
    if pts.shape[1] != ncorner:
        raise NumericDomainError(f"expected {ncorner} coordinates per point, got {pts.shape[1]}")
    if np.any(np.abs(pts) >= 1):
        raise NumericDomainError("points must lie in the open unit polydisc")
    m = cutoff
    mvals = np.arange(1, m + 1, dtype=float)
    base = [power_weights(w, m) for w in ks]
    weights: list[np.ndarray] = list(base)
    for ci, flat in enumerate(_flat_corner_index(parts)):
        weights[flat] = base[flat][None, :] * np.power(pts[:, ci:ci + 1], mvals[None, :])
    for i, w in enumerate(weights):
        if w.ndim == 1:
            weights[i] = np.broadcast_to(w, (pts.shape[0], m))
    sums = partial_sums(parts, weights)
    value = sums[strip_graph(parts).states[-1]][:, -1].copy()
    rho = np.abs(pts)
    rho_max = rho.max(axis=1)
    bound = _geometric_tail(shape.weight, rho_max, m)
    if zeta_tail is None and admissible(shape, ks):
        zeta_tail = _zeta_tail_upper(parts, ks, m)
    if zeta_tail is not None:
        alt = zeta_tail * np.prod(rho, axis=1) * np.sum(rho ** m, axis=1)
        bound = np.minimum(bound, alt)
    # cumsum rounding, relative to the sum of absolute terms
    bound = bound + 4 * EPS * m * shape.weight * np.abs(value)
    return value, bound


def schur_polylog_corner_grid(shape: Partition, k: Tableau, x: np.ndarray, y: np.ndarray,
                              cutoff: int) -> np.ndarray:
    """Li truncated at ``cutoff`` on the product grid ``x`` times ``y`` of a two-corner shape.

    Split the tableaux by the last strip, the one that completes the shape.
    If it fills the second corner (value q), the sum is ``A_x(q) y^q`` where
    ``A`` comes from a transfer run in which only the first corner carries
    powers; otherwise it fills only the first corner and the roles swap.
    Both halves are then matrix products, which is far cheaper than running
    the transfer over every grid point.  No truncation bound is attached.
    """
    parts = shape.parts
    ks = _weights(k, shape)
    if len(shape.corners) != 2:
        raise NumericDomainError(f"corner grid needs exactly two corners, got {shape.parts}")
    first, second = _flat_corner_index(parts)
    graph = strip_graph(parts)
    m = cutoff
    mvals = np.arange(1, m + 1, dtype=float)
    base = [power_weights(w, m) for w in ks]

    def half(active: int, passive: int, pts: np.ndarray, keep) -> np.ndarray:
        weights = [np.broadcast_to(b, (len(pts), m)) for b in base]
        weights[active] = base[active][None, :] * np.power(pts[:, None], mvals[None, :])
        sums = partial_sums(parts, weights)
        acc = np.zeros((len(pts), m))
        for src, flat in graph.incoming[-1]:
            if keep(flat):
                w = sums[graph.states[src]][..., :-1].copy()
                for c in flat:
                    w *= weights[c]
                acc += w
        return acc

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = half(first, second, x, lambda flat: second in flat)
    b = half(second, first, y, lambda flat: first in flat and second not in flat)
    powers_y = np.power(y[:, None], mvals[None, :])
    powers_x = np.power(x[:, None], mvals[None, :])
    return a @ powers_y.T + powers_x @ b.T


def schur_polylog_eval(shape: Partition, k: Tableau, point: Sequence[float], tol: float = 1e-10,
                       max_cutoff: int = 1 << 22) -> ValueWithBound:
    """Li^lambda_k at one point of (-1, 1)^corners with a rigorous error bound."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    pts = np.asarray([point], dtype=float).reshape(1, -1)
    if np.all(pts == 0):
        _weights(k, shape)
        return ValueWithBound(0.0, 0.0, Method.TRUNCATED_SUM, {"cutoff": 0})
    m = 32
    while True:
        value, bound = schur_polylog_batch(shape, k, pts, m)
        if bound[0] < tol or m >= max_cutoff:
            return ValueWithBound(float(value[0]), float(bound[0]), Method.TRUNCATED_SUM, {"cutoff": m})
        m *= 2


def multiple_polylog_eval(index: Sequence[int], z: float, tol: float = 1e-10) -> ValueWithBound:
    """Li_{k_1..k_r}(z) = sum_{0<m_1<...<m_r} z^{m_r} / prod m_i^{k_i}.

    A column-shaped Schur polylog; at z = 1 it is the multiple zeta value.
    """
    index = tuple(int(v) for v in index)
    if not index or any(v < 1 for v in index):
        raise NumericDomainError(f"index entries must be >= 1, got {index}")
    shape = Partition((1,) * len(index))
    k = Tableau(shape, tuple((v,) for v in index))
    if z == 1:
        if index[-1] < 2:
            raise NumericDomainError(f"Li_{index}(1) diverges: last index must be >= 2")
        from .analytic.zeta import mzv_eval
        return mzv_eval(index, tol)
    if not -1 < z < 1:
        raise NumericDomainError(f"argument {z} outside (-1, 1]")
    return schur_polylog_eval(shape, k, [z], tol)


# ---------------------------------------------------------------------------
# Li_k(1 - e^z) for real z >= 0

def polylog_one_minus_exp_grid(k: int, rule: PanelRule) -> np.ndarray:
    """Li_k(1 - e^u) at every node of a panel rule whose first edge is 0.

    Uses Li_1(1 - e^u) = -u and d/du Li_j(1 - e^u) = Li_{j-1}(1 - e^u) e^u / (e^u - 1).
    """
    if k < 1:
        raise NumericDomainError("k must be >= 1")
    if rule.edges[0] != 0:
        raise ValueError("grid must start at 0")
    u = rule.nodes
    f = -u
    ratio = -np.expm1(-u)  # 1 - e^{-u}, so e^u/(e^u - 1) = 1/ratio
    for _ in range(k - 1):
        f = rule.cumulative_from_left(f / ratio)
    return f


def polylog_at_one_minus_exp(k: int, z: float, tol: float = 1e-12) -> ValueWithBound:
    """Li_k(1 - e^z) for z >= 0 via the iterated-integral recursion in z."""
    if k < 1:
        raise NumericDomainError(f"k must be >= 1, got {k}")
    if z < 0:
        raise NumericDomainError(f"z must be >= 0, got {z}")
    if z == 0 or k == 1:
        return ValueWithBound(float(-z), 0.0, Method.QUADRATURE)
    panels = max(1, math.ceil(z))
    edges = np.linspace(0.0, z, panels + 1)
    fine = _end_value(k, PanelRule(edges, 20))
    coarse = _end_value(k, PanelRule(edges, 14))
    err = abs(fine - coarse) + 16 * EPS * k * max(1.0, abs(fine))
    if err > tol:
        # refine once more: halve every panel
        edges = np.linspace(0.0, z, 2 * panels + 1)
        coarse, fine = fine, _end_value(k, PanelRule(edges, 20))
        err = abs(fine - coarse) + 16 * EPS * k * max(1.0, abs(fine))
    return ValueWithBound(float(fine), float(err), Method.QUADRATURE)


def _end_value(k: int, rule: PanelRule) -> float:
    # integrate the order-(k-1) function once more up to the right edge
    f = polylog_one_minus_exp_grid(k - 1, rule)
    u = rule.nodes
    return rule.integrate(f / -np.expm1(-u))


def verify_derivative_lemma(shape: Partition, k: Tableau, orders) -> "IdentityReport":
    """z d/dz at a hook corner equals lowering that corner's weight by one.

    Checks the row corner, the column corner and the mixed second-order
    operator, coefficient by coefficient.
    """
    from .bernoulli import decrement_corners
    from .reports import IdentityReport

    base = schur_polylog_series(shape, k, orders)
    report = IdentityReport("derivative-lemma", {"shape": list(shape.parts),
                                                 "k": [list(r) for r in k.rows],
                                                 "orders": list(base.orders)})
    cases = (
        ("row", base.euler_derivative(0), decrement_corners(k, True, False)),
        ("column", base.euler_derivative(1), decrement_corners(k, False, True)),
        ("both", base.euler_derivative(0).euler_derivative(1), decrement_corners(k)),
    )
    for name, lhs, k_low in cases:
        rhs = schur_polylog_series(shape, k_low, orders)
        for exp in np.ndindex(*lhs.coeffs.shape):
            report.record((name,) + tuple(int(e) for e in exp), lhs.coeffs[exp], rhs.coeffs[exp])
    return report


def verify_leading_coefficient(shape: Partition, k: Tableau) -> "IdentityReport":
    """Coefficient of z_row^1 z_col^ell in a hook polylog is 1 / prod_{i=2}^{ell} i^{k_{i1}}.

    With the row corner equal to 1 the whole first row is 1, and a column
    ending in ell is forced to read 1, 2, ..., ell.
    """
    from .bernoulli import _check_hook
    from .reports import IdentityReport

    h, ell = _check_hook(shape)
    series = schur_polylog_series(shape, k, (1, ell))
    expected = Fraction(1)
    for i in range(2, ell + 1):
        expected /= Fraction(i) ** int(k[(i, 1)])
    report = IdentityReport("leading-coefficient", {"shape": list(shape.parts),
                                                    "k": [list(r) for r in k.rows]})
    report.record((1, ell), series.coeffs[1, ell], expected)
    return report
