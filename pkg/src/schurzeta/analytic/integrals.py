"""One-dimensional integral representations evaluated by panel quadrature.

* ``zeta(k_1..k_{r-1}, s) = 1/Gamma(s) int_0^oo t^{s-1}/(e^t-1) Li_{k_1..k_{r-1}}(e^{-t}) dt``
* ``zeta*(k_1..k_{r-1}, s) = 1/Gamma(s) int_0^oo t^{s-1} e^t/(e^t-1) Li*_{k_1..k_{r-1}}(e^{-t}) dt``
* ``eta_k(s) = 1/Gamma(s) int_0^oo t^{s-1} Li_k(1-e^t)/(1-e^t) dt``

The polylogarithms at ``e^{-t}`` are produced on the quadrature grid itself
by integrating ``-d/dt Li_{..,k}(e^{-t}) = Li_{..,k-1}(e^{-t})`` (and the
analogous rule for a trailing 1) from ``t = 1`` leftwards, so no evaluation
near the singular point ``x = 1`` is ever done by series.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import special

from ..numeric import binomial
from ..polylog import polylog_one_minus_exp_grid, schur_polylog_batch
from ..quadrature import PanelRule, QuadratureSpec, graded_edges
from ..shapes import Composition, Partition, Tableau
from ..transfer import EPS
from ..values import Method, NumericDomainError, ValueWithBound

__all__ = [
    "mzv_integral_eval",
    "mzv_star_integral_eval",
    "eta_classical_eval",
    "eta_integral",
    "exp_polylog_grid",
]

ONE_D_SPEC = QuadratureSpec(abs_tol=1e-10, head=4.0 ** -20, grading=4.0, cutoff=40.0,
                            panel_width=1.0, nodes=16, check_nodes=24)
_SERIES_CUTOFF = 96  # terms for Li(e^{-t}) at t >= 1: e^{-96} is far below double precision


def _index(index) -> tuple[int, ...]:
    parts = tuple(index.parts) if isinstance(index, Composition) else tuple(index)
    return tuple(int(p) for p in parts)


def _direct_polylog(prefix: tuple[int, ...], star: bool, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Li_prefix(e^{-t}) (or Li*) at t >= 1 by truncated series, with bounds."""
    flat = t.ravel()
    if not prefix:
        val = np.exp(-flat) if star else np.ones_like(flat)
        return val.reshape(t.shape), np.zeros(t.shape)
    shape = Partition((len(prefix),)) if star else Partition((1,) * len(prefix))
    rows = (prefix,) if star else tuple((p,) for p in prefix)
    val, bnd = schur_polylog_batch(shape, Tableau(shape, rows), np.exp(-flat)[:, None], _SERIES_CUTOFF)
    return val.reshape(t.shape), bnd.reshape(t.shape)


def exp_polylog_grid(prefix: Sequence[int], star: bool, rule: PanelRule) -> tuple[np.ndarray, float]:
    """Li_prefix(e^{-t}) (Li* when ``star``) at every node of ``rule``.

    Panels to the left of t = 1 are filled by cumulative integration from
    t = 1; panels to the right use the series directly.  Returns the values
    and an upper bound on the series truncation error.
    """
    prefix = tuple(int(p) for p in prefix)
    if any(p < 1 for p in prefix):
        raise NumericDomainError(f"polylog indices must be >= 1, got {prefix}")
    edges = rule.edges
    split = int(np.searchsorted(edges, 1.0))
    if split >= len(edges) or edges[split] != 1.0:
        raise ValueError("the grid must have an edge at t = 1")
    nodes = rule.nodes
    left = PanelRule(edges[:split + 1], rule.n)
    t_left = nodes[:split]
    right_vals, right_bnd = _direct_polylog(prefix, star, nodes[split:])
    series_err = float(right_bnd.max(initial=0.0))

    memo: dict[tuple[int, ...], np.ndarray] = {}

    def at_one(idx):
        val, bnd = _direct_polylog(idx, star, np.array([1.0]))
        return float(val[0]), float(bnd[0])

    def left_values(idx):
        if idx in memo:
            return memo[idx]
        if not idx:
            out = np.exp(-t_left) if star else np.ones_like(t_left)
        else:
            if idx[-1] >= 2:
                g = left_values(idx[:-1] + (idx[-1] - 1,))
            else:
                lower = left_values(idx[:-1])
                # trailing 1: x/(1-x) for ordinary sums, 1/(1-x) for weak ones
                # (the empty weak polylog is x, so depth one agrees)
                g = lower / (-np.expm1(-t_left) if star else np.expm1(t_left))
            f1, b1 = at_one(idx)
            nonlocal series_err
            series_err = max(series_err, b1)
            out = left.cumulative_from_right(g, f1)
        memo[idx] = out
        return out

    values = np.concatenate([left_values(prefix), right_vals], axis=0)
    return values, series_err


def _log_moment_head(a: float, q: int, eps: float) -> float:
    """int_0^eps t^a (log(1/t) + 1)^q dt for a > -1, eps <= 1."""
    b = a + 1
    x = b * (math.log(1 / eps) + 1)
    return math.exp(b) * special.gammaincc(q + 1, x) * math.gamma(q + 1) / b ** (q + 1)


def _mzv_head(prefix: tuple[int, ...], star: bool, s: float, eps: float) -> float:
    # Li <= sum_q c_q L^q / q!, L = -log(1 - e^{-t}) <= log(1/t) + 1 on (0, 1];
    # t^{s-1} K(t) <= c t^{s-2} with c = 1 (ordinary) or 2 (star)
    j = len(prefix)
    if j == 0:
        coeffs = {0: 1.0}
    elif star:
        coeffs = {q: binomial(j - 1, q - 1) / math.factorial(q) for q in range(1, j + 1)}
    else:
        coeffs = {j: 1 / math.factorial(j)}
    c = 2.0 if star else 1.0
    total = sum(v * _log_moment_head(s - 2, q, eps) for q, v in coeffs.items())
    return c * total / math.gamma(s)


def _mzv_tail(prefix: tuple[int, ...], star: bool, s: float, cutoff: float) -> float:
    # Li(e^{-t}) <= Li(e^{-T}) e^{-(t-T)} past T since every monomial has degree >= 1
    if prefix:
        f_t, b_t = _direct_polylog(prefix, star, np.array([cutoff]))
        f_t = float(f_t[0] + b_t[0])
    else:
        f_t = math.exp(-cutoff) if star else 1.0
    if not star and prefix:
        scale = f_t
    elif not star:
        scale = 1.0
    else:
        scale = f_t * math.exp(cutoff)
    return scale * special.gammaincc(s, cutoff) / -math.expm1(-cutoff)


def _mzv_integral(index, star: bool, tol: float, spec: QuadratureSpec) -> ValueWithBound:
    idx = _index(index)
    if not idx or any(p < 1 for p in idx) or idx[-1] < 2:
        raise NumericDomainError(f"index {idx} is not admissible")
    if star and len(idx) < 2:
        raise NumericDomainError("the zeta-star integral needs depth >= 2")
    prefix, s = idx[:-1], float(idx[-1])
    budget = tol / 10
    eps = spec.head
    while _mzv_head(prefix, star, s, eps) > budget and eps > 1e-290:
        eps /= spec.grading ** 4
    cutoff = spec.cutoff
    while _mzv_tail(prefix, star, s, cutoff) > budget and cutoff < 700:
        cutoff += 10
    head = _mzv_head(prefix, star, s, eps)
    tail = _mzv_tail(prefix, star, s, cutoff)
    edges = graded_edges(eps, spec.grading, 1.0, cutoff, spec.panel_width)
    results = []
    series_err = 0.0
    for n in (spec.nodes, spec.check_nodes):
        rule = PanelRule(edges, n)
        li, err = exp_polylog_grid(prefix, star, rule)
        t = rule.nodes
        kernel = -1 / np.expm1(-t) if star else 1 / np.expm1(t)
        weight = np.exp((s - 1) * np.log(t) - special.gammaln(s))
        integrand = weight * kernel * li
        results.append(rule.integrate(integrand))
        series_err = max(series_err, err * rule.integrate(weight * kernel))
    # the integrand is positive: the head lies in [0, head], the tail in [0, tail]
    value = results[0] + 0.5 * (head + tail)
    bound = abs(results[0] - results[1]) + series_err + 0.5 * (head + tail) + 64 * EPS * abs(value)
    return ValueWithBound(value, bound, Method.QUADRATURE,
                          {"panels": len(edges) - 1, "cutoff": cutoff, "head": eps})


def mzv_integral_eval(index, tol: float = 1e-8, spec: QuadratureSpec = ONE_D_SPEC) -> ValueWithBound:
    """zeta(index) from its one-dimensional integral over the polylog of the leading indices.

    Depth one is the plain Gamma(s) zeta(s) integral (empty polylog = 1).
    """
    return _mzv_integral(index, False, tol, spec)


def mzv_star_integral_eval(index, tol: float = 1e-8, spec: QuadratureSpec = ONE_D_SPEC) -> ValueWithBound:
    """zeta-star(index) from the integral with kernel e^t/(e^t-1); depth >= 2 only."""
    return _mzv_integral(index, True, tol, spec)


# ---------------------------------------------------------------------------
# classical eta

@lru_cache(maxsize=64)
def _majorant(k: int) -> tuple[float, ...]:
    """Coefficients of p_k with |Li_k(1-e^t)| <= p_k(t): p_1 = t, p_j = int_0^t p_{j-1}(u)(1+1/u) du."""
    p = [0.0, 1.0]
    for _ in range(k - 1):
        nxt = [0.0] * (len(p) + 1)
        for i, c in enumerate(p):
            if c:
                nxt[i + 1] += c / (i + 1)   # u^i -> t^{i+1}/(i+1)
                nxt[i] += c / i             # u^{i-1} -> t^i / i  (i >= 1 since p(0) = 0)
        p = nxt
    return tuple(p)


def _eta_tail(k: int, s: float, cutoff: float) -> float:
    total = 0.0
    for i, c in enumerate(_majorant(k)):
        if c:
            total += c * special.gammaincc(s + i, cutoff) * math.exp(special.gammaln(s + i) - special.gammaln(s))
    return total / -math.expm1(-cutoff)


def eta_integral(k: int, s: float, lower: float = 0.0, tol: float = 1e-8,
                 spec: QuadratureSpec = ONE_D_SPEC) -> ValueWithBound:
    """1/Gamma(s) times the eta integral over [lower, oo); ``lower`` is 0 or a value >= 1."""
    if k < 1:
        raise NumericDomainError(f"k must be >= 1, got {k}")
    if not s > 0:
        raise NumericDomainError(f"s must be positive, got {s}")
    budget = tol / 10
    # on [0, eps], x = e^t - 1 < 1 and the alternating series gives
    # 1 - x/2^k <= Li_k(-x)/(-x) <= 1, so the head is known up to a factor
    eps = min(0.25, (budget * math.gamma(s + 1)) ** (1 / s))
    cutoff = spec.cutoff
    while _eta_tail(k, s, cutoff) > budget and cutoff < 700:
        cutoff += 10
    tail = _eta_tail(k, s, cutoff)
    edges = np.concatenate([[0.0], graded_edges(eps, spec.grading, 1.0, cutoff, spec.panel_width)])
    if lower:
        if lower < 1:
            raise ValueError("lower limit must be 0 or >= 1")
        right = np.arange(math.ceil(lower), math.ceil(cutoff) + 1, spec.panel_width, dtype=float)
        edges = np.unique(np.concatenate([edges[edges < 1.0], [1.0, lower], right[right > lower]]))
    start = int(np.searchsorted(edges, lower if lower else eps))
    results = []
    for n in (spec.nodes, spec.check_nodes):
        rule = PanelRule(edges, n)
        f = polylog_one_minus_exp_grid(k, rule)[start:]
        t = rule.nodes[start:]
        integrand = np.exp((s - 1) * np.log(t) - special.gammaln(s)) * f / -np.expm1(t)
        results.append(float(np.sum(rule.weights[start:] * integrand)))
    head = head_err = 0.0
    if not lower:
        full = eps ** s / math.gamma(s + 1)
        slack = full * math.expm1(eps) / 2 ** k
        head, head_err = full - 0.5 * slack, 0.5 * slack
    # positive integrand: the tail lies in [0, tail]
    value = results[0] + head + 0.5 * tail
    bound = abs(results[0] - results[1]) + head_err + 0.5 * tail + 64 * EPS * abs(value)
    return ValueWithBound(value, bound, Method.QUADRATURE, {"cutoff": cutoff, "panels": len(edges) - 1})


def eta_classical_eval(k: int, s: float, spec: QuadratureSpec = ONE_D_SPEC, tol: float = 1e-8) -> ValueWithBound:
    """eta_k(s) for s > 0 by quadrature; Li_k(1-e^t) comes from the recursion in t."""
    return eta_integral(k, s, 0.0, tol, spec)
