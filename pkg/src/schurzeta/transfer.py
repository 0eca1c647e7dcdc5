"""Floating-point sums over semi-standard tableaux by value-by-value transfer.

An SSYT with entries <= N is a chain of partitions ``0 = mu_0 <= mu_1 <= ... <= mu_N``
where ``mu_v / mu_{v-1}`` is a horizontal strip holding the entries equal to
``v``.  Summing a product weight ``prod_cell w_cell(m_cell)`` over all such
chains is a recursion over sub-partitions of the shape, vectorised over the
value axis with ``cumsum``.

Tails (entries above N) are handled by splitting every tableau into the part
``<= N`` (a sub-partition mu, summed exactly) and the skew part ``> N``.
Level maps reduce the skew part to chains ``N < v_1 < ... < v_p``, and for
decreasing power weights each chain sum is trapped between two integrals:

    I_{N+1}(t) <= sum_{N < v_1 < ... < v_p} prod v_i^{-t_i} <= I_N(t),
    I_x(t) = x^{p - |t|} / prod_j (t_j + ... + t_p - (p - j + 1)).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .shapes import _cells, skew_cells, skew_level_maps

__all__ = [
    "StripGraph",
    "strip_graph",
    "partial_sums",
    "power_weights",
    "chain_integral",
    "chain_tail_bracket",
    "skew_tail_bracket",
    "schur_power_sum",
    "TruncatedSum",
]

EPS = np.finfo(float).eps
EPS_LONG = float(np.finfo(np.longdouble).eps)


@dataclass(frozen=True)
class StripGraph:
    parts: tuple[int, ...]
    states: tuple[tuple[int, ...], ...]          # sub-partitions, padded, by size
    incoming: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]  # per state: (source, flat cells)


@lru_cache(maxsize=None)
def strip_graph(parts: tuple[int, ...]) -> StripGraph:
    n = len(parts)
    states = []

    def rec(i, acc):
        if i == n:
            states.append(tuple(acc))
            return
        hi = parts[i] if i == 0 else min(parts[i], acc[-1])
        for v in range(hi + 1):
            acc.append(v)
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    states.sort(key=lambda mu: (sum(mu), mu))
    index = {mu: k for k, mu in enumerate(states)}
    offsets = [0]
    for p in parts:
        offsets.append(offsets[-1] + p)
    incoming: list[list] = [[] for _ in states]
    for mu in states:
        for nu in states:
            if nu == mu or any(a > b for a, b in zip(mu, nu)):
                continue
            # horizontal strip: nu_i <= mu_{i-1}
            if any(nu[i] > mu[i - 1] for i in range(1, n)):
                continue
            flat = tuple(offsets[i] + j for i in range(n) for j in range(mu[i], nu[i]))
            incoming[index[nu]].append((index[mu], flat))
    return StripGraph(parts, tuple(states), tuple(tuple(x) for x in incoming))


def power_weights(exponent: float, n_values: int) -> np.ndarray:
    """v^(-exponent) for v = 1..n_values."""
    v = np.arange(1, n_values + 1, dtype=float)
    return np.exp(-exponent * np.log(v))


def partial_sums(parts: tuple[int, ...], cell_weights: Sequence[np.ndarray],
                 dtype=np.float64) -> dict[tuple[int, ...], np.ndarray]:
    """X_mu(v) for every sub-partition mu and v = 0..N.

    ``cell_weights[k]`` has shape ``(*batch, N)``; entry ``[..., v-1]`` is the
    weight of putting value v into the k-th cell (row-major).  X_mu(v) sums
    the weight over SSYT of shape mu with entries <= v.  ``dtype`` is the
    accumulation type; ``np.longdouble`` keeps long running sums accurate.
    """
    graph = strip_graph(parts)
    ref = np.asarray(cell_weights[0])
    batch, n_values = ref.shape[:-1], ref.shape[-1]
    out: dict[tuple[int, ...], np.ndarray] = {}
    arrays: list[np.ndarray] = []
    for k, mu in enumerate(graph.states):
        if k == 0:
            x = np.ones(batch + (n_values + 1,), dtype=dtype)
        else:
            incr = np.zeros(batch + (n_values,), dtype=dtype)
            for src, flat in graph.incoming[k]:
                w = arrays[src][..., :-1].copy()
                for c in flat:
                    w *= cell_weights[c]
                incr += w
            x = np.empty(batch + (n_values + 1,), dtype=dtype)
            x[..., 0] = 0.0
            np.cumsum(incr, axis=-1, out=x[..., 1:])
        arrays.append(x)
        out[mu] = x
    return out


def chain_integral(t: Sequence[float], x: float) -> float:
    """I_x(t) = integral over x <= y_1 <= ... <= y_p of prod y_i^(-t_i)."""
    p = len(t)
    if p == 0:
        return 1.0
    denom = 1.0
    suffix = 0.0
    for j in range(p - 1, -1, -1):
        suffix += t[j]
        d = suffix - (p - j)
        if d <= 0:
            raise ValueError(f"chain exponents {tuple(t)} do not give a convergent tail")
        denom *= d
    return x ** (p - sum(t)) / denom


def chain_tail_bracket(t: Sequence[float], n: int) -> tuple[float, float]:
    """Bounds for sum_{n < v_1 < ... < v_p} prod v_i^(-t_i), all t_i > 0."""
    return chain_integral(t, n + 1), chain_integral(t, n)


@lru_cache(maxsize=4096)
def _skew_chains(parts: tuple[int, ...], inner: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Cells grouped by level for each level map of parts/inner, as flat indices."""
    cells = skew_cells(parts, inner)
    flat_index = {c: k for k, c in enumerate(_cells(parts))}
    flat = tuple(flat_index[c] for c in cells)
    return skew_level_maps(parts, inner), flat


def skew_tail_bracket(parts: tuple[int, ...], inner: tuple[int, ...], exponents: Sequence[float], n: int) -> tuple[float, float]:
    """Bounds for the sum over SSYT of parts/inner with all entries > n of prod m^(-s).

    ``exponents`` are per cell of the full shape, row-major.
    """
    maps, flat = _skew_chains(parts, inner)
    if not flat:
        return 1.0, 1.0
    lo = hi = 0.0
    for levels in maps:
        depth = max(levels)
        t = [0.0] * depth
        for lv, k in zip(levels, flat):
            t[lv - 1] += exponents[k]
        a, b = chain_tail_bracket(t, n)
        lo += a
        hi += b
    return lo, hi


@dataclass(frozen=True)
class TruncatedSum:
    value: float
    bound: float
    cutoff: int
    terms: int


def schur_power_sum(parts: tuple[int, ...], exponents: Sequence[float], n: int) -> TruncatedSum:
    """sum over SSYT of shape ``parts`` of prod m^(-s), truncated at n with bracketed tail.

    Needs every tail chain to converge (exponent >= 1 off corners and > 1 on
    corners is enough).
    """
    weights = [power_weights(s, n) for s in exponents]
    sums = partial_sums(parts, weights, dtype=np.longdouble)
    graph = strip_graph(parts)
    full = graph.states[-1]
    value = float(sums[full][-1])
    bound = 0.0
    for mu in graph.states[:-1]:
        x = float(sums[mu][-1])
        if x == 0.0:
            continue
        lo, hi = skew_tail_bracket(parts, mu, exponents, n)
        value += x * 0.5 * (lo + hi)
        bound += x * 0.5 * (hi - lo)
    # accumulation rounding (n terms per level, one level per cell at most)
    # plus a few ulps of relative error in every float64 weight
    cells = len(exponents)
    bound += (4.0 * EPS_LONG * n * cells + 8.0 * EPS * cells) * abs(value)
    return TruncatedSum(value, bound, n, n)
