"""The xi function of a Schur polylog: quadrature and an independent series.

    xi(k; s) = prod 1/Gamma(s_c) int_{(0,oo)^c} prod z_c^{s_c-1}
               Li_k(1-e^{-z_1}, ...) / prod (e^{z_c}-1) dz

Expanding ``(1-e^{-z})^m / (e^z-1) = (1-e^{-z})^{m-1} e^{-z}`` binomially and
integrating term by term turns every corner variable into the factor

    a(m, s) = sum_{j<m} (-1)^j binomial(m-1, j) / (j+1)^s
            = 1/Gamma(s) int_0^oo z^{s-1} e^{-z} (1-e^{-z})^{m-1} dz,

so xi is also ``sum over SSYT of prod_c a(m_c, s_c) / prod m^k``.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np
from scipy import integrate, special

from ..polylog import admissible, schur_polylog_batch, schur_polylog_corner_grid
from ..quadrature import PanelRule, QuadratureSpec, graded_edges
from ..shapes import Partition, Tableau
from ..transfer import EPS, EPS_LONG, partial_sums, power_weights, schur_power_sum, skew_tail_bracket, strip_graph
from ..values import Method, NumericDomainError, ValueWithBound

__all__ = ["XI_SPEC", "xi_eval", "xi_series_oracle", "corner_factor"]

XI_SPEC = QuadratureSpec(abs_tol=1e-7, head=4.0 ** -15, grading=4.0, cutoff=30.0,
                         panel_width=2.0, nodes=8, check_nodes=12)
_EXACT_LIMIT = 256


def _check(shape: Partition, k: Tableau, s: Sequence[float], max_corners: int | None) -> tuple[float, ...]:
    # xi converges for all weights >= 1: every corner contributes a(m, s) ~ 1/m
    if k.shape != shape:
        raise NumericDomainError(f"weight tableau has shape {k.shape.parts}, expected {shape.parts}")
    c = len(shape.corners)
    if max_corners is not None and c > max_corners:
        raise NumericDomainError(f"xi quadrature supports at most {max_corners} corners, shape has {c}")
    s = tuple(float(v) for v in s)
    if len(s) != c:
        raise NumericDomainError(f"need one s per corner ({c}), got {len(s)}")
    if any(not v > 0 for v in s):
        raise NumericDomainError(f"s must be positive, got {s}")
    if any(int(v) != v or v < 1 for v in k.values()):
        raise NumericDomainError(f"weights must be integers >= 1, got {k}")
    return s


@lru_cache(maxsize=32)
def _zeta_upper(shape: Partition, k: Tableau) -> float:
    r = schur_power_sum(shape.parts, tuple(float(v) for v in k.values()), 4096)
    return r.value + r.bound


# ---------------------------------------------------------------------------
# quadrature

@lru_cache(maxsize=16)
def _polylog_grid(shape: Partition, k: Tableau, spec: QuadratureSpec, n: int, cutoff: int):
    """Li truncated at ``cutoff``, at (1-e^{-z_1}, ...) on the tensor grid."""
    edges = graded_edges(spec.head, spec.grading, 1.0, spec.cutoff, spec.panel_width)
    rule = PanelRule(edges, n)
    z = rule.nodes.ravel()
    w = rule.weights.ravel()
    c = len(shape.corners)
    rho = -np.expm1(-z)
    if c == 1:
        vals = schur_polylog_batch(shape, k, rho[:, None], cutoff, zeta_tail=0.0)[0]
    else:
        vals = schur_polylog_corner_grid(shape, k, rho, rho, cutoff)
    vals.flags.writeable = False
    return z, w, vals


def _weight_vector(z: np.ndarray, s: float) -> np.ndarray:
    # z^{s-1} / (Gamma(s) (e^z - 1))
    return np.exp((s - 1) * np.log(z) - special.gammaln(s)) / np.expm1(z)


def _tensor_sum(arr: np.ndarray, vectors: list[np.ndarray]) -> float:
    out = arr
    for v in vectors:
        out = np.tensordot(out, v, axes=([0], [0]))
    return float(out)


def xi_eval(shape: Partition, k: Tableau, s: Sequence[float], spec: QuadratureSpec = XI_SPEC,
            cutoff: int = 512, tail_cutoff: int = 1 << 15) -> ValueWithBound:
    """xi by tensor Gauss-Legendre over graded panels (one or two corners).

    The polylog is truncated at ``cutoff``.  Integrated termwise, the dropped
    terms are the xi series over tableaux with an entry above the cutoff;
    that part is summed up to ``tail_cutoff`` and its remainder bracketed.
    The bound adds that bracket, the difference of two node
    counts (heuristic) and analytic bounds for the pieces below
    ``spec.head`` and above ``spec.cutoff``, where
    ``Li <= zeta_lambda(k) prod (1-e^{-z_c})`` makes the integrand at most
    ``zeta_lambda(k) prod z_c^{s_c-1} e^{-z_c} / Gamma(s_c)``.
    """
    s = _check(shape, k, s, max_corners=2)
    if not admissible(shape, k):
        if shape.parts != (1,):
            raise NumericDomainError("xi quadrature needs corner weights > 1 unless the shape is a single box")
        return _single_box_xi(int(k[(1, 1)]), s[0], spec)
    results = []
    for n in (spec.nodes, spec.check_nodes):
        z, w, vals = _polylog_grid(shape, k, spec, n, cutoff)
        vecs = [w * _weight_vector(z, sc) for sc in s]
        results.append(_tensor_sum(vals, vecs))
    # termwise, the dropped polylog terms integrate to the xi series over
    # tableaux with an entry above the cutoff: sum it to tail_cutoff and
    # bracket the rest
    ks = tuple(float(v) for v in k.values())
    sums, rel = _series_sums(shape, ks, s, tail_cutoff)
    full = sums[strip_graph(shape.parts).states[-1]]
    middle = float(full[-1] - full[cutoff])
    lo, hi = _series_tail_bracket(shape, ks, s, tail_cutoff, sums)
    middle += 0.5 * (lo + hi)
    middle_err = 0.5 * (hi - lo) + (rel + 4 * EPS_LONG * tail_cutoff * len(ks)) * float(full[-1])
    inside = 1.0
    for sc in s:
        inside *= special.gammainc(sc, spec.cutoff) - special.gammainc(sc, spec.head)
    outside = _zeta_upper(shape, k) * (1 - inside)
    node_diff = abs(results[0] - results[1])
    value = results[0] + middle + 0.5 * outside
    bound = node_diff + middle_err + 0.5 * outside + 4 * EPS * (cutoff * shape.weight + 16) * abs(value)
    return ValueWithBound(value, bound, Method.QUADRATURE,
                          {"nodes": spec.nodes, "check_nodes": spec.check_nodes, "cutoff": cutoff,
                           "tail_cutoff": tail_cutoff, "node_difference": node_diff,
                           "series_part": middle, "outside": float(outside)})


def _single_box_xi(k: int, s: float, spec: QuadratureSpec) -> ValueWithBound:
    # Li_1(1-e^{-z}) = z and d/dz Li_j(1-e^{-z}) = Li_{j-1}(1-e^{-z}) / (e^z - 1);
    # Li_k <= Li_1 = z bounds the tail past the cutoff
    edges = np.concatenate([[0.0], graded_edges(spec.head, spec.grading, 1.0, spec.cutoff, spec.panel_width)])
    results = []
    for n in (spec.nodes, spec.check_nodes):
        rule = PanelRule(edges, n)
        f = rule.nodes
        for _ in range(k - 1):
            f = rule.cumulative_from_left(f / np.expm1(rule.nodes))
        z, w = rule.nodes[1:], rule.weights[1:]
        results.append(float(np.sum(w * f[1:] * _weight_vector(z, s))))
    # on [0, h] the integrand is z^{s-1} (Li_k / z) (z / (e^z - 1)) / Gamma(s)
    # with both ratios in [1 - z, 1]
    h = spec.head
    head_hi = h ** s / math.gamma(s + 1)
    head_lo = head_hi - 2 * h ** (s + 1) / ((s + 1) * math.gamma(s))
    tail = s * special.gammaincc(s + 1, spec.cutoff) / -math.expm1(-spec.cutoff)
    value = results[0] + 0.5 * (head_lo + head_hi + tail)
    bound = abs(results[0] - results[1]) + 0.5 * (head_hi - head_lo + tail) + 64 * EPS * abs(value)
    return ValueWithBound(value, bound, Method.QUADRATURE, {"nodes": spec.nodes, "check_nodes": spec.check_nodes})


# ---------------------------------------------------------------------------
# series oracle

def _harmonic_power_sums(s: int, n: int) -> np.ndarray:
    # a(m, s) = h_{s-1}(1, 1/2, ..., 1/m) / m for integer s >= 1
    inv = 1.0 / np.arange(1, n + 1, dtype=np.longdouble)
    h = np.ones(n, dtype=np.longdouble)
    for _ in range(s - 1):
        h = np.cumsum(inv * h)
    return np.asarray(h * inv, dtype=float)


def _binomial_sum(m: int, s: float) -> float:
    # the alternating sum loses about m bits, so carry m + 64
    with mpmath.workprec(m + 64):
        total = mpmath.mpf(0)
        c = mpmath.mpf(1)
        for j in range(m):
            term = c / mpmath.power(j + 1, s)
            total += -term if j % 2 else term
            c = c * (m - 1 - j) / (j + 1)
        return float(total)


@lru_cache(maxsize=16)
def _exact_head(s: float) -> np.ndarray:
    return np.array([_binomial_sum(m, s) for m in range(1, _EXACT_LIMIT + 1)])


def _mellin_factor(ms: np.ndarray, s: float, n: int) -> np.ndarray:
    # 1/Gamma(s) int_0^oo z^{s-1} e^{-z} (1-e^{-z})^{m-1} dz on unit panels
    top = math.log(ms.max()) + 48
    edges = np.arange(0.0, math.ceil(top) + 1)
    rule = PanelRule(edges, n)
    z = rule.nodes.ravel()
    w = rule.weights.ravel() * np.exp((s - 1) * np.log(z) - z - special.gammaln(s))
    log_base = np.log(-np.expm1(-z))
    out = np.empty(len(ms))
    for lo in range(0, len(ms), 256):
        chunk = ms[lo:lo + 256].astype(float)
        out[lo:lo + 256] = np.exp(np.outer(chunk - 1, log_base)) @ w
    return out


@lru_cache(maxsize=64)
def corner_factor(s: float, n: int) -> tuple[np.ndarray, float]:
    """a(m, s) for m = 1..n and a bound on their relative error."""
    if float(s).is_integer() and s >= 1:
        return _harmonic_power_sums(int(s), n), 16 * EPS
    head = min(n, _EXACT_LIMIT)
    out = np.empty(n)
    out[:head] = _exact_head(s)[:head]
    rel = 4 * EPS
    if n > head:
        ms = np.arange(head + 1, n + 1)
        fine = _mellin_factor(ms, s, 24)
        coarse = _mellin_factor(ms, s, 16)
        out[head:] = fine
        rel = max(rel, float(np.max(np.abs(fine - coarse) / fine)) + 64 * EPS)
    out.flags.writeable = False
    return out, rel


def _factor_majorant(s: float, n: int) -> tuple[float, float]:
    """(c, eps) with a(m, s) <= c * m^{-(1 - eps)} for every m > n.

    a(m, s) = E[X^{s-1}] / (m Gamma(s)) with X = -log U, U ~ Beta(1, m) and
    E[X] = H_m.  For s >= 1, Lyapunov with q = ceil(s-1) and E[X^q] = q! h_q
    <= q! H_m^q gives a <= (q! H_m^q)^{(s-1)/q} / (m Gamma(s)); for s < 1,
    X >= 1 - U gives a <= 1/(m Gamma(s+1)).  Past n, H_m <= H_n (m/n)^{1/H_n}.
    """
    if s < 1:
        return 1 / math.gamma(s + 1), 0.0
    if s == 1:
        return 1.0, 0.0
    sigma = s - 1
    q = math.ceil(sigma)
    h_n = float(special.digamma(n + 1) + np.euler_gamma)
    lead = (math.factorial(q) ** (sigma / q)) / math.gamma(s)
    eps = sigma / h_n
    return lead * h_n ** sigma * n ** (-eps), eps


def _factor_minorant(s: float, n: int) -> float:
    """c with a(m, s) >= c / m for every m > n (0 when s < 1).

    X is the maximum of m standard exponentials, so X >= X_1 gives
    E[X^{s-1}] >= Gamma(s); for s >= 2 Jensen gives E[X^{s-1}] >= H_m^{s-1}.
    """
    if s < 1:
        return 0.0
    c = 1.0
    if s >= 2:
        h_n = float(special.digamma(n + 1) + np.euler_gamma)
        c = max(c, h_n ** (s - 1) / math.gamma(s))
    return c


def _single_box_tail(k: float, s: float, n: int) -> tuple[float, float]:
    """Bounds for sum_{m>n} a(m, s) / m^k.

    a(m, s) = E[X^sigma] / (m Gamma(s)) with X the maximum of m standard
    exponentials, E[X] = H_m and E[X^2] <= H_m^2 + zeta(2).  Jensen,
    Lyapunov and log-convexity of moments turn this into g(H_m) / m with
    explicit g, and ln m + gamma <= H_m <= ln m + gamma + 1/(2n).  The
    summands decrease, so the sums sit between integrals from n + 1 and n.
    """
    sigma = s - 1
    z2 = math.pi ** 2 / 6
    g_s = math.gamma(s)
    if sigma >= 1:
        q = math.ceil(sigma)
        upper = lambda h: math.factorial(q) ** (sigma / q) * h ** sigma / g_s
        lower = lambda h: h ** sigma / g_s
    elif sigma > 0:
        upper = lambda h: h ** sigma / g_s
        lower = lambda h: h ** (2 - sigma) / (h * h + z2) ** (1 - sigma) / g_s
    elif sigma == 0:
        upper = lower = lambda h: 1.0
    else:
        upper = lambda h: 1 / math.gamma(s + 1)
        lower = lambda h: (h + 1 - np.euler_gamma) ** sigma / g_s

    def integral(g, shift, start):
        # int_start^oo g(ln x + shift) x^{-(k+1)} dx with x = e^u
        val, err = integrate.quad(lambda u: g(u + shift) * math.exp(-k * u), math.log(start), np.inf,
                                  epsabs=0, epsrel=1e-13, limit=200)
        return val, err

    hi, e_hi = integral(upper, np.euler_gamma + 0.5 / n, n)
    lo, e_lo = integral(lower, np.euler_gamma, n + 1)
    return max(0.0, lo - e_lo), hi + e_hi


def _series_tail_bracket(shape: Partition, ks: Sequence[float], s: Sequence[float], n: int,
                         sums) -> tuple[float, float]:
    """Bounds for the part of the xi series with some entry above n.

    ``sums`` are the a-weighted partial sums up to n; past n every corner
    weight lies between c_lo m^{-(k_c + 1)} and c_hi m^{-(k_c + 1 - eps)}.
    """
    if shape.parts == (1,):
        return _single_box_tail(ks[0], s[0], n)
    parts = shape.parts
    cells = shape.cells
    corner_flat = [cells.index(c) for c in shape.corners]
    exps_hi, exps_lo = list(ks), list(ks)
    hi_const, lo_const = {}, {}
    for ci, flat in enumerate(corner_flat):
        c, eps = _factor_majorant(s[ci], n)
        exps_hi[flat] = ks[flat] + 1 - eps
        exps_lo[flat] = ks[flat] + 1
        hi_const[flat] = c
        lo_const[flat] = _factor_minorant(s[ci], n)
    lo = hi = 0.0
    for mu in strip_graph(parts).states[:-1]:
        x = float(sums[mu][-1])
        if not x:
            continue
        scale_hi = scale_lo = 1.0
        for flat in corner_flat:
            row, col = cells[flat]
            if mu[row - 1] < col:  # corner lies in the skew part
                scale_hi *= hi_const[flat]
                scale_lo *= lo_const[flat]
        hi += x * scale_hi * skew_tail_bracket(parts, mu, exps_hi, n)[1]
        if scale_lo:
            lo += x * scale_lo * skew_tail_bracket(parts, mu, exps_lo, n)[0]
    return lo, hi


def _series_sums(shape: Partition, ks: Sequence[float], s: Sequence[float], n: int):
    cells = shape.cells
    weights = [power_weights(w, n) for w in ks]
    rel = 0.0
    for ci, corner in enumerate(shape.corners):
        flat = cells.index(corner)
        fac, r = corner_factor(s[ci], n)
        weights[flat] = weights[flat] * fac
        rel += r
    return partial_sums(shape.parts, weights, dtype=np.longdouble), rel


def xi_series_oracle(shape: Partition, k: Tableau, s: Sequence[float], tol: float = 1e-8,
                     max_cutoff: int = 1 << 16) -> ValueWithBound:
    """xi as a sum over SSYT of prod_c a(m_c, s_c) / prod m^k, with a rigorous tail."""
    s = _check(shape, k, s, max_corners=None)
    parts = shape.parts
    ks = tuple(float(v) for v in k.values())
    n = 512
    while True:
        sums, rel = _series_sums(shape, ks, s, n)
        graph = strip_graph(parts)
        partial = float(sums[graph.states[-1]][-1])
        lo, hi = _series_tail_bracket(shape, ks, s, n, sums)
        value = partial + 0.5 * (lo + hi)
        bound = 0.5 * (hi - lo) + (rel + 4 * EPS_LONG * n * len(ks) + 8 * EPS * len(ks)) * abs(value)
        if bound < tol or n >= max_cutoff:
            return ValueWithBound(value, bound, Method.DERIVED_SERIES, {"cutoff": n})
        n *= 2
