"""Schur multiple zeta values, multiple zeta values and zeta-star values."""
from __future__ import annotations

from ..shapes import Composition, Partition, Tableau, decompose_to_mzv, decompose_to_mzv_star
from ..transfer import schur_power_sum
from ..values import Method, NumericDomainError, ValueWithBound

__all__ = [
    "in_convergence_domain",
    "mzv_eval",
    "mzv_star_eval",
    "schur_zeta_eval",
    "schur_zeta_via_decomposition",
]

_MAX_CUTOFF = 1 << 23


def in_convergence_domain(shape: Partition, s: Tableau) -> bool:
    corner_set = set(shape.corners)
    for cell, v in s.items():
        v = float(v)
        if cell in corner_set and not v > 1:
            return False
        if not v >= 1:
            return False
    return True


def _checked_index(index) -> tuple[float, ...]:
    parts = tuple(index.parts) if isinstance(index, Composition) else tuple(index)
    try:
        parts = tuple(float(p) for p in parts)
    except (TypeError, ValueError):
        raise NumericDomainError(f"index {index!r} is not numeric") from None
    if not parts:
        raise NumericDomainError("empty index")
    if any(p < 1 for p in parts) or not parts[-1] > 1:
        raise NumericDomainError(f"index {parts} is not admissible (entries >= 1, last > 1)")
    return parts


def _power_sum(parts: tuple[int, ...], exponents: tuple[float, ...], tol: float) -> ValueWithBound:
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = 256
    while True:
        r = schur_power_sum(parts, exponents, n)
        if r.bound < tol or n >= _MAX_CUTOFF:
            return ValueWithBound(r.value, r.bound, Method.TRUNCATED_SUM, {"cutoff": n})
        n *= 2


def mzv_eval(index, tol: float = 1e-10) -> ValueWithBound:
    """zeta(s_1, ..., s_r) summed over 1 <= m_1 < ... < m_r."""
    s = _checked_index(index)
    return _power_sum((1,) * len(s), s, tol)


def mzv_star_eval(index, tol: float = 1e-10) -> ValueWithBound:
    """zeta-star: the same sum over 1 <= m_1 <= ... <= m_r."""
    s = _checked_index(index)
    return _power_sum((len(s),), s, tol)


def schur_zeta_eval(shape: Partition, s: Tableau, tol: float = 1e-10) -> ValueWithBound:
    if s.shape != shape:
        raise NumericDomainError(f"exponent tableau has shape {s.shape.parts}, expected {shape.parts}")
    if not in_convergence_domain(shape, s):
        raise NumericDomainError(
            f"s = {s} is outside the convergence domain (need >= 1 off corners, > 1 on corners "
            f"{', '.join(str(c) for c in shape.corners)})")
    return _power_sum(shape.parts, tuple(float(v) for v in s.values()), tol)


def schur_zeta_via_decomposition(shape: Partition, s: Tableau, tol: float = 1e-10,
                                 star: bool = False) -> ValueWithBound:
    """Sum of (signed) MZV or zeta-star values given by the level-map expansion.

    ``tol`` applies to every term; the reported bound is the sum of term bounds.
    """
    if s.shape != shape:
        raise NumericDomainError(f"exponent tableau has shape {s.shape.parts}, expected {shape.parts}")
    if not in_convergence_domain(shape, s):
        raise NumericDomainError(f"s = {s} is outside the convergence domain")
    terms = decompose_to_mzv_star(shape, s) if star else decompose_to_mzv(shape, s)
    evaluate = mzv_star_eval if star else mzv_eval
    value = bound = 0.0
    for comp in terms:
        # the expansion of an admissible s only produces admissible indices
        assert comp.parts[-1] > 1, comp
        r = evaluate(comp, tol)
        value += comp.sign * r.value
        bound += r.bound
    return ValueWithBound(value, bound, Method.TRUNCATED_SUM,
                          {"terms": [str(c) for c in terms]})
