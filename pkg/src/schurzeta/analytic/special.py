"""Exact values of xi and eta at non-positive integers, read off the B and C tables."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..bernoulli import Kind, bernoulli_table
from ..shapes import Partition, Tableau
from ..values import NumericDomainError

__all__ = ["xi_special_value", "eta_special_value"]


@lru_cache(maxsize=256)
def _table(shape: Partition, k: Tableau, orders: tuple[int, ...], kind: Kind):
    return bernoulli_table(shape, k, orders, kind)


def _orders(shape: Partition, k: Tableau, m: Sequence[int]) -> tuple[int, ...]:
    if k.shape != shape:
        raise NumericDomainError(f"weight tableau has shape {k.shape.parts}, expected {shape.parts}")
    m = tuple(int(v) for v in m)
    if len(m) != len(shape.corners):
        raise NumericDomainError(f"need one index per corner ({len(shape.corners)}), got {len(m)}")
    if any(v < 0 for v in m):
        raise NumericDomainError(f"indices must be non-negative, got {m}")
    return m


def xi_special_value(shape: Partition, k: Tableau, m: Sequence[int]) -> Fraction:
    """xi(k; -m_1, ..., -m_c) = (-1)^{sum m} C_m."""
    m = _orders(shape, k, m)
    return (-1) ** sum(m) * _table(shape, k, m, Kind.C)[m]


def eta_special_value(shape: Partition, k: Tableau, m: Sequence[int]) -> Fraction:
    """eta(k; -m_1, -m_2) = B_{m_1, m_2} for a hook with two corners.

    The single box is accepted too; there this is the classical eta_k(-m) = B_m^(k).
    """
    single = shape.parts == (1,)
    if not single and (not shape.is_hook() or len(shape.corners) != 2):
        raise NumericDomainError(f"eta special values need a hook with two corners, got {shape.parts}")
    m = _orders(shape, k, m)
    return _table(shape, k, m, Kind.B)[m]
