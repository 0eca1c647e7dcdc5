"""Schur multiple zeta functions and Schur type poly-Bernoulli numbers."""
from .bernoulli import BernoulliTable, Kind, b_from_c, bernoulli_table, c_from_b, hook_b_stirling
from .polylog import multiple_polylog_eval, schur_polylog_eval, schur_polylog_series
from .quadrature import QuadratureSpec
from .reports import IdentityReport
from .shapes import (Composition, Partition, ShapeError, Tableau, corners, decompose_to_mzv,
                     decompose_to_mzv_star, enumerate_ssyt, parse_tableau)
from .values import Method, NumericDomainError, ValueWithBound

__version__ = "0.1.0"

__all__ = [
    "Partition", "Tableau", "Composition", "ShapeError", "corners", "enumerate_ssyt", "parse_tableau",
    "decompose_to_mzv", "decompose_to_mzv_star", "schur_polylog_series", "schur_polylog_eval",
    "multiple_polylog_eval", "Kind", "BernoulliTable", "bernoulli_table", "b_from_c", "c_from_b",
    "hook_b_stirling", "IdentityReport", "QuadratureSpec", "Method", "ValueWithBound",
    "NumericDomainError",
]
