"""Numeric results that carry their own error estimate."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

__all__ = ["Method", "ValueWithBound", "NumericDomainError"]


class NumericDomainError(ValueError):
    """Input outside the region where an evaluation is defined."""


class Method(str, Enum):
    TRUNCATED_SUM = "truncated-sum"
    QUADRATURE = "quadrature"
    DERIVED_SERIES = "derived-series"
    TABLE_LOOKUP = "table-lookup"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ValueWithBound:
    value: float
    bound: float
    method: Method
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "bound", float(self.bound))
        object.__setattr__(self, "method", Method(self.method))
        if not math.isfinite(self.bound) or self.bound < 0:
            raise ValueError(f"bound must be finite and non-negative, got {self.bound}")
        if self.method is Method.TABLE_LOOKUP and self.bound != 0:
            raise ValueError("table lookups are exact")

    def agrees_with(self, other: "ValueWithBound | float", slack: float = 0.0) -> bool:
        if isinstance(other, ValueWithBound):
            return abs(self.value - other.value) <= self.bound + other.bound + slack
        return abs(self.value - other) <= self.bound + slack

    def to_dict(self) -> dict:
        out = {"value": self.value, "bound": self.bound, "method": self.method.value}
        out.update(self.info)
        return out
