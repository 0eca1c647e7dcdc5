"""Pass/fail records for identity checks, exact or within error bounds."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["IdentityReport", "format_fraction"]


def format_fraction(x: Fraction) -> str:
    """Always ``p/q`` so that integers and fractions parse the same way."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class IdentityReport:
    identity: str
    parameters: dict
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def counterexample(self):
        return self.mismatches[0] if self.mismatches else None

    def record(self, point, lhs, rhs) -> None:
        self.checked += 1
        if lhs != rhs:
            self.mismatches.append({"point": list(point), "lhs": format_fraction(lhs), "rhs": format_fraction(rhs)})

    def record_numeric(self, point, lhs, rhs, slack: float = 0.0) -> None:
        """Two ``ValueWithBound`` results agree when they differ by at most their bounds."""
        self.checked += 1
        if not lhs.agrees_with(rhs, slack):
            self.mismatches.append({"point": list(point), "lhs": [lhs.value, lhs.bound],
                                    "rhs": [rhs.value, rhs.bound]})

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "parameters": self.parameters,
            "checked": self.checked,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }
