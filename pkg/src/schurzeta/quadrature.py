"""Composite Gauss-Legendre rules on fixed panel grids.

Everything here is deterministic: node placement depends only on the panel
edges and the node count, so repeated runs give bit-identical sums.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre

__all__ = [
    "QuadratureSpec",
    "gauss_legendre",
    "PanelRule",
    "graded_edges",
    "cumulative_matrix",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and grid policy for the panel quadratures.

    ``head`` is the left end of the graded grid (the piece ``[0, head]`` is
    bounded analytically), ``grading`` the ratio between consecutive panels
    near zero, ``cutoff`` the right end (the rest is an analytic tail bound),
    ``nodes`` and ``check_nodes`` the two per-panel Gauss-Legendre orders
    whose difference serves as the quadrature error estimate.
    """

    abs_tol: float = 1e-8
    rel_tol: float = 1e-10
    head: float = 4.0 ** -15
    grading: float = 4.0
    cutoff: float = 30.0
    panel_width: float = 2.0
    nodes: int = 8
    check_nodes: int = 12
    max_terms: int = 1 << 14

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if not (0 < self.head < 1 < self.cutoff):
            raise ValueError("need 0 < head < 1 < cutoff")
        if self.grading <= 1 or self.panel_width <= 0:
            raise ValueError("grading must exceed 1 and panel width must be positive")
        if self.nodes < 2 or self.check_nodes < 2 or self.nodes == self.check_nodes:
            raise ValueError("need two different node counts >= 2")


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def graded_edges(head: float, grading: float, split: float, cutoff: float, width: float) -> np.ndarray:
    """Panel edges: geometric from ``head`` up to ``split``, then uniform up to ``cutoff``."""
    edges = [split]
    while edges[-1] / grading > head * (1 + 1e-12):
        edges.append(edges[-1] / grading)
    edges.append(head)
    left = sorted(set(edges))
    n_right = max(1, int(np.ceil((cutoff - split) / width)))
    right = list(np.linspace(split, cutoff, n_right + 1)[1:])
    return np.array(left + right)


@dataclass(frozen=True)
class PanelRule:
    """Gauss-Legendre with ``n`` nodes on every panel ``[edges[i], edges[i+1]]``."""

    edges: np.ndarray
    n: int

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.edges) - 1, self.n

    @property
    def half_widths(self) -> np.ndarray:
        return 0.5 * np.diff(self.edges)

    @property
    def nodes(self) -> np.ndarray:
        """(panels, n) array."""
        x, _ = gauss_legendre(self.n)
        mid = 0.5 * (self.edges[1:] + self.edges[:-1])
        return mid[:, None] + self.half_widths[:, None] * x[None, :]

    @property
    def weights(self) -> np.ndarray:
        _, w = gauss_legendre(self.n)
        return self.half_widths[:, None] * w[None, :]

    def integrate(self, values: np.ndarray) -> float:
        return float(np.sum(self.weights * values))

    def cumulative_from_right(self, values: np.ndarray, right_value: float = 0.0) -> np.ndarray:
        """F(x) = right_value + integral from x to the last edge, at every node."""
        w = self.weights
        full = np.sum(w * values, axis=1)
        # value of F at the right edge of each panel
        after = np.concatenate([np.cumsum(full[::-1])[::-1][1:], [0.0]]) + right_value
        inside = (values @ cumulative_matrix(self.n).T) * self.half_widths[:, None]
        return after[:, None] + full[:, None] - inside

    def cumulative_from_left(self, values: np.ndarray, left_value: float = 0.0) -> np.ndarray:
        """F(x) = left_value + integral from the first edge to x, at every node.

        Accumulating from the left keeps F relatively accurate where it is tiny.
        """
        full = np.sum(self.weights * values, axis=1)
        before = np.concatenate([[0.0], np.cumsum(full)[:-1]]) + left_value
        inside = (values @ cumulative_matrix(self.n).T) * self.half_widths[:, None]
        return before[:, None] + inside


@lru_cache(maxsize=64)
def cumulative_matrix(n: int) -> np.ndarray:
    """C[i, j] = integral from -1 to x_i of the j-th Lagrange basis polynomial."""
    x, _ = gauss_legendre(n)
    coeffs = np.linalg.inv(legendre.legvander(x, n - 1))
    out = np.empty((n, n))
    for j in range(n):
        out[:, j] = legendre.legval(x, legendre.legint(coeffs[:, j], lbnd=-1))
    out.flags.writeable = False
    return out
