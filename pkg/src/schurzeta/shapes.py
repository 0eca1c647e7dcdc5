"""Partitions, Young tableaux, SSYT enumeration and the level-map expansion.

Cells are 1-based ``(row, col)`` pairs and tableaux are stored row by row.
A *level map* of a shape assigns levels ``1..p`` to its cells, weakly
increasing along rows and strictly increasing down columns, using every
level.  Grouping the semi-standard tableaux of a shape by the relative order
of their entries gives exactly one class per level map, which is what turns
a Schur multiple zeta value into a sum of ordinary multiple zeta values.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from numbers import Number
from typing import Any, Iterator, Mapping, NamedTuple, Sequence

__all__ = [
    "Cell",
    "Partition",
    "Tableau",
    "LevelMap",
    "Composition",
    "ShapeError",
    "corners",
    "conjugate",
    "enumerate_ssyt",
    "is_ssyt",
    "enumerate_level_maps",
    "decompose_to_mzv",
    "decompose_to_mzv_star",
    "parse_tableau",
]


class ShapeError(ValueError):
    """Malformed partition or tableau input."""


class Cell(NamedTuple):
    row: int
    col: int

    def __str__(self):
        return f"({self.row},{self.col})"


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ShapeError("empty partition")
        if any(p < 1 for p in parts):
            raise ShapeError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ShapeError(f"parts must be non-increasing: {parts}")

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"4,4,3,1"`` (spaces and surrounding brackets allowed)."""
        body = text.strip().strip("()[]")
        try:
            parts = tuple(int(tok) for tok in body.split(",") if tok.strip())
        except ValueError as exc:
            raise ShapeError(f"cannot parse shape {text!r}") from exc
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))

    def __contains__(self, cell) -> bool:
        i, j = cell
        return 1 <= i <= len(self.parts) and 1 <= j <= self.parts[i - 1]

    @property
    def cells(self) -> tuple[Cell, ...]:
        return _cells(self.parts)

    @property
    def corners(self) -> tuple[Cell, ...]:
        return _corners(self.parts)

    def conjugate(self) -> "Partition":
        return Partition(_conjugate(self.parts))

    def is_hook(self) -> bool:
        return all(p == 1 for p in self.parts[1:])


@lru_cache(maxsize=None)
def _cells(parts: tuple[int, ...]) -> tuple[Cell, ...]:
    return tuple(Cell(i + 1, j + 1) for i, p in enumerate(parts) for j in range(p))


@lru_cache(maxsize=None)
def _corners(parts: tuple[int, ...]) -> tuple[Cell, ...]:
    out = []
    for i, p in enumerate(parts):
        below = parts[i + 1] if i + 1 < len(parts) else 0
        if below < p:
            out.append(Cell(i + 1, p))
    return tuple(out)


def _conjugate(parts: Sequence[int]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > j) for j in range(parts[0]))


def corners(shape: Partition) -> tuple[Cell, ...]:
    """Cells with no cell below and none to the right, in row order."""
    return shape.corners


def conjugate(shape: Partition) -> Partition:
    return shape.conjugate()


@dataclass(frozen=True)
class Tableau:
    """A filling of a Young diagram, stored as a tuple of rows."""

    shape: Partition
    rows: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if tuple(len(r) for r in rows) != self.shape.parts:
            raise ShapeError(
                f"row lengths {tuple(len(r) for r in rows)} do not match shape {self.shape.parts}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "Tableau":
        rows = tuple(tuple(r) for r in rows)
        return cls(Partition(tuple(len(r) for r in rows)), rows)

    @classmethod
    def filled(cls, shape: Partition, value: Any) -> "Tableau":
        return cls(shape, tuple((value,) * p for p in shape.parts))

    @classmethod
    def from_cells(cls, shape: Partition, values: Mapping[Cell, Any]) -> "Tableau":
        missing = [c for c in shape.cells if c not in values]
        extra = [c for c in values if tuple(c) not in shape]
        if missing or extra:
            raise ShapeError(f"cell mismatch: missing {missing}, extra {extra}")
        return cls(shape, tuple(tuple(values[Cell(i + 1, j + 1)] for j in range(p))
                                for i, p in enumerate(shape.parts)))

    def __getitem__(self, cell) -> Any:
        i, j = cell
        if (i, j) not in self.shape:
            raise KeyError(cell)
        return self.rows[i - 1][j - 1]

    def values(self) -> tuple[Any, ...]:
        """Entries in row-major order (aligned with ``shape.cells``)."""
        return tuple(v for row in self.rows for v in row)

    def items(self):
        return zip(self.shape.cells, self.values())

    def transpose(self) -> "Tableau":
        conj = self.shape.conjugate()
        return Tableau(conj, tuple(tuple(self.rows[i][j] for i in range(p))
                                   for j, p in enumerate(conj.parts)))

    def replace(self, cell, value) -> "Tableau":
        i, j = cell
        rows = [list(r) for r in self.rows]
        rows[i - 1][j - 1] = value
        return Tableau(self.shape, rows)

    def map(self, fn) -> "Tableau":
        return Tableau(self.shape, tuple(tuple(fn(v) for v in r) for r in self.rows))

    def to_json(self) -> str:
        return json.dumps([list(r) for r in self.rows], separators=(",", ":"))

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(v) for v in r) + "]" for r in self.rows) + "]"


_TOKEN = re.compile(r"\s*([\[\],]|[^\[\],\s]+)\s*")


def parse_tableau(text: str, shape: Partition | None = None) -> Tableau:
    """Parse a row-major bracket list such as ``"[[2,1],[3]]"``.

    Integer and decimal tokens become numbers; anything else stays a string,
    which lets formal symbols pass through the decomposition.
    """
    pos, tokens = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ShapeError(f"cannot parse tableau {text!r}")
        tokens.append(m.group(1))
        pos = m.end()

    def atom(tok: str):
        for conv in (int, float):
            try:
                return conv(tok)
            except ValueError:
                pass
        return tok

    rows: list[list[Any]] = []
    depth, current = 0, None
    for tok in tokens:
        if tok == "[":
            depth += 1
            if depth == 2:
                current = []
            elif depth > 2:
                raise ShapeError(f"tableau nested too deeply: {text!r}")
        elif tok == "]":
            if depth == 2:
                rows.append(current)
                current = None
            depth -= 1
            if depth < 0:
                raise ShapeError(f"unbalanced brackets in {text!r}")
        elif tok == ",":
            continue
        else:
            if depth != 2:
                raise ShapeError(f"entry {tok!r} outside a row in {text!r}")
            current.append(atom(tok))
    if depth != 0 or not rows:
        raise ShapeError(f"unbalanced or empty tableau {text!r}")
    if any(not r for r in rows):
        raise ShapeError(f"empty row in {text!r}")
    if shape is not None:
        lengths = tuple(len(r) for r in rows)
        if lengths != shape.parts:
            # name the first offending cell
            for i, (got, want) in enumerate(zip(lengths + (0,) * len(shape), shape.parts + (0,) * len(rows))):
                if got != want:
                    cell = Cell(i + 1, min(got, want) + 1)
                    raise ShapeError(
                        f"tableau rows {lengths} do not match shape {shape}; first mismatch at cell {cell}"
                    )
        return Tableau(shape, rows)
    try:
        return Tableau.from_rows(rows)
    except ShapeError as exc:
        raise ShapeError(f"tableau rows do not form a partition: {text!r}") from exc


# ---------------------------------------------------------------------------
# semi-standard tableaux

def is_ssyt(t: Tableau) -> bool:
    for i, row in enumerate(t.rows):
        for j, v in enumerate(row):
            if not isinstance(v, int) or v < 1:
                return False
            if j and row[j - 1] > v:
                return False
            if i and t.rows[i - 1][j] >= v:
                return False
    return True


def _corner_bound_list(shape: Partition, corner_bounds) -> tuple[int, ...]:
    cs = shape.corners
    if isinstance(corner_bounds, int):
        bounds = (corner_bounds,) * len(cs)
    elif isinstance(corner_bounds, Mapping):
        bounds = tuple(corner_bounds[c] for c in cs)
    else:
        bounds = tuple(corner_bounds)
    if len(bounds) != len(cs):
        raise ShapeError(f"expected {len(cs)} corner bounds, got {len(bounds)}")
    return bounds


@lru_cache(maxsize=256)
def _cell_caps(parts: tuple[int, ...], bounds: tuple[int, ...]) -> tuple[int, ...]:
    # a cell is dominated by every corner weakly below-right of it
    caps = []
    for c in _cells(parts):
        cap = None
        for (r, col), b in zip(_corners(parts), bounds):
            if r >= c.row and col >= c.col:
                v = b - (r - c.row)
                cap = v if cap is None else min(cap, v)
        caps.append(cap)
    return tuple(caps)


def _ssyt_flat(parts: tuple[int, ...], bounds: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Row-major entry tuples of SSYT with corner entries bounded, in lex order."""
    cells = _cells(parts)
    caps = _cell_caps(parts, bounds)
    n = len(cells)
    offsets = [0]
    for p in parts:
        offsets.append(offsets[-1] + p)
    # flat index of the cell to the left / above, or -1
    left = [k - 1 if c.col > 1 else -1 for k, c in enumerate(cells)]
    above = [offsets[c.row - 2] + c.col - 1 if c.row > 1 else -1 for c in cells]
    vals = [0] * n

    def rec(k):
        if k == n:
            yield tuple(vals)
            return
        lo = 1
        if left[k] >= 0:
            lo = vals[left[k]]
        if above[k] >= 0:
            lo = max(lo, vals[above[k]] + 1)
        for v in range(lo, caps[k] + 1):
            vals[k] = v
            yield from rec(k + 1)

    yield from rec(0)


def enumerate_ssyt(shape: Partition, corner_bounds) -> Iterator[Tableau]:
    """Semi-standard tableaux whose entry at each corner is at most its bound.

    ``corner_bounds`` is an int (same bound everywhere), a sequence aligned
    with ``shape.corners`` or a mapping keyed by corner cell.  Tableaux come
    out in lexicographic order of their row-major entries.
    """
    bounds = _corner_bound_list(shape, corner_bounds)
    if any(b < 1 for b in bounds):
        return
    for flat in _ssyt_flat(shape.parts, bounds):
        rows, pos = [], 0
        for p in shape.parts:
            rows.append(flat[pos:pos + p])
            pos += p
        yield Tableau(shape, tuple(rows))


# ---------------------------------------------------------------------------
# level maps

@dataclass(frozen=True)
class LevelMap:
    """Levels ``1..depth`` on the cells of a shape, aligned with ``shape.cells``."""

    shape: Partition
    levels: tuple[int, ...]
    depth: int

    def level(self, cell) -> int:
        return self.levels[self.shape.cells.index(Cell(*cell))]

    def as_dict(self) -> dict[Cell, int]:
        return dict(zip(self.shape.cells, self.levels))

    def blocks(self) -> list[list[Cell]]:
        out: list[list[Cell]] = [[] for _ in range(self.depth)]
        for c, lv in zip(self.shape.cells, self.levels):
            out[lv - 1].append(c)
        return out


def _pad(parts: Sequence[int], n: int) -> tuple[int, ...]:
    return tuple(parts) + (0,) * (n - len(parts))


def horizontal_strips(outer: tuple[int, ...], inner: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All nu with inner <= nu <= outer and nu/inner a horizontal strip (nu != inner).

    Both partitions are padded to the same length.
    """
    n = len(outer)
    out = []

    def rec(i, acc):
        if i == n:
            nu = tuple(acc)
            if nu != inner:
                out.append(nu)
            return
        hi = outer[i] if i == 0 else min(outer[i], inner[i - 1])
        for v in range(inner[i], hi + 1):
            acc.append(v)
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    return out


@lru_cache(maxsize=None)
def _level_chains(outer: tuple[int, ...], inner: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Chains inner = mu_0 < mu_1 < ... < mu_p = outer of horizontal strips."""
    if outer == inner:
        return ((inner,),)
    chains = []
    for nu in horizontal_strips(outer, inner):
        for tail in _level_chains(outer, nu):
            chains.append((inner,) + tail)
    return tuple(chains)


def skew_cells(outer: tuple[int, ...], inner: tuple[int, ...]) -> tuple[Cell, ...]:
    inner = _pad(inner, len(outer))
    return tuple(Cell(i + 1, j + 1) for i, p in enumerate(outer) for j in range(inner[i], p))


@lru_cache(maxsize=None)
def skew_level_maps(outer: tuple[int, ...], inner: tuple[int, ...] = ()) -> tuple[tuple[int, ...], ...]:
    """Level vectors for the skew shape outer/inner, aligned with skew_cells.

    Sorted by depth (deepest first), then lexicographically.
    """
    inner = _pad(inner, len(outer))
    cells = skew_cells(outer, inner)
    index = {c: k for k, c in enumerate(cells)}
    maps = []
    for chain in _level_chains(outer, inner):
        levels = [0] * len(cells)
        for lv, (a, b) in enumerate(zip(chain, chain[1:]), start=1):
            for i in range(len(outer)):
                for j in range(a[i], b[i]):
                    levels[index[Cell(i + 1, j + 1)]] = lv
        maps.append(tuple(levels))
    maps.sort(key=lambda lv: (-max(lv, default=0), lv))
    return tuple(maps)


def enumerate_level_maps(shape: Partition) -> Iterator[LevelMap]:
    """Every level map of the shape: deepest first, then lexicographic in row-major order."""
    for levels in skew_level_maps(shape.parts):
        yield LevelMap(shape, levels, max(levels))


# ---------------------------------------------------------------------------
# decomposition into multiple zeta (star) values

@dataclass(frozen=True)
class Composition:
    """An index ``(t_1, ..., t_r)`` for a multiple zeta (star) value, with a sign."""

    parts: tuple[Any, ...]
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ShapeError("composition must be non-empty")
        if self.sign not in (1, -1):
            raise ShapeError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def depth(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        body = "(" + ",".join(str(p) for p in self.parts) + ")"
        return ("-" if self.sign < 0 else "+") + body


def _combine(values: Sequence[Any]) -> Any:
    if all(isinstance(v, Number) for v in values):
        total = values[0]
        for v in values[1:]:
            total = total + v
        return total
    return "+".join(str(v) for v in values)


def _decompose(shape: Partition, s: Tableau, sign_of_depth) -> list[Composition]:
    if s.shape != shape:
        raise ShapeError(f"tableau shape {s.shape} does not match {shape}")
    values = s.values()
    out = []
    for lm in enumerate_level_maps(shape):
        groups: list[list[Any]] = [[] for _ in range(lm.depth)]
        for v, lv in zip(values, lm.levels):
            groups[lv - 1].append(v)
        out.append(Composition(tuple(_combine(g) for g in groups), sign_of_depth(lm.depth)))
    return out


def decompose_to_mzv(shape: Partition, s: Tableau) -> list[Composition]:
    """Expand zeta_shape(s) as a sum of multiple zeta values, one term per level map.

    Equal compositions coming from different level maps are kept as separate
    entries.
    """
    return _decompose(shape, s, lambda depth: 1)


def decompose_to_mzv_star(shape: Partition, s: Tableau) -> list[Composition]:
    """Signed zeta-star expansion read off the conjugate shape and transposed tableau."""
    n = shape.weight
    conj = shape.conjugate()
    return _decompose(conj, s.transpose(), lambda depth: -1 if (n - depth) % 2 else 1)
