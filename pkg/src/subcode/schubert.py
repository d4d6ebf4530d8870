"""Schubert cells of the Grassmannians of GF(q)^n, indexed by RREF pivot tuples.

Indices are 0-based internally.  ``CellTuple.one_based`` gives the usual
1-based tuple ``(a_1, ..., a_d)`` used for display and for the dimension
formula ``n*d - sum(a_i) - C(d, 2)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .algebra import GF, MatrixGF
from .errors import EmptyComplement, EmptyProfile, ShapeError
from .pluecker import Subspace


@dataclass(frozen=True, order=False)
class CellTuple:
    indices: tuple[int, ...]
    n: int

    def __post_init__(self):
        idx = tuple(self.indices)
        object.__setattr__(self, "indices", idx)
        if not 1 <= len(idx) <= self.n:
            raise ShapeError(f"cell tuple length {len(idx)} outside 1..{self.n}")
        if any(b <= a for a, b in zip(idx, idx[1:])) or idx[0] < 0 or idx[-1] >= self.n:
            raise ShapeError(f"{idx} is not strictly increasing within 0..{self.n - 1}")

    @classmethod
    def from_one_based(cls, indices: Iterable[int], n: int) -> "CellTuple":
        return cls(tuple(i - 1 for i in indices), n)

    @property
    def d(self) -> int:
        return len(self.indices)

    @property
    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.indices)

    @property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << i
        return m

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.d, self.indices)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.one_based)) + "}"


@dataclass(frozen=True)
class FerrersPattern:
    """Free positions inside a ``rows x cols`` box.

    ``columns`` records, when the pattern comes from a cell, which ambient
    column each box column stands for.
    """

    rows: int
    cols: int
    free_positions: frozenset[tuple[int, int]]
    columns: tuple[int, ...] | None = None

    @classmethod
    def rectangle(cls, rows: int, cols: int) -> "FerrersPattern":
        return cls(rows, cols, frozenset(itertools.product(range(rows), range(cols))))

    @property
    def size(self) -> int:
        return len(self.free_positions)

    def row_counts(self) -> list[int]:
        counts = [0] * self.rows
        for i, _ in self.free_positions:
            counts[i] += 1
        return counts

    def is_ferrers(self) -> bool:
        """Right-justified rows whose lengths never grow going down."""
        counts = self.row_counts()
        for i, c in enumerate(counts):
            if {j for r, j in self.free_positions if r == i} != set(range(self.cols - c, self.cols)):
                return False
        return all(a >= b for a, b in zip(counts, counts[1:]))

    def trimmed(self) -> "FerrersPattern":
        """Drop empty rows and columns (the dot diagram itself)."""
        rows = sorted({i for i, _ in self.free_positions})
        cols = sorted({j for _, j in self.free_positions})
        ri = {r: k for k, r in enumerate(rows)}
        ci = {c: k for k, c in enumerate(cols)}
        cols_amb = tuple(self.columns[c] for c in cols) if self.columns is not None else None
        return FerrersPattern(
            len(rows), len(cols), frozenset((ri[i], ci[j]) for i, j in self.free_positions), cols_amb
        )

    def render(self, dot: str = "•") -> list[str]:
        return [
            "".join(dot if (i, j) in self.free_positions else " " for j in range(self.cols)).rstrip()
            for i in range(self.rows)
        ]


@dataclass(frozen=True)
class ProfileVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("profile vectors are binary")

    @classmethod
    def from_string(cls, s: str) -> "ProfileVector":
        return cls(tuple(int(c) for c in s.strip()))

    @classmethod
    def from_cell(cls, t: CellTuple) -> "ProfileVector":
        return cls(tuple(int(i in t.indices) for i in range(t.n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        return sum(self.bits)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits) if b)

    def cell(self) -> CellTuple:
        if not self.weight:
            raise EmptyProfile("the zero vector has no cell")
        return CellTuple(self.support, self.n)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


@dataclass(frozen=True)
class ProfileMatrix:
    """RREF skeleton: leading ones at ``pivots``, dots at ``dots`` (ambient coords)."""

    k: int
    n: int
    pivots: tuple[int, ...]
    dots: frozenset[tuple[int, int]]

    def render(self, dot: str = "•") -> list[list[str]]:
        out = []
        for i in range(self.k):
            row = []
            for j in range(self.n):
                if j == self.pivots[i]:
                    row.append("1")
                elif (i, j) in self.dots:
                    row.append(dot)
                else:
                    row.append("0")
            out.append(row)
        return out


def cell_of(S: Subspace) -> CellTuple:
    return CellTuple(S.pivots, S.ambient_dim)


def cell_dimension(t: CellTuple) -> int:
    d = t.d
    return t.n * d - sum(t.one_based) - math.comb(d, 2)


def max_cell_dimension(n: int, d: int) -> int:
    """Largest cell dimension among d-tuples, d(n - d), at the principal tuple."""
    return d * (n - d)


def cell_matrix(t: CellTuple, fld: GF) -> MatrixGF:
    rows = [[0] * t.n for _ in range(t.d)]
    for i, c in enumerate(t.indices):
        rows[i][c] = 1
    return MatrixGF(fld, rows, t.n)


def complement(t: CellTuple) -> CellTuple:
    if t.d == t.n:
        raise EmptyComplement(f"{t} is the whole space")
    s = set(t.indices)
    return CellTuple(tuple(j for j in range(t.n) if j not in s), t.n)


def complement_indices(t: CellTuple) -> tuple[int, ...]:
    s = set(t.indices)
    return tuple(j for j in range(t.n) if j not in s)


def asterisk_pattern(t: CellTuple) -> FerrersPattern:
    """Free entries of the cell's RREF shape, in the ``d x (n-d)`` box of
    non-pivot columns (ascending)."""
    comp = complement_indices(t)
    free = frozenset(
        (i, jj) for i, piv in enumerate(t.indices) for jj, c in enumerate(comp) if c > piv
    )
    return FerrersPattern(t.d, len(comp), free, comp)


def profile_matrix(v: ProfileVector) -> ProfileMatrix:
    if v.weight == 0:
        raise EmptyProfile("profile matrix of the zero vector")
    t = v.cell()
    pat = asterisk_pattern(t)
    dots = frozenset((i, pat.columns[jj]) for i, jj in pat.free_positions)
    return ProfileMatrix(v.weight, v.n, t.indices, dots)


def ferrers_diagram(v: ProfileVector) -> FerrersPattern:
    """The dot diagram F(v): free positions with empty rows/columns removed."""
    return asterisk_pattern(v.cell()).trimmed()


def enumerate_cells(n: int) -> list[CellTuple]:
    """All ``2^n - 1`` cells, by ascending length then lexicographically."""
    if n < 1:
        raise ShapeError("n must be >= 1")
    return [CellTuple(c, n) for d in range(1, n + 1) for c in itertools.combinations(range(n), d)]


def trailing_tuple(t: CellTuple) -> CellTuple:
    """Trailing-ones tuple (1-based b_i = n + 1 - a_{d+1-i}) of the same cell
    after reversing the coordinate order; its dimension ``sum(b_i) - C(d+1, 2)``
    equals :func:`cell_dimension`."""
    return CellTuple(tuple(sorted(t.n - 1 - i for i in t.indices)), t.n)


def trailing_dimension(beta: CellTuple) -> int:
    return sum(beta.one_based) - math.comb(beta.d + 1, 2)


def iter_cell_matrices(t: CellTuple, fld: GF) -> Iterator[MatrixGF]:
    """Every RREF basis in the cell: all fillings of the free positions."""
    pat = asterisk_pattern(t)
    free = sorted(pat.free_positions)
    base = cell_matrix(t, fld).tolist()
    for values in itertools.product(range(fld.q), repeat=len(free)):
        rows = [r[:] for r in base]
        for (i, jj), v in zip(free, values):
            rows[i][pat.columns[jj]] = v
        yield MatrixGF(fld, rows, t.n)


def iter_cell(t: CellTuple, fld: GF) -> Iterator[Subspace]:
    for M in iter_cell_matrices(t, fld):
        yield Subspace(M)


def enumerate_subspaces(fld: GF, n: int, dims: Sequence[int] | None = None) -> list[Subspace]:
    """All nonzero subspaces of GF(q)^n (optionally only the given dimensions)."""
    out = []
    for t in enumerate_cells(n):
        if dims is None or t.d in dims:
            out.extend(iter_cell(t, fld))
    return out


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
