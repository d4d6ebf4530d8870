"""Subspaces, their Pluecker coordinates, and the inverse coordinate matrix.

Column indices are 0-based: a subspace of dimension d+1 in an ambient space
of dimension n+1 has one coordinate D(j_0, ..., j_d) per strictly increasing
(d+1)-tuple of columns, stored in lexicographic order.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .algebra import GF, MatrixGF, det, rref
from .errors import PivotNotInvertible, ShapeError

FULL_CHECK_LIMIT = 1000
SAMPLED_CHECKS = 10_000


class Subspace:
    """Row space of a matrix over GF(q), held as its canonical RREF basis.

    Two subspaces are equal iff their RREF bases agree entrywise.
    """

    __slots__ = ("basis", "pivots", "_key")

    def __init__(self, generators: MatrixGF):
        R, pivots = rref(generators)
        self.basis = MatrixGF(R.field, R.data[: len(pivots)], R.ncols)
        self.pivots = pivots
        self._key = (R.field.q, R.ncols, self.basis.data)

    @classmethod
    def from_rows(cls, fld: GF, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "Subspace":
        return cls(MatrixGF(fld, rows, ncols))

    @property
    def field(self) -> GF:
        return self.basis.field

    @property
    def ambient_dim(self) -> int:
        return self.basis.ncols

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, pivots={self.pivots})"


def _sort_with_sign(idx: Sequence[int]) -> tuple[tuple[int, ...] | None, int]:
    """Sorted tuple and permutation parity; ``None`` if an index repeats."""
    if len(set(idx)) != len(idx):
        return None, 0
    lst = list(idx)
    swaps = 0
    # insertion sort to count transpositions
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            swaps += 1
            j -= 1
    return tuple(lst), swaps % 2


@dataclass(frozen=True)
class PlueckerVector:
    """All maximal minors of a basis matrix, keyed by increasing column tuples."""

    n_plus_1: int
    d_plus_1: int
    coords: Mapping[tuple[int, ...], int]
    field: GF

    def __getitem__(self, idx: Sequence[int]) -> int:
        """D at an arbitrary index sequence (alternating in its arguments)."""
        key, parity = _sort_with_sign(idx)
        if key is None:
            return 0
        v = self.coords[key]
        return self.field.neg(v) if parity else v

    def tuples(self) -> Iterator[tuple[int, ...]]:
        return iter(self.coords)

    def normalized(self) -> "PlueckerVector":
        """Scale so the first nonzero coordinate in lex order is 1."""
        lead = next((v for v in self.coords.values() if v), None)
        if lead is None:
            raise ValueError("zero vector is not a projective point")
        s = self.field.inv(lead)
        scaled = {k: self.field.mul(v, s) for k, v in self.coords.items()}
        return PlueckerVector(self.n_plus_1, self.d_plus_1, scaled, self.field)

    def projectively_equal(self, other: "PlueckerVector") -> bool:
        return (
            self.field is other.field
            and (self.n_plus_1, self.d_plus_1) == (other.n_plus_1, other.d_plus_1)
            and dict(self.normalized().coords) == dict(other.normalized().coords)
        )

    def to_json(self) -> list[dict]:
        return [{"tuple": list(k), "value": v} for k, v in self.normalized().coords.items()]


def minors(M: MatrixGF) -> dict[tuple[int, ...], int]:
    k = M.nrows
    return {cols: det(M.columns(cols)) for cols in itertools.combinations(range(M.ncols), k)}


def pluecker_coordinates(S: Subspace | MatrixGF) -> PlueckerVector:
    """Pluecker coordinates of a subspace, or of the rows of a full-rank matrix.

    A raw matrix is used as-is (not row reduced), so callers can observe how
    the coordinates scale under a change of basis.
    """
    M = S.basis if isinstance(S, Subspace) else S
    if M.nrows < 1:
        raise ShapeError("Pluecker coordinates need a subspace of dimension >= 1")
    coords = minors(M)
    if not any(coords.values()):
        raise ShapeError("rows are linearly dependent")
    return PlueckerVector(M.ncols, M.nrows, coords, M.field)


def _relation_value(P: PlueckerVector, js: Sequence[int], ks: Sequence[int]) -> int:
    f = P.field
    acc = 0
    for a in range(len(ks)):
        term = f.mul(P[tuple(js) + (ks[a],)], P[tuple(ks[:a]) + tuple(ks[a + 1 :])])
        acc = f.sub(acc, term) if a % 2 else f.add(acc, term)
    return acc


def quadratic_relation_choices(P: PlueckerVector, rng: random.Random | None = None):
    """Index choices (j, k) for the quadratic relations.

    Both sides of each relation are alternating in j and in k, so only
    increasing tuples are enumerated.  Above ``FULL_CHECK_LIMIT`` coordinates a
    fixed-seed sample is drawn instead.
    """
    n1, d = P.n_plus_1, P.d_plus_1 - 1
    if len(P.coords) <= FULL_CHECK_LIMIT:
        for js in itertools.combinations(range(n1), d):
            for ks in itertools.combinations(range(n1), d + 2):
                yield js, ks
        return
    rng = rng or random.Random(0)
    for _ in range(SAMPLED_CHECKS):
        yield tuple(sorted(rng.sample(range(n1), d))), tuple(sorted(rng.sample(range(n1), d + 2)))


def check_quadratic_relations(P: PlueckerVector) -> bool:
    """True iff every quadratic Pluecker relation evaluates to zero."""
    if P.d_plus_1 + 1 > P.n_plus_1:
        return True
    return all(_relation_value(P, js, ks) == 0 for js, ks in quadratic_relation_choices(P))


def coordinate_matrix(P: PlueckerVector, k: Sequence[int]) -> MatrixGF:
    """Recover the basis matrix that is the identity on columns ``k``.

    Entry (i, j) is D(k_0..k_{i-1}, j, k_{i+1}..k_d) / D(k_0..k_d).
    """
    k = tuple(k)
    if len(k) != P.d_plus_1:
        raise ShapeError(f"pivot tuple must have {P.d_plus_1} entries")
    f = P.field
    base = P[k]
    if base == 0:
        raise PivotNotInvertible(f"D{k} = 0")
    s = f.inv(base)
    rows = []
    for i in range(len(k)):
        row = []
        for j in range(P.n_plus_1):
            idx = k[:i] + (j,) + k[i + 1 :]
            row.append(f.mul(P[idx], s))
        rows.append(row)
    return MatrixGF(f, rows, P.n_plus_1)


def rref_coincidence(S: Subspace) -> bool:
    """Does the coordinate matrix at the RREF pivots reproduce the RREF basis?"""
    return coordinate_matrix(pluecker_coordinates(S), S.pivots) == S.basis


def num_coordinates(n_plus_1: int, d_plus_1: int) -> int:
    return math.comb(n_plus_1, d_plus_1)
