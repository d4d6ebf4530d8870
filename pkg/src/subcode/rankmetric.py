"""Linear rank-metric codes: Gabidulin (MRD) codes and Ferrers-diagram subcodes.

A code is an F_q-linear span of ``rows x cols`` matrices.  Gabidulin codes
are built from linearized polynomials over GF(q^M), M = max(rows, cols),
evaluated at the polynomial basis points 1, x, ..., x^(min-1); each value is
expanded to a length-M column over GF(q).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import (
    GF,
    MatrixGF,
    dot,
    field,
    find_primitive_modulus,
    lincomb,
    nullspace_basis,
    poly_mul_mod,
    rank_rows,
)
from .errors import BudgetExceeded, ParamError, ShapeError
from .schubert import FerrersPattern, gaussian_binomial

DEFAULT_RANK_BUDGET = 2**20


class ExtensionField:
    """GF(Q^M) as GF(Q)[x]/(f) with f the first primitive polynomial of degree M.

    Elements are length-M coefficient tuples over the base field.
    """

    def __init__(self, base: GF, degree: int):
        self.base = base
        self.degree = degree
        self.modulus = find_primitive_modulus(base, degree)

    def basis_element(self, s: int) -> tuple[int, ...]:
        v = [0] * self.degree
        v[s] = 1
        return tuple(v)

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return poly_mul_mod(self.base, a, b, self.modulus)

    def power(self, a: Sequence[int], e: int) -> tuple[int, ...]:
        result = self.basis_element(0)
        a = tuple(a)
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a: Sequence[int], i: int) -> tuple[int, ...]:
        """a^(Q^i)."""
        return self.power(a, self.base.q**i)


@functools.lru_cache(maxsize=None)
def extension_field(q: int, degree: int) -> ExtensionField:
    return ExtensionField(field(q), degree)


@dataclass(frozen=True)
class LinearMatrixCode:
    """Span over GF(q) of ``basis``; ``min_rank`` is declared or verified."""

    field: GF
    rows: int
    cols: int
    basis: tuple[MatrixGF, ...]
    min_rank: int | None = None
    verified: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def vectors(self) -> list[tuple[int, ...]]:
        return [tuple(x for r in B.data for x in r) for B in self.basis]

    def from_vector(self, vec: Sequence[int]) -> MatrixGF:
        c = self.cols
        return MatrixGF(self.field, [vec[i * c : (i + 1) * c] for i in range(self.rows)], c)

    def combine(self, coeffs: Sequence[int]) -> MatrixGF:
        return self.from_vector(lincomb(self.field, coeffs, self.vectors(), self.rows * self.cols))

    def codewords(self) -> Iterator[MatrixGF]:
        """Every element of the span, the zero matrix first."""
        vecs = self.vectors()
        n = self.rows * self.cols
        for coeffs in itertools.product(range(self.field.q), repeat=self.dim):
            yield self.from_vector(lincomb(self.field, coeffs, vecs, n))

    def parity_check(self) -> MatrixGF:
        n = self.rows * self.cols
        gen = MatrixGF(self.field, self.vectors(), n)
        return nullspace_basis(gen)

    def contains(self, M: MatrixGF) -> bool:
        vec = [x for r in M.data for x in r]
        return all(not dot(self.field, h, vec) for h in self.parity_check().data)

    def to_json(self) -> list[list[list[int]]]:
        return [B.tolist() for B in self.basis]


def gabidulin_dimension(rows: int, cols: int, delta_r: int) -> int:
    return max(rows, cols) * (min(rows, cols) - delta_r + 1)


@functools.lru_cache(maxsize=None)
def gabidulin_code(q: int, rows: int, cols: int, delta_r: int) -> LinearMatrixCode:
    """MRD code of ``rows x cols`` matrices over GF(q) with minimum rank ``delta_r``.

    Basis: for each q-degree i < min - delta_r + 1 and each GF(q)-basis element
    e_s of GF(q^M), the evaluation matrix of e_s * x^(q^i).
    """
    small, big = min(rows, cols), max(rows, cols)
    if not 1 <= delta_r <= small:
        raise ParamError(f"delta_r={delta_r} outside 1..{small} for {rows}x{cols}")
    fld = field(q)
    ext = extension_field(q, big)
    points = [ext.basis_element(j) for j in range(small)]
    k = small - delta_r + 1
    basis = []
    for i in range(k):
        frob = [ext.frobenius(g, i) for g in points]
        for s in range(big):
            e = ext.basis_element(s)
            columns = [ext.mul(e, g) for g in frob]  # each length `big`
            tall = MatrixGF(fld, zip(*columns), small)  # big x small
            basis.append(tall if rows >= cols else tall.transpose())
    return LinearMatrixCode(fld, rows, cols, tuple(basis), delta_r, False)


def full_matrix_space(fld: GF, rows: int, cols: int) -> LinearMatrixCode:
    basis = []
    for i, j in itertools.product(range(rows), range(cols)):
        m = [[0] * cols for _ in range(rows)]
        m[i][j] = 1
        basis.append(MatrixGF(fld, m, cols))
    return LinearMatrixCode(fld, rows, cols, tuple(basis), 1 if rows and cols else None, True)


def count_rank_matrices(q: int, rows: int, cols: int, r: int) -> int:
    """Number of ``rows x cols`` matrices over GF(q) of rank exactly ``r``."""
    if r == 0:
        return 1
    out = gaussian_binomial(rows, r, q)
    for i in range(r):
        out *= q**cols - q**i
    return out


def _min_rank_by_codewords(C: LinearMatrixCode) -> int:
    fld, cols = C.field, C.cols
    best = min(C.rows, C.cols)
    if fld.q == 2:
        # Gray-code walk over the span with matrices packed as row bitmasks
        packed = [[sum(1 << j for j, x in enumerate(r) if x) for r in B.data] for B in C.basis]
        cur = [0] * C.rows
        for g in range(1, 2**C.dim):
            bit = (g & -g).bit_length() - 1
            cur = [a ^ b for a, b in zip(cur, packed[bit])]
            basis: list[int] = []
            for v in cur:
                for b in basis:
                    v = min(v, v ^ b)
                if v:
                    basis.append(v)
            if len(basis) < best:
                best = len(basis)
                if best == 1:
                    break
        return best
    vecs = C.vectors()
    n = C.rows * cols
    for coeffs in itertools.product(range(fld.q), repeat=C.dim):
        if not any(coeffs):
            continue
        v = lincomb(fld, coeffs, vecs, n)
        r = rank_rows(fld, [v[i * cols : (i + 1) * cols] for i in range(C.rows)], cols)
        if r < best:
            best = r
            if best == 1:
                break
    return best


def _iter_rank_r(fld: GF, rows: int, cols: int, r: int) -> Iterator[list[int]]:
    """Row-major vectors of all ``rows x cols`` matrices of rank exactly ``r``.

    Each such matrix is uniquely ``A @ B`` with A the canonical (RREF-derived)
    basis of its column space and B an ``r x cols`` matrix of full row rank.
    """
    from .schubert import CellTuple, iter_cell_matrices

    col_spaces = []
    for t in itertools.combinations(range(rows), r):
        col_spaces.extend(M.transpose() for M in iter_cell_matrices(CellTuple(t, rows), fld))
    row_mats = [
        B
        for B in itertools.product(itertools.product(range(fld.q), repeat=cols), repeat=r)
        if rank_rows(fld, B, cols) == r
    ]
    for A in col_spaces:
        for B in row_mats:
            vec = []
            for arow in A.data:
                vec.extend(lincomb(fld, arow, B, cols))
            yield vec


def _min_rank_by_low_rank(C: LinearMatrixCode, budget: int) -> int:
    fld = C.field
    H = C.parity_check().data
    checked = 0
    for r in range(1, min(C.rows, C.cols) + 1):
        for vec in _iter_rank_r(fld, C.rows, C.cols, r):
            checked += 1
            if checked > budget:
                raise BudgetExceeded(f"low-rank scan exceeded {budget} matrices")
            if all(not dot(fld, h, vec) for h in H):
                return r
    raise AssertionError("nonzero code without a nonzero element")


def min_rank_distance(C: LinearMatrixCode, budget: int = DEFAULT_RANK_BUDGET, method: str = "auto") -> int | None:
    """Minimum rank over the nonzero elements of ``C``, by exhaustive search.

    Two exhaustive routes: scan every codeword (``"codewords"``), or scan
    every matrix of rank 1, 2, ... for membership via the parity checks
    (``"low-rank"``).  ``"auto"`` takes the cheaper one.  Returns ``None`` for
    the zero code.
    """
    if C.dim == 0:
        return None
    q = C.field.q
    n_code = q**C.dim
    if method == "auto":
        target = C.min_rank or 1
        # ranks below target are scanned in full; at target, expect a hit
        # about once per q^(redundancy) candidates
        low_cost = sum(count_rank_matrices(q, C.rows, C.cols, r) for r in range(1, target))
        low_cost += min(count_rank_matrices(q, C.rows, C.cols, target), q ** (C.rows * C.cols - C.dim))
        method = "codewords" if n_code <= low_cost else "low-rank"
    if method == "codewords":
        if n_code > budget:
            raise BudgetExceeded(f"{n_code} codewords exceed budget {budget}")
        return _min_rank_by_codewords(C)
    if method == "low-rank":
        return _min_rank_by_low_rank(C, budget)
    raise ValueError(f"unknown method {method!r}")


def verify_code(C: LinearMatrixCode, budget: int = DEFAULT_RANK_BUDGET) -> LinearMatrixCode:
    """Copy of ``C`` with ``min_rank`` replaced by the exhaustively found value."""
    return LinearMatrixCode(C.field, C.rows, C.cols, C.basis, min_rank_distance(C, budget), True)


def fdrm_subcode(C: LinearMatrixCode, F: FerrersPattern) -> LinearMatrixCode:
    """Largest subcode of ``C`` vanishing outside the free positions of ``F``.

    Kernel of the map sending coefficient vectors to the forbidden entries.
    """
    if (F.rows, F.cols) != C.shape:
        raise ShapeError(f"pattern box {(F.rows, F.cols)} vs codewords {C.shape}")
    fld = C.field
    forbidden = [
        i * C.cols + j
        for i in range(C.rows)
        for j in range(C.cols)
        if (i, j) not in F.free_positions
    ]
    vecs = C.vectors()
    constraint = MatrixGF(fld, [[v[p] for v in vecs] for p in forbidden], C.dim)
    kernel = nullspace_basis(constraint)
    n = C.rows * C.cols
    basis = tuple(C.from_vector(lincomb(fld, coeffs, vecs, n)) for coeffs in kernel.data)
    return LinearMatrixCode(fld, C.rows, C.cols, basis, C.min_rank, False)


def fdrm_dimension_bound(pattern_size: int, rows: int, cols: int, delta_r: int) -> int:
    """Guaranteed subcode dimension: free positions minus max(rows, cols)(delta_r - 1)."""
    return pattern_size - max(rows, cols) * (delta_r - 1)

