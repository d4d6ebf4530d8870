"""Exact arithmetic in GF(q) and dense matrix linear algebra over it.

Field elements are stored as plain ints.  For a prime field the int is the
residue mod p; for GF(p^m) it is the coefficient vector over GF(p) packed
base p (``c0 + c1*p + ... + c_{m-1}*p^(m-1)``) relative to a fixed default
reduction polynomial.  ``FieldElement`` wraps an int for callers who want
operator syntax; the matrix routines work on raw ints for speed.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DivisionByZero, FieldMismatch, ShapeError

MAX_FIELD_ORDER = 256


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_primitive_modulus(base: "GF", m: int) -> tuple[int, ...]:
    """Return the first monic primitive polynomial of degree ``m`` over ``base``.

    Candidates are tried in increasing order of their packed low coefficients,
    so the result is deterministic.  Coefficients are returned low to high,
    including the leading 1.  Primitivity (x generates the multiplicative
    group of base[x]/f) implies irreducibility.
    """
    Q = base.q
    order = Q**m - 1
    exps = [order // r for r in _prime_factors(order)] if order > 1 else []
    for code in range(1, Q**m):
        low = []
        c = code
        for _ in range(m):
            low.append(c % Q)
            c //= Q
        if low[0] == 0:
            continue
        f = tuple(low) + (1,)
        x = (0, 1) + (0,) * (m - 2) if m > 1 else (base.neg(f[0]),)
        if _poly_pow_mod(base, x, order, f) != _poly_one(m):
            continue
        if all(_poly_pow_mod(base, x, e, f) != _poly_one(m) for e in exps):
            return f
    raise ValueError(f"no primitive polynomial of degree {m} over GF({Q})")


def _poly_one(m: int) -> tuple[int, ...]:
    return (1,) + (0,) * (m - 1)


def poly_mul_mod(base: "GF", a: Sequence[int], b: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    """Multiply two residues (length-m coefficient tuples) modulo monic ``f``."""
    m = len(f) - 1
    prod = [0] * (2 * m - 1)
    add, mul = base.add, base.mul
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = add(prod[i + j], mul(ai, bj))
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(m):
                prod[k - m + i] = base.sub(prod[k - m + i], mul(c, f[i]))
    return tuple(prod[:m]) if m > 1 else (prod[0],)


def _poly_pow_mod(base: "GF", a: tuple[int, ...], e: int, f: Sequence[int]) -> tuple[int, ...]:
    result = _poly_one(len(f) - 1)
    while e:
        if e & 1:
            result = poly_mul_mod(base, result, a, f)
        a = poly_mul_mod(base, a, a, f)
        e >>= 1
    return result


class GF:
    """The finite field of order ``q`` with precomputed operation tables.

    Use :func:`field` to obtain shared instances.
    """

    def __init__(self, q: int):
        p, m = _factor_prime_power(q)
        if q > MAX_FIELD_ORDER:
            raise ValueError(f"fields larger than {MAX_FIELD_ORDER} are not supported")
        self.q, self.p, self.m = q, p, m
        if m == 1:
            self.modulus: tuple[int, ...] | None = None
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self._mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            prime = field(p)
            self.modulus = find_primitive_modulus(prime, m)
            self._add = [
                [self.from_coeffs([(x + y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))]) for b in range(q)]
                for a in range(q)
            ]
            # exp/log tables from the primitive element x
            exp = [1]
            x = self.from_coeffs([0, 1] + [0] * (m - 2))
            cur = (1,) + (0,) * (m - 1)
            xc = self.coeffs(x)
            for _ in range(q - 2):
                cur = poly_mul_mod(prime, cur, xc, self.modulus)
                exp.append(self.from_coeffs(cur))
            log = {v: i for i, v in enumerate(exp)}
            self._mul = [[0] * q for _ in range(q)]
            for a in range(1, q):
                for b in range(1, q):
                    self._mul[a][b] = exp[(log[a] + log[b]) % (q - 1)]
        self._neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        self._inv = [0] + [next(b for b in range(1, q) if self._mul[a][b] == 1) for a in range(1, q)]
        self._sub = [[self._add[a][self._neg[b]] for b in range(q)] for a in range(q)]

    # packed-int <-> coefficient vector over GF(p)
    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, cs: Iterable[int]) -> int:
        v = 0
        for c in reversed(list(cs)):
            v = v * self.p + c
        return v

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in GF({self.q})")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.q if self.m == 1 else value, self)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field, (self.q,))


@functools.lru_cache(maxsize=None)
def field(q: int) -> GF:
    """Shared GF(q) instance; GF(4) uses x^2 + x + 1."""
    return GF(q)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: GF

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not a canonical element of {self.field}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field(other).value
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field.add(self.value, self._coerce(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field.sub(self.value, self._coerce(other)), self.field)

    def __mul__(self, other):
        return FieldElement(self.field.mul(self.value, self._coerce(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field.div(self.value, self._coerce(other)), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field}({self.value})"


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "mul", "inv", "neg"}; unary ops ignore ``b``."""
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if b.field is not a.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown field operation {op!r}")


class MatrixGF:
    """Immutable dense matrix over GF(q) with int-encoded entries."""

    __slots__ = ("field", "nrows", "ncols", "data", "_hash")

    def __init__(self, fld: GF, data: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in data)
        if ncols is None:
            if not rows:
                raise ShapeError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged matrix rows")
            for x in r:
                if not 0 <= x < fld.q:
                    raise ValueError(f"entry {x} not in {fld}")
        self.field = fld
        self.nrows = len(rows)
        self.ncols = ncols
        self.data = rows
        self._hash = None

    @classmethod
    def zeros(cls, fld: GF, nrows: int, ncols: int) -> "MatrixGF":
        return cls(fld, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, fld: GF, k: int) -> "MatrixGF":
        return cls(fld, [[int(i == j) for j in range(k)] for i in range(k)], k)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and self.field is other.field
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.q, self.ncols, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"MatrixGF({self.field}, {self.nrows}x{self.ncols}, [{body}])"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.field, zip(*self.data), self.nrows) if self.nrows else MatrixGF(
            self.field, [[] for _ in range(self.ncols)], 0
        )

    def _check(self, other: "MatrixGF"):
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        add = self.field._add
        return MatrixGF(
            self.field, ([add[a][b] for a, b in zip(r, s)] for r, s in zip(self.data, other.data)), self.ncols
        )

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} - {other.shape}")
        sub = self.field._sub
        return MatrixGF(
            self.field, ([sub[a][b] for a, b in zip(r, s)] for r, s in zip(self.data, other.data)), self.ncols
        )

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"{self.shape} @ {other.shape}")
        f = self.field
        cols = list(zip(*other.data)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.data:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = f._add[acc][f._mul[a][b]]
                row.append(acc)
            out.append(row)
        return MatrixGF(f, out, other.ncols)

    def scale(self, c: int) -> "MatrixGF":
        mul = self.field._mul[c]
        return MatrixGF(self.field, ([mul[x] for x in r] for r in self.data), self.ncols)

    def columns(self, cols: Sequence[int]) -> "MatrixGF":
        """Submatrix with the given columns, in the given order."""
        return MatrixGF(self.field, ([r[j] for j in cols] for r in self.data), len(cols))

    def vstack(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        if self.ncols != other.ncols:
            raise ShapeError(f"vstack {self.shape} / {other.shape}")
        return MatrixGF(self.field, self.data + other.data, self.ncols)

    def hstack(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        if self.nrows != other.nrows:
            raise ShapeError(f"hstack {self.shape} | {other.shape}")
        return MatrixGF(self.field, (r + s for r, s in zip(self.data, other.data)), self.ncols + other.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def rref(self) -> tuple["MatrixGF", tuple[int, ...]]:
        return rref(self)

    def rank(self) -> int:
        return rank(self)


def _rref_rows(fld: GF, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """In-place full row reduction of ``rows``; returns (rows, pivots)."""
    add, mul, neg, inv = fld._add, fld._mul, fld._neg, fld._inv
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            s = mul[inv[lead]]
            rows[r] = [s[x] for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                s = mul[neg[rows[i][c]]]
                rows[i] = [add[x][s[y]] for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(M: MatrixGF) -> tuple[MatrixGF, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; zero rows are kept, last."""
    rows, pivots = _rref_rows(M.field, [list(r) for r in M.data], M.ncols)
    return MatrixGF(M.field, rows, M.ncols), tuple(pivots)


def _gf2_rank(rows: Iterable[Sequence[int]]) -> int:
    basis: list[int] = []
    for r in rows:
        v = 0
        for j, x in enumerate(r):
            if x:
                v |= 1 << j
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def rank_rows(fld: GF, rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Rank of a raw list of rows; dispatches to bit operations over GF(2)."""
    if fld.q == 2:
        return _gf2_rank(rows)
    return len(_rref_rows(fld, [list(r) for r in rows], ncols)[1])


def rank(M: MatrixGF) -> int:
    return rank_rows(M.field, M.data, M.ncols)


def det(M: MatrixGF) -> int:
    """Determinant by Gaussian elimination (product of pivots, swap sign)."""
    if M.nrows != M.ncols:
        raise ShapeError(f"determinant of non-square {M.shape} matrix")
    fld = M.field
    rows = [list(r) for r in M.data]
    n = M.nrows
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = fld.neg(result)
        lead = rows[c][c]
        result = fld.mul(result, lead)
        s_inv = fld.inv(lead)
        for i in range(c + 1, n):
            if rows[i][c]:
                s = fld._mul[fld.neg(fld.mul(rows[i][c], s_inv))]
                rows[i] = [fld._add[x][s[y]] for x, y in zip(rows[i], rows[c])]
    return result


def nullspace_basis(M: MatrixGF) -> MatrixGF:
    """Rows spanning the right kernel {x : M x^T = 0}."""
    fld = M.field
    R, pivots = rref(M)
    free = [c for c in range(M.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * M.ncols
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = fld.neg(R.data[i][f])
        basis.append(x)
    return MatrixGF(fld, basis, M.ncols)


def matrix(q: int, rows: Sequence[Sequence[int]], ncols: int | None = None) -> MatrixGF:
    """Convenience constructor: ``matrix(2, [[1, 0], [0, 1]])``."""
    return MatrixGF(field(q), rows, ncols)


def dot(fld: GF, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = fld._add[acc][fld._mul[a][b]]
    return acc


def lincomb(fld: GF, coeffs: Sequence[int], vectors: Sequence[Sequence[int]], length: int) -> list[int]:
    """Sum of ``coeffs[i] * vectors[i]`` as a list of ints."""
    out = [0] * length
    add, mul = fld._add, fld._mul
    for c, vec in zip(coeffs, vectors):
        if c:
            s = mul[c]
            out = [add[x][s[y]] for x, y in zip(out, vec)]
    return out


__all__ = [
    "GF",
    "FieldElement",
    "MatrixGF",
    "det",
    "dot",
    "field",
    "field_arith",
    "find_primitive_modulus",
    "lincomb",
    "matrix",
    "nullspace_basis",
    "poly_mul_mod",
    "rank",
    "rank_rows",
    "rref",
]
