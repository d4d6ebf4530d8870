"""Lifting of matrices to subspaces, plain and through a profile vector.

A matrix ``X`` smaller than the ``k x (n-k)`` box of a profile vector is
placed top-aligned (zero rows appended below) and right-aligned (zero
columns inserted on the left).  The left-most non-pivot columns of an RREF
skeleton are the ones that can carry no dots, so this keeps the column order
of the profile matrix.
"""

from __future__ import annotations

from .algebra import MatrixGF
from .errors import FitError, ShapeError
from .pluecker import Subspace
from .schubert import FerrersPattern, ProfileVector, asterisk_pattern


def lift(X: MatrixGF) -> Subspace:
    """Row space of ``[I | X]``."""
    return Subspace(MatrixGF.identity(X.field, X.nrows).hstack(X))


def _placement(X: MatrixGF, rows: int, cols: int) -> int:
    if X.nrows > rows or X.ncols > cols:
        raise ShapeError(f"{X.shape} matrix does not fit a {rows}x{cols} box")
    return cols - X.ncols


def fits(X: MatrixGF, F: FerrersPattern) -> bool:
    """True iff every nonzero entry of ``X`` lands on a free position of ``F``."""
    offset = _placement(X, F.rows, F.cols)
    return all(
        (i, j + offset) in F.free_positions
        for i, row in enumerate(X.data)
        for j, x in enumerate(row)
        if x
    )


def augment(X: MatrixGF, v: ProfileVector) -> MatrixGF:
    """Pad ``X`` to the ``k x (n-k)`` matrix A(X) aligned with the dots of P_v."""
    pat = asterisk_pattern(v.cell())
    if not fits(X, pat):
        raise FitError(f"matrix does not fit the Ferrers diagram of {v}")
    offset = pat.cols - X.ncols
    rows = [[0] * pat.cols for _ in range(pat.rows)]
    for i, row in enumerate(X.data):
        rows[i][offset : offset + X.ncols] = row
    return MatrixGF(X.field, rows, pat.cols)


def lifted_matrix(X: MatrixGF, v: ProfileVector) -> MatrixGF:
    """P_v(X): the profile matrix of ``v`` with its dots filled from A(X)."""
    A = augment(X, v)
    t = v.cell()
    comp = asterisk_pattern(t).columns
    rows = [[0] * v.n for _ in range(t.d)]
    for i, piv in enumerate(t.indices):
        rows[i][piv] = 1
        for jj, c in enumerate(comp):
            rows[i][c] = A.data[i][jj]
    return MatrixGF(X.field, rows, v.n)


def generalized_lift(X: MatrixGF, v: ProfileVector) -> Subspace:
    return Subspace(lifted_matrix(X, v))
