"""Distances between subspaces and between Schubert cell tuples.

Dimensions are vector-space dimensions.  Intersections are never built:
``dim(U ∩ V) = dim U + dim V - rank([U; V])``.
"""

from __future__ import annotations

from .algebra import rank_rows
from .errors import AmbientMismatch
from .pluecker import Subspace
from .schubert import CellTuple, cell_of


def _sum_dim(U: Subspace, V: Subspace) -> int:
    if U.ambient_dim != V.ambient_dim or U.field is not V.field:
        raise AmbientMismatch(f"{U!r} vs {V!r}")
    return rank_rows(U.field, U.basis.data + V.basis.data, U.ambient_dim)


def intersection_dim(U: Subspace, V: Subspace) -> int:
    return U.dim + V.dim - _sum_dim(U, V)


def subspace_distance(U: Subspace, V: Subspace) -> int:
    return 2 * _sum_dim(U, V) - U.dim - V.dim


def injection_distance(U: Subspace, V: Subspace) -> int:
    return _sum_dim(U, V) - min(U.dim, V.dim)


def symmetric_distance(A: CellTuple, B: CellTuple) -> int:
    return (A.mask ^ B.mask).bit_count()


def modified_symmetric_distance(A: CellTuple, B: CellTuple) -> int:
    return symmetric_distance(A, B) + abs(A.d - B.d)


def check_distance_bounds(U: Subspace, V: Subspace) -> bool:
    """Subspace and injection distances dominate the cell-tuple bounds.

    Checks ``d_s >= Δ``, ``d_I >= floor(Δ/2)`` and the sharper
    ``2 d_I >= Δ + |dim U - dim V|``.
    """
    delta = symmetric_distance(cell_of(U), cell_of(V))
    ds = subspace_distance(U, V)
    di = injection_distance(U, V)
    return ds >= delta and di >= delta // 2 and 2 * di >= delta + abs(U.dim - V.dim)


DISTANCES = {"subspace": subspace_distance, "injection": injection_distance}
