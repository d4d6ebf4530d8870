"""Non-constant-dimension subspace codes as unions of Schubert cell codes.

Pipeline: score every cell with the choice function, greedily keep cells
that stay far apart (cell-tuple distance), fill each kept cell with the
lift of a Ferrers-diagram subcode of a Gabidulin code, and report the rate
lower bound ``log_q(sum q^max(F, 0))`` over the kept cells.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from . import __version__
from .algebra import GF, MatrixGF, field
from .errors import BudgetExceeded, FitError, ParamError
from .lifting import fits
from .metrics import DISTANCES, modified_symmetric_distance, symmetric_distance
from .pluecker import Subspace
from .rankmetric import LinearMatrixCode, fdrm_subcode, gabidulin_code
from .schubert import (
    CellTuple,
    ProfileVector,
    asterisk_pattern,
    cell_dimension,
    cell_matrix,
    complement,
    enumerate_cells,
)

METRICS = ("subspace", "injection")
RULES = {
    "subspace": ("strict", "paper-illustration"),
    "injection": ("strict", "dm"),
}
DEFAULT_PAIR_BUDGET = 10_000


def choice_function(t: CellTuple, delta_r: int) -> int:
    """Cell dimension minus max(d, n - d)(delta_r - 1); may be negative."""
    return cell_dimension(t) - max(t.d, t.n - t.d) * (delta_r - 1)


def kk_sum_term(v: ProfileVector) -> int:
    """Number of pairs j <= i with v_j = 1 and v_i = 0."""
    ones_seen = total = 0
    for b in v.bits:
        if b:
            ones_seen += 1
        else:
            total += ones_seen
    return total


def kk_eta(v: ProfileVector) -> int:
    first = v.support[0] + 1
    return v.n - (v.weight + first) + 1


def kk_score(v: ProfileVector, delta_r: int) -> int:
    """Profile-vector score of the alternative (KK) cell selection."""
    return kk_sum_term(v) - max(v.weight, kk_eta(v)) * (delta_r - 1)


def default_delta_r(metric: str, target_distance: int, rounding: str = "ceil") -> int:
    """Minimum rank of the in-cell rank-metric codes.

    For the subspace metric a rank-r code gives in-cell distance 2r, so
    ``ceil(d/2)`` is needed for odd ``d``; ``rounding="floor"`` is kept for
    comparison runs.
    """
    if metric == "injection":
        return target_distance
    if metric != "subspace":
        raise ParamError(f"unknown metric {metric!r}")
    if rounding == "ceil":
        return -(-target_distance // 2)
    if rounding == "floor":
        return max(1, target_distance // 2)
    raise ParamError(f"unknown rounding {rounding!r}")


def keep_rule(metric: str, rule: str, target: int) -> Callable[[CellTuple, CellTuple], bool]:
    """Predicate: may ``beta`` stay once ``alpha`` is selected?"""
    if metric == "subspace":
        if rule not in RULES["subspace"]:
            raise ParamError(f"rule {rule!r} is not available for the subspace metric")
        return lambda a, b: symmetric_distance(a, b) >= target
    if metric == "injection":
        if rule == "strict":
            return lambda a, b: symmetric_distance(a, b) // 2 + abs(a.d - b.d) // 2 >= target
        if rule == "dm":
            return lambda a, b: modified_symmetric_distance(a, b) >= 2 * target
        raise ParamError(f"rule {rule!r} is not available for the injection metric")
    raise ParamError(f"unknown metric {metric!r}")


@dataclass
class SelectionReport:
    n: int
    q: int
    metric: str
    target_distance: int
    delta_r: int
    rule: str
    selected: list[tuple[CellTuple, int]] = dc_field(default_factory=list)
    discarded: dict[CellTuple, str] = dc_field(default_factory=dict)
    notes: list[str] = dc_field(default_factory=list)

    @property
    def tuples(self) -> list[CellTuple]:
        return [t for t, _ in self.selected]

    @property
    def f_values(self) -> list[int]:
        return [f for _, f in self.selected]

    def rows(self) -> list[dict]:
        out = []
        for t, f in self.selected:
            out.append(
                {"tuple": str(t), "dimension": cell_dimension(t), "F": f, "status": "selected", "reason": ""}
            )
        for t in sorted(self.discarded, key=CellTuple.sort_key):
            out.append(
                {
                    "tuple": str(t),
                    "dimension": cell_dimension(t),
                    "F": choice_function(t, self.delta_r),
                    "status": "discarded",
                    "reason": self.discarded[t],
                }
            )
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["tuple", "dimension", "F", "status", "reason"], lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows())
        return buf.getvalue()


def greedy_select(
    n: int,
    q: int,
    metric: str,
    target_distance: int,
    delta_r: int | None = None,
    rule: str = "strict",
) -> SelectionReport:
    """Greedy cell selection by largest choice function.

    Ties go to the cell earliest in :func:`enumerate_cells` order (shorter
    first, then lexicographic).  After each pick, every remaining cell that
    violates the distance rule against it is discarded.

    ``rule="paper-illustration"`` runs the strict subspace rule and then adds
    the whole-space cell, mirroring the reference n = 5 example; the
    resulting set generally violates the distance rule and the violations are
    listed in ``notes``.
    """
    if target_distance < 1:
        raise ParamError("target distance must be >= 1")
    if delta_r is None:
        delta_r = default_delta_r(metric, target_distance)
    keep = keep_rule(metric, rule, target_distance)
    cells = enumerate_cells(n)
    scores = {t: choice_function(t, delta_r) for t in cells}
    order = {t: i for i, t in enumerate(cells)}
    alive = sorted(cells, key=lambda t: (-scores[t], order[t]))
    report = SelectionReport(n, q, metric, target_distance, delta_r, rule)
    while alive:
        alpha = alive[0]
        report.selected.append((alpha, scores[alpha]))
        rest = []
        for beta in alive[1:]:
            if keep(alpha, beta):
                rest.append(beta)
            else:
                report.discarded[beta] = f"too close to {alpha}"
        alive = rest
    if rule == "paper-illustration":
        whole = CellTuple(tuple(range(n)), n)
        if whole not in report.tuples:
            report.discarded.pop(whole, None)
            report.selected.append((whole, scores[whole]))
            report.notes.append(f"added whole-space cell {whole}")
        report.notes.extend(selection_violations(report))
    return report


def selection_violations(report: SelectionReport) -> list[str]:
    """Pairs of selected cells that break the distance rule of ``report``."""
    rule = "strict" if report.rule == "paper-illustration" else report.rule
    keep = keep_rule(report.metric, rule, report.target_distance)
    out = []
    for a, b in itertools.combinations(report.tuples, 2):
        if not keep(a, b):
            out.append(
                f"{a} vs {b}: symmetric distance {symmetric_distance(a, b)}, "
                f"modified {modified_symmetric_distance(a, b)}, target {report.target_distance}"
            )
    return out


def rate_sum(f_values: Iterable[int], q: int) -> int:
    """Exact ``sum q^max(F, 0)``."""
    return sum(q ** max(f, 0) for f in f_values)


def rate_lower_bound(report: SelectionReport, q: int | None = None, delta_r: int | None = None) -> float:
    """``log_q`` of :func:`rate_sum` over the selected cells.

    ``delta_r`` recomputes the choice function for the selected tuples.
    """
    if not report.selected:
        raise ParamError("empty selection")
    q = q or report.q
    fs = report.f_values if delta_r is None else [choice_function(t, delta_r) for t in report.tuples]
    return math.log(rate_sum(fs, q)) / math.log(q)


# ---------------------------------------------------------------------------
# codes inside a cell


def zero_code(fld: GF, rows: int, cols: int) -> LinearMatrixCode:
    return LinearMatrixCode(fld, rows, cols, (), None, True)


def cell_rank_code(t: CellTuple, q: int, delta_r: int) -> LinearMatrixCode:
    """Rank-metric code placed in cell ``t``: the Ferrers subcode of a Gabidulin
    code, or the zero code when the choice function is not positive."""
    fld = field(q)
    rows, cols = t.d, t.n - t.d
    if cols == 0 or choice_function(t, delta_r) <= 0:
        return zero_code(fld, rows, cols)
    return fdrm_subcode(gabidulin_code(q, rows, cols, delta_r), asterisk_pattern(t))


def cell_basis_matrix(t: CellTuple, G: MatrixGF) -> MatrixGF:
    """C(G) = A_alpha + G * A_alpha^c."""
    A = cell_matrix(t, G.field)
    if t.d == t.n:
        return A
    return A + G @ cell_matrix(complement(t), G.field)


def build_cell_code(t: CellTuple, G: LinearMatrixCode) -> list[Subspace]:
    """One subspace per element of the span of ``G`` (zero included)."""
    pat = asterisk_pattern(t)
    if G.shape != (t.d, t.n - t.d):
        raise FitError(f"code shape {G.shape} does not match cell {t}")
    for B in G.basis:
        if not fits(B, pat):
            raise FitError(f"a basis matrix has entries outside the asterisks of {t}")
    if G.dim == 0:
        return [Subspace(cell_matrix(t, G.field))]
    return [Subspace(cell_basis_matrix(t, M)) for M in G.codewords()]


@dataclass
class CodeCell:
    tuple: CellTuple
    F: int
    rank_code_dim: int
    subspaces: list[Subspace]


@dataclass
class SubspaceCode:
    n: int
    q: int
    metric: str
    target_distance: int
    cells: list[CodeCell]
    provenance: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> GF:
        return field(self.q)

    def subspaces(self) -> list[Subspace]:
        return [S for c in self.cells for S in c.subspaces]

    def __len__(self) -> int:
        return sum(len(c.subspaces) for c in self.cells)

    def log_size(self) -> float:
        return math.log(len(self), self.q)

    def to_json(self) -> dict:
        return {
            "version": __version__,
            "n": self.n,
            "q": self.q,
            "metric": self.metric,
            "target_distance": self.target_distance,
            "provenance": self.provenance,
            "cells": [
                {
                    "tuple": list(c.tuple.one_based),
                    "F": c.F,
                    "rank_code_dim": c.rank_code_dim,
                    "subspaces": [S.basis.tolist() for S in c.subspaces],
                }
                for c in self.cells
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SubspaceCode":
        n, q = obj["n"], obj["q"]
        fld = field(q)
        cells = []
        for c in obj["cells"]:
            t = CellTuple.from_one_based(c["tuple"], n)
            subs = [Subspace(MatrixGF(fld, rows, n)) for rows in c["subspaces"]]
            cells.append(CodeCell(t, c.get("F", 0), c.get("rank_code_dim", 0), subs))
        return cls(n, q, obj["metric"], obj["target_distance"], cells, obj.get("provenance", {}))


def build_code(
    n: int,
    q: int,
    metric: str,
    target_distance: int,
    rule: str = "strict",
    rounding: str = "ceil",
) -> tuple[SubspaceCode, SelectionReport]:
    """Select cells greedily and fill each with its lifted rank-metric code."""
    delta_r = default_delta_r(metric, target_distance, rounding)
    report = greedy_select(n, q, metric, target_distance, delta_r, rule)
    cells = []
    for t, f in report.selected:
        G = cell_rank_code(t, q, delta_r)
        cells.append(CodeCell(t, f, G.dim, build_cell_code(t, G)))
    prov = {"rule": rule, "delta_r": delta_r, "rounding": rounding}
    return SubspaceCode(n, q, metric, target_distance, cells, prov), report


def iter_pair_distances(subspaces: Sequence[Subspace], metric: str, budget: int = DEFAULT_PAIR_BUDGET):
    if len(subspaces) > budget:
        raise BudgetExceeded(f"{len(subspaces)} subspaces exceed pairwise budget {budget}")
    dist = DISTANCES[metric]
    for i, j in itertools.combinations(range(len(subspaces)), 2):
        yield i, j, dist(subspaces[i], subspaces[j])


def min_pairwise_distance(
    subspaces: Sequence[Subspace], metric: str, budget: int = DEFAULT_PAIR_BUDGET
) -> tuple[int | None, tuple[int, int] | None]:
    best, where = None, None
    for i, j, d in iter_pair_distances(subspaces, metric, budget):
        if best is None or d < best:
            best, where = d, (i, j)
    return best, where


def verify_min_distance(
    C: SubspaceCode, budget: int = DEFAULT_PAIR_BUDGET, metric: str | None = None
) -> tuple[bool, tuple[Subspace, Subspace, int] | None]:
    """Brute-force check of the declared minimum distance.

    Returns ``(True, None)`` or ``(False, (U, V, distance))`` for the first
    violating pair.
    """
    subs = C.subspaces()
    metric = metric or C.metric
    for i, j, d in iter_pair_distances(subs, metric, budget):
        if d < C.target_distance:
            return False, (subs[i], subs[j], d)
    return True, None


# ---------------------------------------------------------------------------
# reference rate table

@dataclass(frozen=True)
class Table1Row:
    q: int
    d_injection: int
    d_subspace: int
    n: int
    lb_subspace: float
    kk_subspace: float
    lb_injection: float
    kk_injection: float


TABLE1 = (
    Table1Row(2, 2, 4, 9, 15.1515, 15.1518, 15.3238, 15.6245),
    Table1Row(2, 2, 4, 10, 20.1534, 20.1534, 20.1967, 20.3294),
    Table1Row(2, 2, 4, 12, 30.1556, 30.1557, 30.1998, 30.3346),
    Table1Row(2, 3, 6, 13, 28.0030, 28.0030, 28.0134, 28.0263),
    Table1Row(3, 2, 4, 7, 8.0131, 8.0145, 8.0464, 8.1331),
    Table1Row(3, 2, 4, 8, 12.0135, 12.0135, 12.0160, 12.0311),
    Table1Row(4, 2, 4, 7, 8.0030, 8.0032, 8.0142, 8.0522),
    Table1Row(4, 2, 4, 8, 12.0031, 12.0031, 12.0034, 12.0068),
)


def table1_bound(n: int, q: int, metric: str, target: int, rule: str = "strict") -> float:
    report = greedy_select(n, q, metric, target, rule=rule)
    return rate_lower_bound(report)
