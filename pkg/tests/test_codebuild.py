import csv
import io
import itertools
import json
import math

import pytest

from subcode.algebra import field, rank
from subcode.codebuild import (
    TABLE1,
    CodeCell,
    SelectionReport,
    SubspaceCode,
    build_cell_code,
    build_code,
    cell_rank_code,
    choice_function,
    default_delta_r,
    greedy_select,
    kk_score,
    kk_sum_term,
    min_pairwise_distance,
    rate_lower_bound,
    rate_sum,
    selection_violations,
    table1_bound,
    verify_min_distance,
    zero_code,
)
from subcode.errors import BudgetExceeded, FitError, ParamError
from subcode.metrics import injection_distance, subspace_distance, symmetric_distance
from subcode.pluecker import Subspace
from subcode.rankmetric import LinearMatrixCode, full_matrix_space, gabidulin_code
from subcode.schubert import (
    CellTuple,
    ProfileVector,
    cell_dimension,
    cell_matrix,
    cell_of,
    enumerate_cells,
    enumerate_subspaces,
)


def one(idx, n):
    return CellTuple.from_one_based(idx, n)


def test_choice_function_illustration():
    assert choice_function(one((1, 2), 5), 2) == 3
    assert choice_function(one((3, 4), 5), 2) == -1
    assert choice_function(one((1, 2, 3, 4, 5), 5), 2) == -5


def test_kk_score_examples():
    v = ProfileVector.from_string("11000")
    assert kk_score(v, 2) == 3 == choice_function(v.cell(), 2)
    w = ProfileVector.from_string("00011")
    assert kk_score(w, 2) == -2
    assert choice_function(w.cell(), 2) == -3


@pytest.mark.parametrize("n", range(1, 9))
def test_kk_sum_term_is_cell_dimension(n):
    for bits in itertools.product((0, 1), repeat=n):
        if any(bits):
            v = ProfileVector(bits)
            assert kk_sum_term(v) == cell_dimension(v.cell())


def test_default_delta_r():
    assert default_delta_r("subspace", 4) == 2
    assert default_delta_r("subspace", 5) == 3
    assert default_delta_r("subspace", 5, "floor") == 2
    assert default_delta_r("injection", 2) == 2
    with pytest.raises(ParamError):
        default_delta_r("hamming", 2)


def test_greedy_first_pick_n5():
    rep = greedy_select(5, 2, "subspace", 4, 2)
    assert rep.selected[0] == (one((1, 2), 5), 3)
    assert one((3, 4), 5) in rep.tuples
    assert one((1, 2, 3, 4, 5), 5) not in rep.tuples
    assert symmetric_distance(one((1, 2), 5), one((1, 2, 3, 4, 5), 5)) == 3


def test_greedy_illustration_rule_variant():
    rep = greedy_select(5, 2, "subspace", 4, 2, rule="paper-illustration")
    assert rep.tuples == [one((1, 2), 5), one((3, 4), 5), one((1, 2, 3, 4, 5), 5)]
    assert rep.f_values == [3, -1, -5]
    assert selection_violations(rep)
    assert any("{1,2,3,4,5}" in note for note in rep.notes)
    assert rate_lower_bound(rep) == pytest.approx(math.log2(10))


def test_greedy_target_one_keeps_everything():
    for n in range(1, 6):
        rep = greedy_select(n, 2, "subspace", 1)
        assert len(rep.selected) == 2**n - 1
        assert not rep.discarded


def test_injection_target_one_still_discards():
    # floor(1/2) + floor(1/2) = 0 for a point against its containing plane
    rep = greedy_select(2, 2, "injection", 1)
    assert rep.discarded == {CellTuple((0, 1), 2): "too close to {1}"}


@pytest.mark.parametrize("metric,rule", [("subspace", "strict"), ("injection", "strict"), ("injection", "dm")])
def test_greedy_invariants(metric, rule):
    for n in range(2, 8):
        for target in (2, 3, 4):
            rep = greedy_select(n, 2, metric, target, rule=rule)
            again = greedy_select(n, 2, metric, target, rule=rule)
            assert rep.selected == again.selected and rep.discarded == again.discarded
            assert set(rep.tuples) | set(rep.discarded) == set(enumerate_cells(n))
            assert not set(rep.tuples) & set(rep.discarded)
            assert not selection_violations(rep)
            fs = rep.f_values
            assert fs[0] == max(choice_function(t, rep.delta_r) for t in enumerate_cells(n))


def test_greedy_tie_break_prefers_floor_half():
    # for odd n the principal cells of dimension floor(n/2) and ceil(n/2) tie
    rep = greedy_select(7, 2, "subspace", 4)
    assert rep.selected[0][0] == CellTuple((0, 1, 2), 7)


def test_greedy_rejects_bad_params():
    with pytest.raises(ParamError):
        greedy_select(5, 2, "subspace", 0)
    with pytest.raises(ParamError):
        greedy_select(5, 2, "subspace", 4, rule="dm")
    with pytest.raises(ParamError):
        greedy_select(5, 2, "injection", 2, rule="paper-illustration")


def test_rate_examples():
    assert rate_sum([3, -1, -5], 2) == 10
    rep = greedy_select(5, 2, "subspace", 4, 2, rule="paper-illustration")
    assert round(rate_lower_bound(rep), 4) == 3.3219
    single = greedy_select(4, 2, "subspace", 8)
    assert len(single.selected) == 1 and single.f_values[0] < 0
    assert rate_lower_bound(single) == 0.0
    one_cell = SelectionReport(9, 2, "subspace", 4, 2, "strict", [(one((1, 2, 3, 4), 9), 15)])
    assert rate_lower_bound(one_cell) == 15


def test_rate_at_least_first_cell():
    for n in range(3, 9):
        rep = greedy_select(n, 2, "subspace", 4)
        lb = rate_lower_bound(rep)
        assert lb >= max(rep.f_values[0], 0)
        assert lb < max(rep.f_values[0], 0) + math.log2(len(rep.selected)) + 1e-9


def test_table1_first_row():
    row = TABLE1[0]
    assert round(table1_bound(row.n, row.q, "subspace", row.d_subspace), 4) == row.lb_subspace


def test_build_cell_code_zero():
    t = CellTuple((0, 2), 4)
    subs = build_cell_code(t, zero_code(field(2), 2, 2))
    assert subs == [Subspace(cell_matrix(t, field(2)))]


def test_build_cell_code_principal_gabidulin():
    t = CellTuple((0, 1), 4)
    subs = build_cell_code(t, gabidulin_code(2, 2, 2, 2))
    assert len(subs) == 4
    assert all(subspace_distance(U, V) == 4 for U, V in itertools.combinations(subs, 2))


def test_build_cell_code_rejects_misfit():
    with pytest.raises(FitError):
        build_cell_code(CellTuple((0, 2), 4), full_matrix_space(field(2), 2, 2))
    with pytest.raises(FitError):
        build_cell_code(CellTuple((0, 1), 4), full_matrix_space(field(2), 2, 3))


@pytest.mark.parametrize("n", range(2, 7))
def test_cell_codes_distance_guarantee(n):
    for t in enumerate_cells(n):
        for dr in (1, 2, 3):
            G = cell_rank_code(t, 2, dr)
            subs = build_cell_code(t, G)
            assert len(subs) == 2**G.dim
            assert len(set(subs)) == len(subs)
            assert all(cell_of(S) == t for S in subs)
            if G.dim:
                words = list(G.codewords())
                for (A, U), (B, V) in itertools.combinations(zip(words, subs), 2):
                    assert subspace_distance(U, V) == 2 * rank(A - B) >= 2 * dr


def test_build_code_n4_subspace():
    code, rep = build_code(4, 2, "subspace", 4)
    principal = code.cells[0]
    assert principal.tuple == CellTuple((0, 1), 4)
    assert len(principal.subspaces) == 4
    assert all(len(c.subspaces) == 1 for c in code.cells[1:])
    ok, witness = verify_min_distance(code)
    assert ok and witness is None
    assert min_pairwise_distance(code.subspaces(), "subspace")[0] >= 4


def test_build_code_n5_principal_size():
    code, rep = build_code(5, 2, "subspace", 4)
    assert code.cells[0].tuple == one((1, 2), 5)
    assert code.cells[0].F == 3
    assert len(code.cells[0].subspaces) == 8


def test_build_code_injection_target_one():
    code, rep = build_code(4, 2, "injection", 1)
    assert code.provenance["delta_r"] == 1
    # rank >= 1 excludes nothing, so every selected cell is filled completely
    for c in code.cells:
        assert len(c.subspaces) == 2 ** cell_dimension(c.tuple)
        assert set(c.subspaces) == {S for S in enumerate_subspaces(field(2), 4) if cell_of(S) == c.tuple}


@pytest.mark.parametrize(
    "n,metric,target,rule",
    [
        (n, m, d, r)
        for n in range(2, 8)
        for (m, d, r) in [
            ("subspace", 2, "strict"),
            ("subspace", 3, "strict"),
            ("subspace", 4, "strict"),
            ("injection", 1, "strict"),
            ("injection", 2, "strict"),
            ("injection", 2, "dm"),
        ]
        # n = 7 at distance 2 has 14606 codewords, ~10^8 pairs
        if (n, m, d) not in {(7, "subspace", 2), (7, "injection", 1)}
    ],
)
def test_build_code_verifies(n, metric, target, rule):
    code, _ = build_code(n, 2, metric, target, rule=rule)
    ok, witness = verify_min_distance(code)
    assert ok, witness


def test_cross_cell_guarantee():
    code, rep = build_code(6, 2, "subspace", 4)
    for ca, cb in itertools.combinations(code.cells, 2):
        delta = symmetric_distance(ca.tuple, cb.tuple)
        assert delta >= 4
        for U in ca.subspaces:
            for V in cb.subspaces:
                assert subspace_distance(U, V) >= delta


def test_illustration_rule_code_fails_verification():
    code, _ = build_code(5, 2, "subspace", 4, rule="paper-illustration")
    ok, (U, V, d) = verify_min_distance(code)
    assert not ok and d < 4


def _code_from(subs, metric="subspace", target=2):
    S0 = subs[0]
    cells = [CodeCell(cell_of(S), 0, 0, [S]) for S in subs]
    return SubspaceCode(S0.ambient_dim, S0.field.q, metric, target, cells)


def test_verify_duplicate_and_singleton():
    S = Subspace(cell_matrix(CellTuple((0, 1), 4), field(2)))
    ok, witness = verify_min_distance(_code_from([S, S]))
    assert not ok
    assert witness == (S, S, 0)
    assert verify_min_distance(_code_from([S])) == (True, None)


def test_verify_budget():
    code, _ = build_code(4, 2, "subspace", 2)
    with pytest.raises(BudgetExceeded):
        verify_min_distance(code, budget=3)


def test_verify_under_other_metric():
    code, _ = build_code(5, 2, "subspace", 4)
    subs = code.subspaces()
    di = min(injection_distance(U, V) for U, V in itertools.combinations(subs, 2))
    ds = min(subspace_distance(U, V) for U, V in itertools.combinations(subs, 2))
    assert ds >= 4 and di >= 2


def test_json_round_trip():
    code, _ = build_code(5, 2, "injection", 2)
    text = json.dumps(code.to_json())
    back = SubspaceCode.from_json(json.loads(text))
    assert back.subspaces() == code.subspaces()
    assert [c.tuple for c in back.cells] == [c.tuple for c in code.cells]
    assert json.loads(text)["cells"][0]["tuple"] == list(code.cells[0].tuple.one_based)
    assert json.dumps(back.to_json()) == text


def test_report_csv():
    rep = greedy_select(5, 2, "subspace", 4)
    rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
    assert len(rows) == 31
    assert rows[0] == {"tuple": "{1,2}", "dimension": "6", "F": "3", "status": "selected", "reason": ""}
    assert {r["status"] for r in rows} == {"selected", "discarded"}


def test_linear_code_type():
    assert isinstance(cell_rank_code(one((3, 4), 5), 2, 2), LinearMatrixCode)
    assert cell_rank_code(one((3, 4), 5), 2, 2).dim == 0
