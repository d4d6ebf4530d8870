import itertools
import random

import pytest

from subcode.algebra import MatrixGF, field, matrix, rank
from subcode.errors import FitError
from subcode.lifting import augment, fits, generalized_lift, lift, lifted_matrix
from subcode.metrics import subspace_distance
from subcode.pluecker import check_quadratic_relations, coordinate_matrix, pluecker_coordinates
from subcode.rankmetric import gabidulin_code
from subcode.schubert import (
    FerrersPattern,
    ProfileVector,
    asterisk_pattern,
    cell_of,
    ferrers_diagram,
)

V = ProfileVector.from_string("110101")
X = [[1, 1], [1, 1], [0, 1]]


def random_fitting(rng, q, v, zero_prob=0.0):
    """Random X of a random shape that fits F(v)."""
    pat = asterisk_pattern(v.cell())
    r = rng.randint(0, pat.rows)
    c = rng.randint(0, pat.cols)
    off = pat.cols - c
    rows = [
        [
            rng.randrange(q) if (i, j + off) in pat.free_positions and rng.random() >= zero_prob else 0
            for j in range(c)
        ]
        for i in range(r)
    ]
    return MatrixGF(field(q), rows, c)


def test_lift_examples():
    S = lift(matrix(2, [[1, 1], [0, 1]]))
    assert S.basis == matrix(2, [[1, 0, 1, 1], [0, 1, 0, 1]])
    Z = lift(MatrixGF.zeros(field(3), 2, 3))
    assert Z.basis == MatrixGF.identity(field(3), 2).hstack(MatrixGF.zeros(field(3), 2, 3))
    assert cell_of(S).indices == (0, 1)


def test_lift_coordinates_reproduce_x():
    Xm = matrix(3, [[2, 0, 1], [1, 1, 2]])
    P = pluecker_coordinates(lift(Xm))
    assert P[(0, 1)] == 1
    for j in range(3):
        # replacing pivot i by column 2 + j reads off X[i][j]
        assert P[(2 + j, 1)] == Xm.data[0][j]
        assert P[(0, 2 + j)] == Xm.data[1][j]


def test_fits_examples():
    F = ferrers_diagram(V)
    assert fits(MatrixGF.zeros(field(2), 3, 2), F)
    assert fits(matrix(2, X), F)
    assert not fits(matrix(2, [[1, 1], [1, 1], [1, 1]]), F)
    assert fits(matrix(2, [[1, 1]] * 3), FerrersPattern.rectangle(3, 2))


def test_augment_example():
    assert augment(matrix(2, X), V) == matrix(2, [[1, 1], [1, 1], [0, 1], [0, 0]])


def test_augment_full_box_is_identity():
    v = ProfileVector.from_string("1100")
    Xm = matrix(2, [[1, 0], [1, 1]])
    assert augment(Xm, v) == Xm


def test_augment_rejects_misfit():
    with pytest.raises(FitError):
        augment(matrix(2, [[1, 1], [1, 1], [1, 0]]), V)


def test_augment_shape_random(rng):
    for _ in range(200):
        n = rng.randint(2, 7)
        bits = [rng.randint(0, 1) for _ in range(n)]
        if not any(bits) or all(bits):
            continue
        v = ProfileVector(bits)
        A = augment(random_fitting(rng, 2, v), v)
        assert (A.nrows, A.ncols) == (v.weight, n - v.weight)


def test_generalized_lift_example():
    S = generalized_lift(matrix(2, X), V)
    assert S.basis == matrix(
        2,
        [
            [1, 0, 1, 0, 1, 0],
            [0, 1, 1, 0, 1, 0],
            [0, 0, 0, 1, 1, 0],
            [0, 0, 0, 0, 0, 1],
        ],
    )
    assert rank(S.basis) == 4


def test_principal_profile_reduces_to_lift():
    v = ProfileVector.from_string("11000")
    Xm = matrix(3, [[1, 2, 0], [0, 1, 1]])
    assert generalized_lift(Xm, v) == lift(Xm)


@pytest.mark.parametrize("q", [2, 3])
def test_unified_framework_random(q, rng):
    for _ in range(150):
        n = rng.randint(1, 7)
        bits = [rng.randint(0, 1) for _ in range(n)]
        if not any(bits):
            continue
        v = ProfileVector(bits)
        Xm = random_fitting(rng, q, v)
        S = generalized_lift(Xm, v)
        P = pluecker_coordinates(S)
        assert cell_of(S) == v.cell()
        assert P[v.support] == 1
        assert coordinate_matrix(P, v.support) == lifted_matrix(Xm, v)
        assert check_quadratic_relations(P)


def test_lift_injective():
    F = field(2)
    seen = set()
    for bits in itertools.product((0, 1), repeat=6):
        S = lift(MatrixGF(F, [bits[:3], bits[3:]], 3))
        seen.add(S)
    assert len(seen) == 64


def test_generalized_lift_injective():
    v = V
    pat = asterisk_pattern(v.cell())
    free = sorted(pat.free_positions)
    out = set()
    for values in itertools.product((0, 1), repeat=len(free)):
        rows = [[0] * pat.cols for _ in range(pat.rows)]
        for (i, j), x in zip(free, values):
            rows[i][j] = x
        out.add(generalized_lift(MatrixGF(field(2), rows, pat.cols), v))
    assert len(out) == 2 ** len(free)


@pytest.mark.parametrize("q,rows,cols,dr", [(2, 2, 2, 2), (2, 2, 3, 2), (3, 2, 2, 2), (2, 3, 3, 2)])
def test_lifted_rank_code_distance(q, rows, cols, dr):
    C = gabidulin_code(q, rows, cols, dr)
    words = list(C.codewords())
    lifts = [lift(W) for W in words]
    for (A, SA), (B, SB) in itertools.combinations(zip(words, lifts), 2):
        d = subspace_distance(SA, SB)
        assert d == 2 * rank(A - B)
        assert d >= 2 * dr


def test_random_fitting_helper_is_valid():
    rng = random.Random(1)
    for _ in range(50):
        Xm = random_fitting(rng, 3, V, zero_prob=0.3)
        assert fits(Xm, asterisk_pattern(V.cell()))
