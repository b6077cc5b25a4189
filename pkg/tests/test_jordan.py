import random
from itertools import product

import pytest

from chevalley.errors import NonSplitCharPoly
from chevalley.exactfield import PrimeField, Rationals
from chevalley.jordan import (
    brute_force_decompositions,
    check_invariants,
    classify,
    is_semisimple,
    jordan_decompose,
)
from chevalley.matcore import Matrix, block_diag, is_nilpotent, jordan_block, min_poly
from chevalley.polynomial import Polynomial

Q = Rationals()
F3, F5 = PrimeField(3), PrimeField(5)


def test_classify_examples():
    c = classify(Matrix.unit(Q, 2, 0, 1))
    assert c.nilpotent and not c.semisimple
    M = Matrix.identity(Q, 2) + Matrix.unit(Q, 2, 0, 1)
    c = classify(M)
    assert c.unipotent and not M.det().is_zero()
    assert classify(Matrix.diag(Q, [1, 2])).semisimple


def test_diagonal():
    M = Matrix.diag(Q, [2, 3, 3])
    d = jordan_decompose(M)
    assert d.S == M and d.N.is_zero() and d.U == Matrix.identity(Q, 3)
    assert check_invariants(M, d) == []


def test_jordan_block():
    lam = F5(3)
    M = jordan_block(F5, 2, lam)
    d = jordan_decompose(M)
    assert d.S == Matrix.identity(F5, 2) * lam
    assert d.N == Matrix.unit(F5, 2, 0, 1)
    assert d.U == Matrix.identity(F5, 2) + Matrix.unit(F5, 2, 0, 1) * lam.inv()
    assert check_invariants(M, d) == []


def test_companion_x2_plus_1_f5():
    M = Matrix.parse(F5, "[[0,4],[1,0]]")  # companion of X^2 + 1
    d = jordan_decompose(M)
    X = Polynomial.x(F5)
    assert min_poly(d.S) == (X - 2) * (X - 3)
    assert check_invariants(M, d) == []


def test_non_split():
    with pytest.raises(NonSplitCharPoly):
        jordan_decompose(Matrix.parse(F3, "[[0,2],[1,0]]"))  # X^2 + 1 over F_3
    with pytest.raises(NonSplitCharPoly):
        jordan_decompose(Matrix.parse(Q, "[[0,2],[1,0]]"))  # X^2 - 2 over Q


def test_singular_matrix_has_no_u():
    M = Matrix.parse(Q, "[[0,1],[0,0]]")
    d = jordan_decompose(M)
    assert d.U is None and check_invariants(M, d) == []


def test_exhaustive_m2_f3():
    seen = 0
    for entries in product(range(3), repeat=4):
        M = Matrix(F3, [entries[:2], entries[2:]])
        try:
            d = jordan_decompose(M)
        except NonSplitCharPoly:
            continue
        seen += 1
        assert check_invariants(M, d) == []
        assert brute_force_decompositions(M) == [(d.S, d.N)]
    # 81 matrices minus those with irreducible characteristic polynomial
    assert seen == 81 - 18


def test_block_restriction():
    rng = random.Random(3)
    for _ in range(10):
        A = Matrix(F5, [[rng.randint(0, 4) for _ in range(2)] for _ in range(2)])
        B = jordan_block(F5, 2, rng.randint(0, 4))
        try:
            da = jordan_decompose(A)
        except NonSplitCharPoly:
            continue
        db = jordan_decompose(B)
        d = jordan_decompose(block_diag(A, B))
        assert d.S == block_diag(da.S, db.S) and d.N == block_diag(da.N, db.N)


def test_finite_order_is_semisimple_over_q():
    gens = [Matrix.parse(Q, "[[0,-1],[1,0]]"), Matrix.parse(Q, "[[0,-1],[1,-1]]"),
            Matrix.parse(Q, "[[1,1],[-1,0]]"), Matrix.parse(Q, "[[-1,0],[0,1]]")]
    for M in gens:
        m = next(k for k in (2, 3, 4, 6) if (M ** k).is_identity())
        assert m in (2, 3, 4, 6)
        assert is_semisimple(M)


@pytest.mark.parametrize("p", [2, 3])
def test_semisimple_and_nilpotent_only_zero(p):
    F = PrimeField(p)
    both = []
    for entries in product(range(p), repeat=4):
        M = Matrix(F, [entries[:2], entries[2:]])
        if is_nilpotent(M) and is_semisimple(M):
            both.append(M)
    assert both == [Matrix.zeros(F, 2)]
