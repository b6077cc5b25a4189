import random
from itertools import product

import pytest

from chevalley.errors import CharacteristicTooSmall, NonSquare, NotNilpotent, Singular
from chevalley.exactfield import IntegersMod, PrimeField, QuadraticEtale, RationalFunctions, Rationals
from chevalley.matcore import (
    Matrix,
    block_diag,
    char_poly,
    cofactor_det,
    det_inverse_rank,
    exp_nilpotent,
    jordan_block,
    leibniz_det,
    min_poly,
    poly_eval,
    regular_rep,
    sym_power_rep,
    trace_form_gram,
)
from chevalley.polynomial import Polynomial

Q = Rationals()
F5, F7 = PrimeField(5), PrimeField(7)


def rand_matrix(F, n, rng, lo=0, hi=None):
    hi = hi if hi is not None else 6
    return Matrix(F, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def test_det_inverse_rank_examples():
    d = det_inverse_rank(Matrix.identity(Q, 3))
    assert d.det == 1 and d.inverse == Matrix.identity(Q, 3) and d.rank == 3
    d = det_inverse_rank(Matrix.parse(F5, "[[1,2],[0,3]]"))
    assert d.det == 3 and d.rank == 2
    assert Matrix.parse(F5, "[[1,2],[0,3]]") * d.inverse == Matrix.identity(F5, 2)
    d = det_inverse_rank(Matrix.parse(Q, "[[1,1],[1,1]]"))
    assert d.det == 0 and d.inverse is None and d.rank == 1
    with pytest.raises(NonSquare):
        det_inverse_rank(Matrix(Q, [[1, 2, 3]]))


def test_det_matches_leibniz_oracle():
    rng = random.Random(3)
    for F in (F5, F7, Q):
        for n in (1, 2, 3, 4):
            M = rand_matrix(F, n, rng, -4, 4)
            assert M.det() == leibniz_det(M)
            if not M.det().is_zero():
                assert M * M.inverse() == Matrix.identity(F, n)


def test_singular_inverse():
    with pytest.raises(Singular):
        Matrix.parse(Q, "[[1,2],[2,4]]").inverse()


def test_char_poly_examples():
    X = Polynomial.x(F7)
    assert char_poly(jordan_block(F7, 3, 4)) == (X - 4) ** 3
    assert char_poly(Matrix.identity(Q, 4)) == (Polynomial.x(Q) - 1) ** 4


def test_cayley_hamilton_ring_mode():
    R = IntegersMod(6)
    rng = random.Random(6)
    for _ in range(20):
        M = rand_matrix(R, 3, rng, 0, 5)
        chi = char_poly(M)
        assert chi.degree == 3 and chi.is_monic
        assert poly_eval(chi, M).is_zero()
        # the constant term is (-1)^n det, det by cofactor expansion
        assert chi[0] == -cofactor_det(M)


def test_char_poly_similarity_invariant():
    rng = random.Random(11)
    for _ in range(20):
        M = rand_matrix(F7, 3, rng)
        P = rand_matrix(F7, 3, rng)
        if P.det().is_zero():
            continue
        assert char_poly(P * M * P.inverse()) == char_poly(M)


def test_min_poly_examples():
    X = Polynomial.x(F5)
    J = block_diag(jordan_block(F5, 2, 3), jordan_block(F5, 1, 3))
    assert min_poly(J) == (X - 3) ** 2
    XQ = Polynomial.x(Q)
    assert min_poly(Matrix.diag(Q, [1, 2])) == (XQ - 1) * (XQ - 2)
    assert min_poly(Matrix.identity(Q, 3) * 5) == XQ - 5


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_min_poly_divides_char_poly_same_roots(p):
    F = PrimeField(p)
    rng = random.Random(p)
    for _ in range(15):
        M = rand_matrix(F, 3, rng, 0, p - 1)
        m, chi = min_poly(M), char_poly(M)
        assert m.divides(chi)
        assert poly_eval(m, M).is_zero()
        assert {x for x in F.elements() if m(x).is_zero()} == {x for x in F.elements() if chi(x).is_zero()}
        # least degree: no monic polynomial of lower degree kills M (brute force)
        for d in range(m.degree):
            for cs in product(F.elements(), repeat=d):
                assert not poly_eval(Polynomial(F, list(cs) + [1]), M).is_zero()


def test_exp_nilpotent():
    assert exp_nilpotent(Matrix.zeros(Q, 3)) == Matrix.identity(Q, 3)
    e12 = Matrix.unit(Q, 2, 0, 1)
    E = exp_nilpotent(e12)
    assert E == Matrix.identity(Q, 2) + e12
    assert E.det() == 1
    N = Matrix.parse(Q, "[[0,1,2],[0,0,3],[0,0,0]]")
    assert exp_nilpotent(N) * exp_nilpotent(-N) == Matrix.identity(Q, 3)
    with pytest.raises(NotNilpotent):
        exp_nilpotent(Matrix.identity(Q, 2))
    # J_3(0) over F_2 needs 2! invertible
    with pytest.raises(CharacteristicTooSmall):
        exp_nilpotent(jordan_block(PrimeField(2), 3, 0))


def test_regular_rep():
    K = QuadraticEtale(Q, 2)
    assert regular_rep(K.w()) == Matrix.parse(Q, "[[0,2],[1,0]]")
    assert regular_rep(K.one) == Matrix.identity(Q, 2)
    R = regular_rep(K("3+2w"))
    assert R == Matrix.parse(Q, "[[3,4],[2,3]]") and R.det() == 1


def test_regular_rep_homomorphism_and_invariants():
    K = QuadraticEtale(F5, 2)
    els = K.elements()
    reps = {x: regular_rep(x) for x in els}
    assert len({r for r in reps.values()}) == len(els)  # injective
    rng = random.Random(5)
    for _ in range(50):
        x, y = rng.choice(els), rng.choice(els)
        assert reps[x * y] == reps[x] * reps[y]
        assert reps[x + y] == reps[x] + reps[y]
    for x in els:
        assert reps[x].trace() == x.trace() and reps[x].det() == x.norm()


def test_trace_form_gram():
    assert trace_form_gram(QuadraticEtale(Q, 2)) == Matrix.diag(Q, [2, 4])
    F = RationalFunctions(2)
    G = trace_form_gram(QuadraticEtale(F, F.t()))
    assert G.is_zero()
    G5 = trace_form_gram(QuadraticEtale(F5, 2))
    assert G5 == Matrix.diag(F5, [2, 4]) and G5 == G5.T


def test_sym_power_rep():
    assert sym_power_rep(Matrix.identity(F7, 2), 4) == Matrix.identity(F7, 5)
    t = Q(3)
    D = sym_power_rep(Matrix.diag(Q, [t, t.inv()]), 2)
    assert D == Matrix.diag(Q, [t * t, 1, (t * t).inv()])
    rng = random.Random(9)
    done = 0
    while done < 50:
        g, h = rand_matrix(F7, 2, rng), rand_matrix(F7, 2, rng)
        if g.det().is_zero() or h.det().is_zero():
            continue
        assert sym_power_rep(g * h, 3) == sym_power_rep(g, 3) * sym_power_rep(h, 3)
        done += 1
    with pytest.raises(Singular):
        sym_power_rep(Matrix.parse(F7, "[[1,1],[1,1]]"), 2)


def test_matrix_text_and_json():
    M = Matrix.parse(QuadraticEtale(Q, 2), "[[3+2w,1/2],[0,-w]]")
    assert Matrix.parse(M.field, str(M)) == M
    assert Matrix.from_json(M.field, M.to_json()) == M
    assert M.to_json()["rows"] == 2
