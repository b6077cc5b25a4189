import random
from itertools import product

import pytest

from chevalley.classical import (
    FormSpec,
    all_sp_generator_slots,
    group_member,
    levi_embedding,
    lie_basis,
    lie_member,
    similitude_factor,
    sp_chevalley,
)
from chevalley.counting import GroupSpec, group_elements
from chevalley.errors import BadIndex, DomainMismatch, InvalidRank, NotSimilitude, SizeMismatch
from chevalley.exactfield import PrimeField, Rationals
from chevalley.matcore import Matrix, solve_columns

Q = Rationals()
F3, F5 = PrimeField(3), PrimeField(5)


def test_identity_and_sp2_is_sl2():
    form = FormSpec("Sp", 1, F5)
    assert group_member(Matrix.identity(F5, 2), form)
    for M in group_elements(GroupSpec("SL", 2, 5)):
        assert group_member(M, form)
    for M in group_elements(GroupSpec("GL", 2, 5)):
        assert group_member(M, form) == (M.det() == 1)


def test_levi_embedding_members():
    rng = random.Random(0)
    for fam in ("Sp", "SOeven"):
        form = FormSpec(fam, 2, F5)
        done = 0
        while done < 20:
            A = Matrix(F5, [[rng.randint(0, 4) for _ in range(2)] for _ in range(2)])
            if A.det().is_zero():
                continue
            assert group_member(levi_embedding(A, form), form)
            done += 1


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        group_member(Matrix.identity(F5, 3), FormSpec("Sp", 1, F5))


def test_lie_member_examples():
    sp, so = FormSpec("Sp", 2, Q), FormSpec("SOeven", 2, Q)
    assert lie_member(Matrix.zeros(Q, 4), sp)
    assert lie_member(sp.e(1, -1), sp)
    assert not lie_member(so.e(1, -1), so)


@pytest.mark.parametrize("fam,dims", [("Sp", (3, 10, 21)), ("SOeven", (1, 6, 15)), ("SOodd", (3, 10, 21))])
def test_lie_basis_dimensions(fam, dims):
    for l, dim in zip((1, 2, 3), dims):
        form = FormSpec(fam, l, Q)
        basis = lie_basis(form)
        assert len(basis) == dim
        assert all(lie_member(X, form) for _, X in basis)
        assert all(X.trace() == 0 for _, X in basis)
        # linear independence: flatten into vectors and take the rank
        assert Matrix(Q, [[x for row in X.rows for x in row] for _, X in basis]).rank() == dim
        labels = [lab for lab, _ in basis]
        for i in range(1, l + 1):
            assert f"e({i},{i})-e({-i},{-i})" in labels


def test_lie_basis_spans_f5():
    form = FormSpec("Sp", 2, F5)
    basis = [X for _, X in lie_basis(form)]
    cols = [[x for row in X.rows for x in row] for X in basis]
    rng = random.Random(1)
    found = 0
    while found < 10:
        X = Matrix(F5, [[rng.randint(0, 4) for _ in range(4)] for _ in range(4)])
        # project onto the Lie algebra: X - J^-1 X^t J is always a member
        Y = X - form.J.inverse() * X.T * form.J
        assert lie_member(Y, form)
        target = [y for row in Y.rows for y in row]
        assert solve_columns(F5, cols, target) is not None
        found += 1


def test_sp_block_shape():
    form = FormSpec("Sp", 2, Q)
    for _, X in lie_basis(form):
        W, Xb = X.block(0, 2, 0, 2), X.block(0, 2, 2, 4)
        Yb, Z = X.block(2, 4, 0, 2), X.block(2, 4, 2, 4)
        assert Z == -W.T and Xb == Xb.T and Yb == Yb.T


def test_generators():
    form = FormSpec("Sp", 2, F5)
    for kind, i, j in all_sp_generator_slots(2):
        assert sp_chevalley(kind, i, j, 0, form).is_identity()
        for t, s in ((1, 2), (3, 4)):
            g = sp_chevalley(kind, i, j, t, form)
            assert group_member(g, form) and g.det() == 1
            assert g * sp_chevalley(kind, i, j, s, form) == sp_chevalley(kind, i, j, t + s, form)
    g = sp_chevalley("diag_i_pos", 1, None, 3, form)
    assert g == Matrix.identity(F5, 4) + form.e(1, -1) * 3
    with pytest.raises(BadIndex):
        sp_chevalley("long_ij", 1, 3, 1, form)
    with pytest.raises(BadIndex):
        sp_chevalley("short_plus_ij", 2, 1, 1, form)


@pytest.mark.parametrize("F", [F3, F5, Q])
def test_generator_products(F):
    form = FormSpec("Sp", 2, F)
    rng = random.Random(2)
    slots = all_sp_generator_slots(2)
    M = Matrix.identity(F, 4)
    for _ in range(20):
        kind, i, j = rng.choice(slots)
        M = M * sp_chevalley(kind, i, j, rng.randint(1, 4), form)
        assert group_member(M, form) and M.det() == 1
        assert group_member(M.T, form)


def test_borel_shape():
    form = FormSpec("Sp", 2, F5)
    upper = [("long_ij", 1, 2), ("short_plus_ij", 1, 2), ("diag_i_pos", 1, None), ("diag_i_pos", 2, None)]
    rng = random.Random(3)
    M = Matrix.identity(F5, 4)
    for _ in range(15):
        kind, i, j = rng.choice(upper)
        M = M * sp_chevalley(kind, i, j, rng.randint(1, 4), form)
    W = M.block(0, 2, 0, 2)
    assert M.block(2, 4, 0, 2).is_zero()
    assert W.is_upper_triangular() and M.block(2, 4, 2, 4) == W.inverse().T


def test_center_sp2_f3():
    form = FormSpec("Sp", 1, F3)
    G = [M for M in group_elements(GroupSpec("GL", 2, 3)) if group_member(M, form)]
    center = [z for z in G if all(z * g == g * z for g in G)]
    assert set(center) == {Matrix.identity(F3, 2), Matrix.identity(F3, 2) * -1}


def test_similitude():
    form = FormSpec("Sp", 2, F5)
    g = sp_chevalley("long_ij", 1, 2, 3, form)
    assert similitude_factor(g, form) == 1
    c = F5(2)
    assert similitude_factor(Matrix.identity(F5, 4) * c, form) == c * c
    assert similitude_factor(Matrix.diag(F5, [c, c, 1, 1]), form) == c
    a, b = Matrix.diag(F5, [c, c, 1, 1]), Matrix.identity(F5, 4) * 3
    assert similitude_factor(a * b, form) == similitude_factor(a, form) * similitude_factor(b, form)
    with pytest.raises(NotSimilitude):
        similitude_factor(Matrix.diag(F5, [2, 1, 1, 1]), form)


def test_form_validation():
    with pytest.raises(InvalidRank):
        FormSpec("Sp", 0, Q)
    with pytest.raises(DomainMismatch):
        FormSpec("SOeven", 2, PrimeField(2))
    assert FormSpec("Sp", 2, PrimeField(2)).warning is not None
    assert FormSpec("Sp", 2, F5).warning is None
    assert FormSpec("SOodd", 1, Q).J == Matrix.parse(Q, "[[1,0,0],[0,0,1],[0,1,0]]")
