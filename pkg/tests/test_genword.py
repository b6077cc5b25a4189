import random
from itertools import product

import pytest

from chevalley.counting import GroupSpec, group_elements
from chevalley.errors import DeterminantNotOne, NonMember, ParseError, Singular
from chevalley.exactfield import PrimeField, QuadraticEtale, Rationals
from chevalley.genword import (
    Elem,
    FieldAut,
    Flag,
    GeneratorWord,
    Graph,
    Inner,
    Monomial,
    Torus,
    bruhat,
    compositions,
    elem_decompose,
    eval_word,
    find_commutator,
    flag_orbit_type,
    gauss_reduce,
    generated_subgroup,
    levi_split,
    parabolic_membership,
    sl2_automorphism,
)
from chevalley.matcore import Matrix

F3, F5 = PrimeField(3), PrimeField(5)


def test_empty_word_is_identity():
    assert eval_word(GeneratorWord(2, F5, [])) == Matrix.identity(F5, 2)


def test_w_of_t():
    t = F5(2)
    w = GeneratorWord(2, F5, [Elem(1, 2, t), Elem(2, 1, -t.inv()), Elem(1, 2, t)])
    assert eval_word(w) == Matrix(F5, [[0, t], [-t.inv(), 0]])
    assert eval_word(w) == Matrix.parse(F5, "[[0,2],[2,0]]")


def test_torus_token():
    t = F5(3)
    assert Torus(1, 2, t).matrix(3, F5) == Matrix.diag(F5, [t, t.inv(), 1])


def test_word_text_round_trip():
    text = "x(1,2;3) n(1,2;1) h(1,2;2) p(2 1 3)"
    w = GeneratorWord.parse(text, 3, F5)
    assert str(w) == text
    with pytest.raises(ParseError):
        GeneratorWord.parse("x(1,2;3) junk", 3, F5)


def test_one_parameter_subgroups():
    for t, s in product(F5.elements(), repeat=2):
        assert Elem(1, 2, t).matrix(2, F5) * Elem(1, 2, s).matrix(2, F5) == Elem(1, 2, t + s).matrix(2, F5)


def test_monomial_order_four():
    n = Monomial(1, 2, F5.one).matrix(3, F5)
    h = n * n
    assert n ** 4 == Matrix.identity(F5, 3)
    assert h * h == Matrix.identity(F5, 3)
    assert h == Matrix.diag(F5, [-1, -1, 1])


def test_elem_decompose_examples():
    assert len(elem_decompose(Matrix.identity(F5, 2))) == 0
    M = Matrix.parse(F5, "[[1,3],[2,2]]")
    w = elem_decompose(M)
    assert len(w) == 3 and all(isinstance(t, Elem) for t in w.tokens) and w.eval() == M
    a, b, c, d = 1, 3, 2, 2
    ci = F5(c).inv()
    expected = [F5(a - 1) * ci, F5(c), F5(d - 1) * ci]
    assert [t.t for t in w.tokens] == expected
    with pytest.raises(DeterminantNotOne):
        elem_decompose(Matrix.parse(F5, "[[1,1],[1,2]]") * 2)


def test_elem_decompose_rationals_3x3():
    M = Matrix.parse(Rationals(), "[[0,1,0],[0,0,1],[1,0,0]]")
    w = elem_decompose(M)
    assert w.eval() == M and all(isinstance(t, Elem) for t in w.tokens)


def test_gauss_reduce_examples():
    g = gauss_reduce(Matrix.diag(F5, [1, 1, 3]))
    assert len(g.left) == 0 and len(g.right) == 0
    M = Matrix.parse(F3, "[[0,1],[1,0]]")
    g = gauss_reduce(M)
    assert g.check(M) and g.diag == Matrix.diag(F3, [1, 2])
    M = Matrix.parse(Rationals(), "[[1,1],[1,1]]")
    g = gauss_reduce(M)
    assert g.check(M) and g.diag == Matrix.diag(Rationals(), [1, 0])


def test_gauss_reduce_random():
    rng = random.Random(4)
    for _ in range(40):
        M = Matrix(F5, [[rng.randint(0, 4) for _ in range(3)] for _ in range(3)])
        g = gauss_reduce(M)
        assert g.check(M)
        r = M.rank()
        ones = [F5.one] * r + [F5.zero] * (3 - r)
        if r == 3:
            ones[-1] = M.det()
        assert g.diag == Matrix.diag(F5, ones)


def test_bruhat_examples():
    U = Matrix.parse(F5, "[[2,1],[0,3]]")
    assert bruhat(U).w == (1, 2)
    A = Matrix.parse(F5, "[[0,1],[1,0]]")
    assert bruhat(A).w == (2, 1)
    with pytest.raises(Singular):
        bruhat(Matrix.parse(F5, "[[1,1],[1,1]]"))


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_bruhat_cells_exhaustive(n, q):
    G = group_elements(GroupSpec("GL", n, q))
    cells = {}
    for M in G:
        d = bruhat(M)
        assert d.product() == M
        assert d.b1.is_upper_triangular() and d.b2.is_upper_triangular()
        cells.setdefault(d.w, []).append(M)
    assert len(cells) == {2: 2, 3: 6}[n]
    # the cell is a double-coset invariant (oracle: B M B spans exactly the cell)
    B = [M for M in G if M.is_upper_triangular()]
    for w, members in cells.items():
        rep = members[0]
        orbit = {b1 * rep * b2 for b1 in B for b2 in B}
        assert orbit == set(members)


def test_bruhat_gl2_f2_cell_sizes():
    G = group_elements(GroupSpec("GL", 2, 2))
    sizes = {}
    for M in G:
        w = bruhat(M).w
        sizes[w] = sizes.get(w, 0) + 1
    assert sizes == {(1, 2): 2, (2, 1): 4}


def test_parabolic_borel_and_trivial():
    G = group_elements(GroupSpec("GL", 3, 2))
    borel = Flag((1, 1, 1))
    whole = Flag((3,))
    for M in G:
        assert parabolic_membership(M, borel) == M.is_upper_triangular()
        assert parabolic_membership(M, whole)


def test_levi_split_random_block_f3():
    rng = random.Random(2)
    f = Flag((2, 1))
    done = 0
    while done < 20:
        M = Matrix(F3, [[rng.randint(0, 2) for _ in range(3)] for _ in range(2)] + [[0, 0, rng.randint(1, 2)]])
        if M.det().is_zero():
            continue
        levi, unip = levi_split(M, f)
        assert levi * unip == M
        assert levi[0, 2].is_zero() and levi[1, 2].is_zero()
        N = unip - Matrix.identity(F3, 3)
        assert all(N[i, j].is_zero() for i in range(3) for j in range(3) if not (i < 2 <= j))
        done += 1
    with pytest.raises(NonMember):
        levi_split(Matrix.parse(F3, "[[1,0,0],[0,1,0],[1,0,1]]"), f)


def test_flag_orbits():
    assert flag_orbit_type(Flag((1, 1, 1))) == (1, 1, 1)
    assert compositions(3) == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    assert all(len(compositions(n)) == 2 ** (n - 1) for n in range(1, 7))
    g = Matrix.parse(F5, "[[1,2,0],[3,1,1],[0,4,1]]")
    assert not g.det().is_zero()
    for part in compositions(3):
        assert flag_orbit_type(Flag(part, g)) == part


def test_sl2_automorphisms():
    t = F5(2)
    D = Matrix.diag(F5, [t, t.inv()])
    assert sl2_automorphism(Graph(), D) == Matrix.diag(F5, [t.inv(), t])
    c = Matrix.identity(F5, 2) * 3
    SL = group_elements(GroupSpec("SL", 2, 5))
    assert all(sl2_automorphism(Inner(c), M) == M for M in SL)
    # kernel of Inner on GL_2(F_3) is the center
    GL3 = group_elements(GroupSpec("GL", 2, 3))
    SL3 = group_elements(GroupSpec("SL", 2, 3))
    kernel = [g for g in GL3 if all(sl2_automorphism(Inner(g), M) == M for M in SL3)]
    assert set(kernel) == {Matrix.identity(F3, 2), Matrix.identity(F3, 2) * 2}
    with pytest.raises(DeterminantNotOne):
        sl2_automorphism(Graph(), Matrix.diag(F5, [2, 2]))


def test_field_aut_homomorphism():
    K = QuadraticEtale(F5, 2)
    els = K.elements()
    rng = random.Random(8)
    sl2 = []
    while len(sl2) < 100:
        a, b, c = rng.choice(els), rng.choice(els), rng.choice(els)
        if a.is_zero():
            continue
        sl2.append(Matrix(K, [[a, b], [c, (K.one + b * c) / a]]))
    for g, h in zip(sl2[::2], sl2[1::2]):
        for kind in (FieldAut("conj"), Graph(), Inner(Matrix(K, [[1, 1], [0, 1]]))):
            lhs = sl2_automorphism(kind, g * h)
            assert lhs == sl2_automorphism(kind, g) * sl2_automorphism(kind, h)
            assert lhs.det() == K.one


def test_x12_are_commutators_f5():
    SL = group_elements(GroupSpec("SL", 2, 5))
    for t in F5.elements():
        target = Elem(1, 2, t).matrix(2, F5)
        g, h = find_commutator(target, SL)
        assert g * h * g.inverse() * h.inverse() == target


@pytest.mark.parametrize("p,order", [(3, 24), (5, 120)])
def test_two_unipotents_generate_sl2(p, order):
    F = PrimeField(p)
    gens = [Matrix.parse(F, "[[1,1],[0,1]]"), Matrix.parse(F, "[[1,0],[1,1]]")]
    assert len(generated_subgroup(gens)) == order
