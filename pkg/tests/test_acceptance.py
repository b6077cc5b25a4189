"""Acceptance criteria, one check per criterion.

Each check returns (ok, detail). Under pytest every criterion is a separate
test and conftest prints a PASS/FAIL summary line per criterion; run this file
directly for the same lines without pytest.
"""

import math
import random
import sys
import time
from collections import Counter
from itertools import product

import numpy as np
import pytest
from sympy import primerange

from chevalley import sl2z
from chevalley.classical import FormSpec, all_sp_generator_slots, group_member, lie_basis, sp_chevalley
from chevalley.counting import (
    GroupSpec,
    brute_force_order,
    brute_force_sylow_count,
    conj_classes,
    grassmann_count,
    group_elements,
    order_formula,
    subspaces,
    sylow_p_count,
    unipotent_classes,
)
from chevalley.errors import NonSplitCharPoly
from chevalley.euclid import iwasawa, platonic_enumerate
from chevalley.exactfield import PrimeField, QuadraticEtale, RationalFunctions, Rationals
from chevalley.genword import bruhat, elem_decompose
from chevalley.jordan import brute_force_decompositions, check_invariants, jordan_decompose
from chevalley.matcore import Matrix, regular_rep, trace_form_gram
from chevalley.quat import (
    QuaternionAlgebra,
    Split,
    all_constructions,
    cross_product,
    find_lm,
    four_square,
    is_split,
    unit_quat_rotation,
)
from chevalley.rootdatum import ad_weights, build, validate, weyl_closure

Q = Rationals()

RESULTS = {}


def _timed(limit):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if limit is not None and dt >= limit:
                ok, detail = False, f"{detail}; too slow ({dt:.1f}s >= {limit}s)"
            return ok, f"{detail} [{dt:.2f}s]"
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed(10)
def c01_generation():
    """elem_decompose round-trips SL2(F5) and SL3(F2)."""
    sizes = []
    for n, q in ((2, 5), (3, 2)):
        G = group_elements(GroupSpec("SL", n, q))
        sizes.append(len(G))
        for M in G:
            if elem_decompose(M).eval() != M:
                return False, f"round trip failed for {M}"
    return sizes == [120, 168], f"sizes {sizes}"


@_timed(30)
def c02_bruhat():
    """n! nonempty cells, exact reconstruction, GL2(F2) cell sizes {2, 4}."""
    info = []
    for n, q in ((2, 2), (2, 3), (3, 2)):
        cells = Counter()
        for M in group_elements(GroupSpec("GL", n, q)):
            d = bruhat(M)
            if d.product() != M or not (d.b1.is_upper_triangular() and d.b2.is_upper_triangular()):
                return False, f"bad decomposition of {M}"
            cells[d.w] += 1
        if len(cells) != math.factorial(n):
            return False, f"GL{n}(F{q}): {len(cells)} cells"
        info.append((n, q, sorted(cells.values())))
    ok = info[0][2] == [2, 4]
    return ok, f"cell sizes {info}"


@_timed(None)
def c03_counting():
    """order, Grassmannian and Sylow counts against brute force."""
    for n, q in ((2, 2), (2, 3), (3, 2)):
        for fam in ("GL", "SL", "PGL", "PSL"):
            s = GroupSpec(fam, n, q)
            if order_formula(s) != brute_force_order(s):
                return False, f"order {fam}({n},{q})"
    for q in (2, 3):
        for n in range(1, 5):
            for r in range(n + 1):
                if grassmann_count(n, r, q) != len(subspaces(n, r, q)):
                    return False, f"grassmann ({n},{r},{q})"
    sy = (brute_force_sylow_count(2, 2), brute_force_sylow_count(2, 3))
    ok = sy == (3, 4) and (sylow_p_count(2, 2), sylow_p_count(2, 3)) == sy
    return ok, f"sylow counts {sy}"


@_timed(10)
def c04_conjugacy():
    """3 and 7 classes, class equation, 2 unipotent classes in SL2(F5)."""
    g = conj_classes(GroupSpec("GL", 2, 2))
    s = conj_classes(GroupSpec("SL", 2, 3))
    for t in (g, s):
        if sum(c for _, c in t.classes) != t.order:
            return False, "class equation fails"
    u = unipotent_classes(conj_classes(GroupSpec("SL", 2, 5)))
    counts = (len(g.classes), len(s.classes), len(u))
    return counts == (3, 7, 2), f"classes GL2(F2), SL2(F3), unipotent SL2(F5): {counts}"


@_timed(None)
def c05_jordan():
    """All split matrices of M2(F3): invariants and uniqueness."""
    F3 = PrimeField(3)
    seen = 0
    for e in product(range(3), repeat=4):
        M = Matrix(F3, [e[:2], e[2:]])
        try:
            d = jordan_decompose(M)
        except NonSplitCharPoly:
            continue
        seen += 1
        bad = check_invariants(M, d)
        if bad:
            return False, f"{M}: {bad}"
        if brute_force_decompositions(M) != [(d.S, d.N)]:
            return False, f"{M}: not unique"
    return seen == 63, f"{seen} split matrices checked"


@_timed(60)
def c06_root_data():
    """SL2/PGL2 data, validation, Weyl orders, adjoint weights."""
    sl2, pgl2 = build("SL2"), build("PGL2")
    if (sl2.roots, sl2.coroots) != ([(2,), (-2,)], [(1,), (-1,)]):
        return False, "SL2 datum"
    if (pgl2.roots, pgl2.coroots) != ([(1,), (-1,)], [(2,), (-2,)]):
        return False, "PGL2 datum"
    fams = [("SL2", None), ("PGL2", None)] + [(t, l) for t in ("GL", "Sp", "SOeven", "SOodd")
                                             for l in (1, 2, 3) if not (t == "GL" and l == 1)]
    for t, l in fams:
        d = build(t, l)
        if not validate(d):
            return False, f"validate {t}{l}"
        if Counter(x for _, x in ad_weights(t, l) if any(x)) != Counter(d.roots):
            return False, f"ad weights {t}{l}"
    orders = {k: weyl_closure(build(*k))[1] for k in
              (("GL", 4), ("Sp", 2), ("Sp", 3), ("SOeven", 2), ("SOeven", 3))}
    want = {("GL", 4): 24, ("Sp", 2): 8, ("Sp", 3): 48, ("SOeven", 2): 4, ("SOeven", 3): 24}
    return orders == want, f"weyl orders {list(orders.values())}"


@_timed(None)
def c07_classical():
    """Lie algebra dimensions, Sp generators, center of Sp2(F3)."""
    sp = tuple(len(lie_basis(FormSpec("Sp", l, Q))) for l in (1, 2, 3))
    so = tuple(len(lie_basis(FormSpec("SOeven", l, Q))) for l in (1, 2, 3))
    if (sp, so) != ((3, 10, 21), (1, 6, 15)):
        return False, f"dimensions {sp} {so}"
    for F in (PrimeField(5), Q):
        for l in (1, 2, 3):
            form = FormSpec("Sp", l, F)
            for kind, i, j in all_sp_generator_slots(l):
                for t in (1, 2, 3):
                    g = sp_chevalley(kind, i, j, t, form)
                    if not group_member(g, form) or g.det() != 1:
                        return False, f"generator {kind} {i} {j} over {F}"
    F3 = PrimeField(3)
    form = FormSpec("Sp", 1, F3)
    G = [M for M in group_elements(GroupSpec("GL", 2, 3)) if group_member(M, form)]
    center = {z for z in G if all(z * g == g * z for g in G)}
    ok = center == {Matrix.identity(F3, 2), Matrix.identity(F3, 2) * -1}
    return ok, f"dims {sp} {so}; |Sp2(F3)| = {len(G)}; center size {len(center)}"


@_timed(None)
def c08_quaternions():
    """Constructions agree; norm and Jacobi on 500 samples; split over F_p."""
    for F, a, b in ((PrimeField(5), 2, 3), (Q, -1, -1)):
        tables = all_constructions(F, a, b)
        if len(tables) != 5 or len({id(t) for t in tables.values()}) != 5:
            return False, "expected five separate constructions"
        if any(t != tables["canonical"] for t in tables.values()):
            return False, f"constructions differ over {F}"
    rng = random.Random(8)
    for F, a, b in ((PrimeField(7), 3, 5), (Q, -1, -1)):
        A = QuaternionAlgebra(F, a, b)
        for _ in range(500):
            x, y = A.random(rng), A.random(rng)
            if (x * y).norm() != x.norm() * y.norm():
                return False, "norm not multiplicative"
            u, v, w = (A(0, *z.coords[1:]) for z in (x, y, A.random(rng)))
            jac = cross_product(u, cross_product(v, w)) + cross_product(v, cross_product(w, u)) \
                + cross_product(w, cross_product(u, v))
            if not jac.is_zero():
                return False, "Jacobi fails"
    n = 0
    for p in primerange(3, 48):
        F = PrimeField(p)
        for _ in range(20):
            a, b = rng.randint(1, p - 1), rng.randint(1, p - 1)
            r = is_split(QuaternionAlgebra(F, a, b))
            if not isinstance(r, Split):
                return False, f"({a},{b}) over F{p} not split"
            x, y, z = r.witness
            if F(a) * x * x + F(b) * y * y != z * z or all(t.is_zero() for t in (x, y, z)):
                return False, f"bad witness over F{p}"
            n += 1
    return True, f"{n} split algebras, 1000 norm and Jacobi samples"


@_timed(30)
def c09_four_squares():
    """four_square for n <= 10000, find_lm for odd primes below 1000."""
    for n in range(10001):
        if sum(t * t for t in four_square(n)) != n:
            return False, f"n = {n}"
    ps = list(primerange(3, 1000))
    for p in ps:
        l, m = find_lm(p)
        if (1 + l * l + m * m) % p or not (0 <= l <= (p - 1) // 2 and 0 <= m <= (p - 1) // 2):
            return False, f"find_lm({p}) = {(l, m)}"
    return True, f"10001 values, {len(ps)} primes"


@_timed(None)
def c10_sl2z():
    """Word round trips, relations, reduction to the fundamental domain."""
    rng = random.Random(10)
    for _ in range(1000):
        w = sl2z.Word([(rng.choice("SU"), rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(30)])
        M = w.eval()
        if sl2z.su_decompose(M).eval() != M:
            return False, "round trip failed"
    if sl2z.mpow(sl2z.S, 2) != sl2z.MINUS_I or sl2z.mpow(sl2z.mul(sl2z.S, sl2z.U), 3) != sl2z.MINUS_I:
        return False, "relations fail"
    from fractions import Fraction
    for _ in range(500):
        z = sl2z.RationalPoint(Fraction(rng.randint(-10 ** 4, 10 ** 4), rng.randint(1, 997)),
                               Fraction(rng.randint(1, 10 ** 3), rng.randint(1, 10 ** 4)))
        w, steps = sl2z.reduce_to_fundamental_domain(z)
        if not (abs(w.x) <= Fraction(1, 2) and w.abs2 >= 1):
            return False, f"{z} reduced to {w}"
        if sl2z.replay(z, steps) != w or sl2z.mobius(sl2z.steps_matrix(steps), z) != w:
            return False, f"replay of {z} differs"
    return True, "1000 words, 500 points"


@_timed(None)
def c11_euclid():
    """Iwasawa, the rotation for a = cos t j + sin t ij, sign invariance, Platonic solids."""
    rng = np.random.default_rng(11)
    worst = 0.0
    done = 0
    while done < 100:
        A = rng.normal(size=(5, 5))
        if abs(np.linalg.det(A)) < 1e-6:
            continue
        P, S = iwasawa(A)
        err = max(float(np.max(np.abs(A - P @ S))), float(np.max(np.abs(S.T @ S - np.eye(5)))))
        worst = max(worst, err)
        if err > 1e-9 or np.any(np.tril(P, -1)):
            return False, f"iwasawa error {err:.3g}"
        done += 1
    for theta in np.linspace(-math.pi, math.pi, 20):
        a = np.array([0.0, 0.0, math.cos(theta), math.sin(theta)])
        c, s = math.cos(2 * theta), math.sin(2 * theta)
        expected = np.array([[-1, 0, 0], [0, c, s], [0, s, -c]])
        if float(np.max(np.abs(unit_quat_rotation(a) - expected))) > 1e-12:
            return False, f"theta = {theta}"
        if float(np.max(np.abs(unit_quat_rotation(a) - unit_quat_rotation(-a)))) > 1e-12:
            return False, "phi_a != phi_-a"
    solids = platonic_enumerate()
    ok = len(solids) == 5 and (4, 3, 8, 12, 6) in solids
    return ok, f"iwasawa worst {worst:.2e}; solids {len(solids)}"


@_timed(None)
def c12_embeddings():
    """Regular representation and trace forms."""
    K = QuadraticEtale(Q, 2)
    R = regular_rep(K("3+2w"))
    if R != Matrix.parse(Q, "[[3,4],[2,3]]") or R.det() != 1:
        return False, f"regular_rep {R}"
    if trace_form_gram(K) != Matrix.diag(Q, [2, 4]):
        return False, "gram over Q(sqrt 2)"
    F = RationalFunctions(2)
    G = trace_form_gram(QuadraticEtale(F, F.t()))
    return G.is_zero(), "gram over F2(t)[sqrt t] is zero" if G.is_zero() else f"gram {G}"


CRITERIA = [c01_generation, c02_bruhat, c03_counting, c04_conjugacy, c05_jordan, c06_root_data,
            c07_classical, c08_quaternions, c09_four_squares, c10_sl2z, c11_euclid, c12_embeddings]


@pytest.mark.parametrize("check", CRITERIA, ids=[c.__name__ for c in CRITERIA])
def test_criterion(check):
    ok, detail = check()
    RESULTS[check.__name__] = (ok, detail)
    assert ok, detail


def main():
    failed = 0
    for check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {check.__name__}: {detail}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
