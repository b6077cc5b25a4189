"""Root data (X, R, Y, R^v) with X = Y = Z^rank and the dot-product pairing.

Supported types: ``SL2``, ``PGL2``, ``GL`` (rank n), ``Sp``, ``SOeven`` and
``SOodd`` (rank l). For PGL2 the character lattice is identified with Z via
lambda -> diag(lambda, 1), so the root is 1 and the coroot 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from sympy import prime

from .errors import (
    ClosureBoundExceeded,
    InvalidRank,
    NotSimpleSystem,
    WeightExtractionFailure,
)
from .exactfield import Rationals
from .matcore import Matrix, solve_columns

TYPES = ("SL2", "PGL2", "GL", "Sp", "SOeven", "SOodd")


def _norm_type(t: str) -> str:
    key = t.lower().replace("_", "")
    table = {"sl2": "SL2", "pgl2": "PGL2", "gl": "GL", "gln": "GL", "sp": "Sp",
             "soeven": "SOeven", "soodd": "SOodd"}
    if key not in table:
        raise InvalidRank(f"unknown root datum type {t!r}")
    return table[key]


def pair(x, y) -> int:
    return sum(a * b for a, b in zip(x, y))


@dataclass
class RootDatum:
    rank: int
    roots: list
    coroots: list
    name: str = ""

    def __post_init__(self):
        self.roots = [tuple(r) for r in self.roots]
        self.coroots = [tuple(c) for c in self.coroots]

    def coroot_of(self, alpha):
        return self.coroots[self.roots.index(tuple(alpha))]

    def reflection(self, k) -> tuple:
        """Matrix of s_alpha(x) = x - <x, alpha^v> alpha on column vectors."""
        a, av = self.roots[k], self.coroots[k]
        n = self.rank
        return tuple(tuple(int(i == j) - a[i] * av[j] for j in range(n)) for i in range(n))

    def coreflection(self, k) -> tuple:
        a, av = self.roots[k], self.coroots[k]
        n = self.rank
        return tuple(tuple(int(i == j) - av[i] * a[j] for j in range(n)) for i in range(n))

    def to_json(self):
        return {"rank": self.rank, "roots": [list(r) for r in self.roots],
                "coroots": [list(c) for c in self.coroots]}


def _e(n, i):
    return tuple(int(k == i) for k in range(n))


def _add(*vs):
    return tuple(sum(x) for x in zip(*vs))


def _scale(c, v):
    return tuple(c * x for x in v)


def build(type_: str, l: int | None = None) -> RootDatum:
    t = _norm_type(type_)
    if t == "SL2":
        return RootDatum(1, [(2,), (-2,)], [(1,), (-1,)], "SL2")
    if t == "PGL2":
        return RootDatum(1, [(1,), (-1,)], [(2,), (-2,)], "PGL2")
    if l is None:
        raise InvalidRank(f"{t} needs a rank")
    if t == "GL":
        if l < 2:
            raise InvalidRank("GL_n needs n >= 2")
        roots = [_add(_e(l, i), _scale(-1, _e(l, j))) for i in range(l) for j in range(l) if i != j]
        return RootDatum(l, roots, list(roots), f"GL{l}")
    if l < 1:
        raise InvalidRank(f"{t} needs l >= 1")
    roots, coroots = [], []
    for i in range(l):
        for j in range(l):
            if i != j:
                r = _add(_e(l, i), _scale(-1, _e(l, j)))
                roots.append(r)
                coroots.append(r)
    for i in range(l):
        for j in range(i + 1, l):
            for s in (1, -1):
                r = _scale(s, _add(_e(l, i), _e(l, j)))
                roots.append(r)
                coroots.append(r)
    for i in range(l):
        for s in (1, -1):
            if t == "Sp":
                roots.append(_scale(2 * s, _e(l, i)))
                coroots.append(_scale(s, _e(l, i)))
            elif t == "SOodd":
                roots.append(_scale(s, _e(l, i)))
                coroots.append(_scale(2 * s, _e(l, i)))
    return RootDatum(l, roots, coroots, f"{t}{l}")


@dataclass
class ValidationReport:
    ok: bool
    violations: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def _apply(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


def validate(d: RootDatum) -> ValidationReport:
    """Check 0 not a root, <a, a^v> = 2, s_a(R) = R and s_a^v(R^v) = R^v."""
    bad = []
    if len(d.roots) != len(d.coroots):
        bad.append(("bijection", "roots and coroots differ in number"))
    if len(set(d.roots)) != len(d.roots):
        bad.append(("distinct", "repeated root"))
    R, Rv = set(d.roots), set(d.coroots)
    for k, (a, av) in enumerate(zip(d.roots, d.coroots)):
        if not any(a):
            bad.append(("nonzero", a))
        if pair(a, av) != 2:
            bad.append(("pairing", (a, av, pair(a, av))))
            continue
        s, sv = d.reflection(k), d.coreflection(k)
        for b in d.roots:
            if _apply(s, b) not in R:
                bad.append(("s_a(R)=R", (a, b, _apply(s, b))))
                break
        for bv in d.coroots:
            if _apply(sv, bv) not in Rv:
                bad.append(("s_a^v(R^v)=R^v", (av, bv, _apply(sv, bv))))
                break
    return ValidationReport(not bad, bad)


def _matmul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def weyl_closure(d: RootDatum, bound: int = 10 ** 6):
    """All products of the reflections s_a, by breadth-first search.
    Elements are listed by generation, then lexicographically."""
    n = d.rank
    eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    gens = sorted({d.reflection(k) for k in range(len(d.roots))})
    seen = {eye}
    order = [eye]
    frontier = [eye]
    while frontier:
        nxt = set()
        for g in frontier:
            for s in gens:
                h = _matmul(s, g)
                if h not in seen:
                    nxt.add(h)
        nxt = sorted(nxt)
        seen.update(nxt)
        order.extend(nxt)
        if len(order) > bound:
            raise ClosureBoundExceeded(f"more than {bound} Weyl group elements")
        frontier = nxt
    return order, len(order)


def standard_simple_roots(d: RootDatum):
    """Indices of the usual simple system for the built types."""
    n = d.rank
    name = d.name
    if name in ("SL2", "PGL2"):
        return [d.roots.index(d.roots[0] if d.roots[0][0] > 0 else d.roots[1])]
    wanted = [_add(_e(n, i), _scale(-1, _e(n, i + 1))) for i in range(n - 1)]
    if name.startswith("Sp"):
        wanted.append(_scale(2, _e(n, n - 1)))
    elif name.startswith("SOodd"):
        wanted.append(_e(n, n - 1))
    elif name.startswith("SOeven") and n >= 2:
        wanted.append(_add(_e(n, n - 2), _e(n, n - 1)))
    return [d.roots.index(w) for w in wanted]


def cartan_matrix(d: RootDatum, simple):
    """Entries <a_i, a_j^v> for the given simple root indices."""
    Q = Rationals()
    simple_roots = [d.roots[k] for k in simple]
    cols = [[Q(x) for x in a] for a in simple_roots]
    if cols and Matrix(Q, list(zip(*cols))).rank() != len(cols):
        raise NotSimpleSystem("simple roots are linearly dependent")
    for b in d.roots:
        sol = solve_columns(Q, cols, [Q(x) for x in b]) if cols else None
        if sol is None:
            raise NotSimpleSystem(f"root {b} is not in the span of the simple roots")
        vals = [s.v for s in sol]
        if any(v.denominator != 1 for v in vals):
            raise NotSimpleSystem(f"root {b} is not an integer combination")
        if not (all(v >= 0 for v in vals) or all(v <= 0 for v in vals)):
            raise NotSimpleSystem(f"root {b} has mixed-sign coefficients {vals}")
    return [[pair(a, d.coroot_of(c)) for c in simple_roots] for a in simple_roots]


# -- weights of the adjoint action -------------------------------------------


def _lie_basis_for(t, l):
    Q = Rationals()
    if t == "GL":
        return [(f"e({i + 1},{j + 1})", Matrix.unit(Q, l, i, j)) for i in range(l) for j in range(l)]
    if t == "SL2":
        return [("e(1,2)", Matrix.unit(Q, 2, 0, 1)), ("e(2,1)", Matrix.unit(Q, 2, 1, 0)),
                ("e(1,1)-e(2,2)", Matrix(Q, [[1, 0], [0, -1]]))]
    if t == "PGL2":
        return [(f"e({i + 1},{j + 1})", Matrix.unit(Q, 2, i, j)) for i in range(2) for j in range(2)]
    from .classical import FormSpec, lie_basis

    return lie_basis(FormSpec(t, l, Q))


def _torus(t, l):
    """A rational torus element built from the first primes, and those primes."""
    primes = [prime(k + 1) for k in range(max(l or 1, 1))]
    Q = Rationals()
    if t == "GL":
        return Matrix.diag(Q, primes[:l]), primes[:l]
    if t == "SL2":
        return Matrix.diag(Q, [2, Fraction(1, 2)]), [2]
    if t == "PGL2":
        # lambda -> diag(lambda, 1)
        return Matrix.diag(Q, [2, 1]), [2]
    ps = primes[:l]
    diag = ps + [Fraction(1, p) for p in ps]
    if t == "SOodd":
        diag = [1] + diag
    return Matrix.diag(Q, diag), ps


def _exponents(c: Fraction, primes):
    out = []
    num, den = c.numerator, c.denominator
    for p in primes:
        k = 0
        while num % p == 0:
            num //= p
            k += 1
        while den % p == 0:
            den //= p
            k -= 1
        out.append(k)
    if num != 1 or den != 1:
        raise WeightExtractionFailure(f"scaling {c} is not a product of {primes}")
    return tuple(out)


def ad_weights(type_: str, l: int | None = None):
    """(label, weight) for each Lie algebra basis vector X, read off from
    t X t^-1 = c X with t a diagonal torus element with prime entries."""
    t = _norm_type(type_)
    basis = _lie_basis_for(t, l)
    T, primes = _torus(t, l)
    Tinv = T.inverse()
    out = []
    for label, X in basis:
        Y = T * X * Tinv
        k = next(((i, j) for i in range(X.nrows) for j in range(X.ncols) if not X[i, j].is_zero()))
        c = Y[k] / X[k]
        if Y != X * c:
            raise WeightExtractionFailure(f"{label} is not an eigenvector of Ad(t)")
        out.append((label, _exponents(c.v, primes)))
    return out
