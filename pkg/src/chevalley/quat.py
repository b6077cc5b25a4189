"""Quaternion algebras (a, b / k) with i^2 = a, j^2 = b and ij = -ji.

Elements carry coordinates (x0, x1, x2, x3) on the basis (1, i, j, ij).
Besides the direct multiplication table, the algebra can be rebuilt from
quadratic etale pieces in several ways (graded tensor product, doubling,
Clifford algebra, cyclic algebra, cross product on pure quaternions); each
construction returns structure constants on (1, i, j, ij) so they can be
compared entry by entry.

The last part of the module is about integers and real floats: the four
square theorem by descent, and unit quaternions as rotations and as SU_2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np
from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

from .errors import (
    AlgebraMismatch,
    InvalidParameters,
    NotOddPrime,
    NotPure,
    NotUnit,
    UnsupportedBase,
)
from .exactfield import PrimeField, QuadraticEtale, Rationals, Scalar
from .matcore import Matrix


class QuaternionAlgebra:
    def __init__(self, field, a, b):
        if field.characteristic == 2:
            raise InvalidParameters("quaternion algebras need characteristic != 2")
        self.field = field
        self.a = field(a)
        self.b = field(b)
        if self.a.is_zero() or self.b.is_zero():
            raise InvalidParameters("a and b must be nonzero")

    def __eq__(self, other):
        return (isinstance(other, QuaternionAlgebra) and self.field == other.field
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __repr__(self):
        return f"QuaternionAlgebra({self.a}, {self.b} / {self.field})"

    def __call__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, Scalar)):
            coords = tuple(coords[0])
        if len(coords) == 1:
            coords = (coords[0], 0, 0, 0)
        return QuaternionElement(self, coords)

    @property
    def one(self):
        return self(1, 0, 0, 0)

    @property
    def i(self):
        return self(0, 1, 0, 0)

    @property
    def j(self):
        return self(0, 0, 1, 0)

    @property
    def ij(self):
        return self(0, 0, 0, 1)

    def basis(self):
        return [self.one, self.i, self.j, self.ij]

    def structure_constants(self):
        return StructureConstants.from_product(self.field, lambda r, s: (self.basis()[r] * self.basis()[s]).coords)

    def random(self, rng):
        """Random element; the base must be finite or Q (small numerators)."""
        F = self.field
        if F.is_finite:
            els = F.elements()
            return self(*[rng.choice(els) for _ in range(4)])
        return self(*[F(rng.randint(-9, 9)) for _ in range(4)])


class QuaternionElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        if len(coords) != 4:
            raise InvalidParameters("a quaternion has four coordinates")
        self.algebra = algebra
        self.coords = tuple(algebra.field(c) for c in coords)

    def _same(self, other):
        if isinstance(other, QuaternionElement):
            if other.algebra != self.algebra:
                raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")
            return other
        return self.algebra(other, 0, 0, 0)

    def __add__(self, other):
        o = self._same(other)
        return QuaternionElement(self.algebra, [x + y for x, y in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._same(other)
        return QuaternionElement(self.algebra, [x - y for x, y in zip(self.coords, o.coords)])

    def __neg__(self):
        return QuaternionElement(self.algebra, [-x for x in self.coords])

    def __mul__(self, other):
        if not isinstance(other, QuaternionElement):
            c = self.algebra.field(other)
            return QuaternionElement(self.algebra, [x * c for x in self.coords])
        o = self._same(other)
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = o.coords
        return QuaternionElement(self.algebra, (
            x0 * y0 + x1 * y1 * a + x2 * y2 * b - x3 * y3 * a * b,
            x0 * y1 + x1 * y0 - x2 * y3 * b + x3 * y2 * b,
            x0 * y2 + x1 * y3 * a + x2 * y0 - x3 * y1 * a,
            x0 * y3 + x1 * y2 - x2 * y1 + x3 * y0,
        ))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e):
        out = self.algebra.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, QuaternionElement):
            return self.algebra == other.algebra and self.coords == other.coords
        if isinstance(other, (int, Scalar)):
            return self == self.algebra(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def conj(self):
        x0, x1, x2, x3 = self.coords
        return QuaternionElement(self.algebra, (x0, -x1, -x2, -x3))

    def norm(self):
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - x1 * x1 * a - x2 * x2 * b + x3 * x3 * a * b

    def trace(self):
        return self.coords[0] + self.coords[0]

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def is_pure(self):
        return self.coords[0].is_zero()

    def inverse(self):
        n = self.norm()
        return self.conj() * n.inv()

    def __str__(self):
        names = ("", "i", "j", "ij")
        parts = []
        for c, nm in zip(self.coords, names):
            if c.is_zero():
                continue
            s = str(c)
            if nm:
                s = nm if s == "1" else ("-" + nm if s == "-1" else f"({s}){nm}")
            parts.append(s)
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def qmul_conj_norm_trace(x, y):
    """(xy, conj x, N(x), tr(x)) for two elements of one algebra."""
    if x.algebra != y.algebra:
        raise AlgebraMismatch(f"{x.algebra} vs {y.algebra}")
    return x * y, x.conj(), x.norm(), x.trace()


# -- structure constants and constructions -------------------------------------


class StructureConstants:
    """c[r][s] = coordinates of basis_r * basis_s on (1, i, j, ij)."""

    def __init__(self, field, table):
        self.field = field
        self.table = tuple(tuple(tuple(field(v) for v in cell) for cell in row) for row in table)

    @classmethod
    def from_product(cls, field, prod):
        return cls(field, [[prod(r, s) for s in range(4)] for r in range(4)])

    def __eq__(self, other):
        return isinstance(other, StructureConstants) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def mul(self, x, y):
        out = [self.field.zero] * 4
        for r in range(4):
            if x[r].is_zero():
                continue
            for s in range(4):
                if y[s].is_zero():
                    continue
                c = x[r] * y[s]
                for k in range(4):
                    out[k] = out[k] + c * self.table[r][s][k]
        return tuple(out)

    def is_associative(self):
        F = self.field
        e = [tuple(F(int(k == r)) for k in range(4)) for r in range(4)]
        return all(self.mul(self.mul(e[r], e[s]), e[t]) == self.mul(e[r], self.mul(e[s], e[t]))
                   for r, s, t in product(range(4), repeat=3))

    def has_identity(self):
        F = self.field
        one = tuple(F(int(k == 0)) for k in range(4))
        for r in range(4):
            er = tuple(F(int(k == r)) for k in range(4))
            if self.mul(one, er) != er or self.mul(er, one) != er:
                return False
        return True

    def to_json(self):
        return [[[str(v) for v in cell] for cell in row] for row in self.table]


@dataclass(frozen=True)
class Canonical:
    field: object
    a: object
    b: object


@dataclass(frozen=True)
class GradedTensor:
    """K (x) L with K = k[alpha], L = k[beta], both odd generators of degree 1."""
    K: QuadraticEtale
    L: QuadraticEtale


@dataclass(frozen=True)
class Doubling:
    """Pairs (x, y) in K x K with (x1,y1)(x2,y2) = (x1x2 + lam y1 ~y2, x1y2 + ~x2 y1)."""
    K: QuadraticEtale
    lam: object


@dataclass(frozen=True)
class Clifford:
    """Clifford algebra of the diagonal form <a, b> on k^2."""
    field: object
    a: object
    b: object


@dataclass(frozen=True)
class Cyclic:
    """K + K e with e^2 = b and e x = sigma(x) e, sigma the conjugation of K."""
    K: QuadraticEtale
    b: object


@dataclass(frozen=True)
class CrossProduct:
    """k + V with V = k^3 carrying the form N0 = <-a, -b, ab> and the cross
    product determined by N0(u, v x w) = c det(u, v, w). Needs c^2 = (ab)^2."""
    field: object
    a: object
    b: object
    c: object


def _etale_check(K):
    if not isinstance(K, QuadraticEtale):
        raise InvalidParameters("expected a quadratic etale algebra")
    if K.characteristic == 2:
        raise InvalidParameters("characteristic 2 is not allowed")


def _canonical(F, a, b):
    return QuaternionAlgebra(F, a, b).structure_constants()


def _graded_tensor(K, L):
    _etale_check(K)
    _etale_check(L)
    if K.base != L.base:
        raise InvalidParameters("K and L must share the base field")
    F = K.base
    # basis (deg_K, deg_L): 1x1, alpha x 1, 1 x beta, alpha x beta
    idx = [(0, 0), (1, 0), (0, 1), (1, 1)]
    gK = [K.one, K.w()]
    gL = [L.one, L.w()]

    def prod(r, s):
        (p, q), (p2, q2) = idx[r], idx[s]
        sign = -1 if (q * p2) % 2 else 1
        x = gK[p] * gK[p2]
        y = gL[q] * gL[q2]
        out = [F.zero] * 4
        for u, cu in enumerate(x.parts):
            for v, cv in enumerate(y.parts):
                out[idx.index((u, v))] = cu * cv * sign
        return out

    return StructureConstants.from_product(F, prod)


def _doubling(K, lam):
    _etale_check(K)
    F = K.base
    lam = F(lam)
    if lam.is_zero():
        raise InvalidParameters("lambda must be nonzero")
    w = K.w()
    basis = [(K.one, K.zero), (w, K.zero), (K.zero, K.one), (K.zero, w)]

    def mul(u, v):
        x1, y1 = u
        x2, y2 = v
        return (x1 * x2 + y1 * y2.conj() * lam, x1 * y2 + x2.conj() * y1)

    def prod(r, s):
        x, y = mul(basis[r], basis[s])
        return list(x.parts) + list(y.parts)

    return StructureConstants.from_product(F, prod)


def _clifford(F, a, b):
    q = {1: F(a), 2: F(b)}
    if any(v.is_zero() for v in q.values()):
        raise InvalidParameters("the form must be nondegenerate")
    words = [(), (1,), (2,), (1, 2)]

    def reduce_word(word):
        # bubble sort; swapping distinct orthogonal generators costs a sign,
        # and v v = q(v) removes adjacent equal letters
        coeff = F.one
        w = list(word)
        changed = True
        while changed:
            changed = False
            for k in range(len(w) - 1):
                if w[k] == w[k + 1]:
                    coeff = coeff * q[w[k]]
                    del w[k:k + 2]
                    changed = True
                    break
                if w[k] > w[k + 1]:
                    w[k], w[k + 1] = w[k + 1], w[k]
                    coeff = -coeff
                    changed = True
                    break
        return coeff, tuple(w)

    def prod(r, s):
        c, w = reduce_word(words[r] + words[s])
        out = [F.zero] * 4
        out[words.index(w)] = c
        return out

    return StructureConstants.from_product(F, prod)


def _cyclic(K, b):
    _etale_check(K)
    F = K.base
    b = F(b)
    if b.is_zero():
        raise InvalidParameters("b must be nonzero")
    w = K.w()
    # u + v e written as (u, v); alpha e is (0, alpha)
    basis = [(K.one, K.zero), (w, K.zero), (K.zero, K.one), (K.zero, w)]

    def mul(x, y):
        u1, v1 = x
        u2, v2 = y
        return (u1 * u2 + v1 * v2.conj() * b, u1 * v2 + v1 * u2.conj())

    def prod(r, s):
        u, v = mul(basis[r], basis[s])
        return list(u.parts) + list(v.parts)

    return StructureConstants.from_product(F, prod)


def _cross(F, a, b, c):
    a, b, c = F(a), F(b), F(c)
    if c * c != (a * b) * (a * b):
        raise InvalidParameters("the cross-product construction needs c^2 = (ab)^2")
    form = [-a, -b, a * b]

    def n0(v, w):
        return sum((f * x * y for f, x, y in zip(form, v, w)), F.zero)

    def cross(v, w):
        minors = [v[1] * w[2] - v[2] * w[1], v[2] * w[0] - v[0] * w[2], v[0] * w[1] - v[1] * w[0]]
        return [c * m / f for m, f in zip(minors, form)]

    basis = [(F.one, [F.zero] * 3)] + [(F.zero, [F(int(k == r)) for k in range(3)]) for r in range(3)]

    def prod(r, s):
        (s0, v), (t0, w) = basis[r], basis[s]
        vw = cross(v, w)
        return [s0 * t0 - n0(v, w)] + [s0 * y + t0 * x + z for x, y, z in zip(v, w, vw)]

    return StructureConstants.from_product(F, prod)


def construct(method) -> StructureConstants:
    if isinstance(method, Canonical):
        return _canonical(method.field, method.a, method.b)
    if isinstance(method, GradedTensor):
        return _graded_tensor(method.K, method.L)
    if isinstance(method, Doubling):
        return _doubling(method.K, method.lam)
    if isinstance(method, Clifford):
        return _clifford(method.field, method.a, method.b)
    if isinstance(method, Cyclic):
        return _cyclic(method.K, method.b)
    if isinstance(method, CrossProduct):
        return _cross(method.field, method.a, method.b, method.c)
    raise InvalidParameters(f"unknown construction {method!r}")


def all_constructions(F, a, b):
    """The five constructions of (a, b / F) on a common footing."""
    Ka, Kb = QuadraticEtale(F, a), QuadraticEtale(F, b)
    return {
        "canonical": construct(Canonical(F, a, b)),
        "graded_tensor": construct(GradedTensor(Ka, Kb)),
        "doubling": construct(Doubling(Ka, b)),
        "clifford": construct(Clifford(F, a, b)),
        "cyclic": construct(Cyclic(Ka, b)),
    }


# -- splitting -----------------------------------------------------------------


@dataclass(frozen=True)
class Split:
    witness: tuple


@dataclass(frozen=True)
class Division:
    pass


@dataclass(frozen=True)
class Unknown:
    bound: int


def _sqrt_fp(F, x):
    for s in F.elements():
        if s * s == x:
            return s
    return None


def is_split(Q: QuaternionAlgebra, search_bound: int | None = None):
    """Look for a nonzero point on the conic a x^2 + b y^2 = z^2."""
    F, a, b = Q.field, Q.a, Q.b
    if isinstance(F, PrimeField):
        for x, y in ((1, 0), (0, 1)):
            z = _sqrt_fp(F, a if x else b)
            if z is not None:
                return Split((F(x), F(y), z))
        squares = {s * s: s for s in F.elements()}
        for x, y in product(F.elements(), repeat=2):
            t = a * x * x + b * y * y
            if t in squares:
                z = squares[t]
                if not (x.is_zero() and y.is_zero() and z.is_zero()):
                    return Split((x, y, z))
        return Division()
    if isinstance(F, Rationals):
        bound = 100 if search_bound is None else search_bound
        for h in range(1, bound + 1):
            # points of height exactly h in (x, y), x, y >= 0
            for x in range(h + 1):
                for y in ((h,) if x < h else range(h + 1)):
                    t = a * x * x + b * y * y
                    if t.v >= 0 and F.is_square(t):
                        num, den = t.v.numerator, t.v.denominator
                        z = F(math.isqrt(num)) / F(math.isqrt(den))
                        return Split((F(x), F(y), z))
        return Unknown(bound)
    raise UnsupportedBase(f"is_split works over F_p and Q, not {F}")


# -- M_2(K) embedding and cross product ------------------------------------------


def embed_m2k(x: QuaternionElement) -> Matrix:
    """x = z1 + z2 j with z1, z2 in K = k[alpha], alpha^2 = a, as a 2x2 matrix over K."""
    Q = x.algebra
    K = QuadraticEtale(Q.field, Q.a)
    x0, x1, x2, x3 = x.coords
    z1, z2 = K((x0, x1)), K((x2, x3))
    return Matrix(K, [[z1, z2 * Q.b], [z2.conj(), z1.conj()]])


def n0(v: QuaternionElement, w: QuaternionElement):
    """Bilinear form on pure quaternions with v w = -N0(v, w) + v x w."""
    a, b = v.algebra.a, v.algebra.b
    _, x1, x2, x3 = v.coords
    _, y1, y2, y3 = w.coords
    return -a * x1 * y1 - b * x2 * y2 + a * b * x3 * y3


def cross_product(v: QuaternionElement, w: QuaternionElement) -> QuaternionElement:
    if v.algebra != w.algebra:
        raise AlgebraMismatch(f"{v.algebra} vs {w.algebra}")
    if not (v.is_pure() and w.is_pure()):
        raise NotPure("cross product needs trace-zero quaternions")
    a, b = v.algebra.a, v.algebra.b
    _, x1, x2, x3 = v.coords
    _, y1, y2, y3 = w.coords
    return v.algebra(0, -(x2 * y3 - x3 * y2) * b, (x1 * y3 - x3 * y1) * a, x1 * y2 - x2 * y1)


# -- four squares ----------------------------------------------------------------


def find_lm(p: int):
    """(l, m) with p | 1 + l^2 + m^2, both in [0, (p-1)/2]."""
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    for m in range((p - 1) // 2 + 1):
        # least square root, so l <= (p-1)/2 as well
        l = sqrt_mod((-1 - m * m) % p, p)
        if l is not None:
            return l, m
    raise AssertionError("unreachable: the two sets must meet")


def _euler(x, y):
    a, b, c, d = x
    w, u, v, z = y
    return (a * w + b * u + c * v + d * z,
            -a * u + b * w - c * z + d * v,
            -a * v + b * z + c * w - d * u,
            -a * z - b * v + c * u + d * w)


def _centered(x, m):
    r = x % m
    return r - m if 2 * r > m else r


def _prime_four_square(p):
    if p == 2:
        return (1, 1, 0, 0)
    l, m_ = find_lm(p)
    x = (1, l, m_, 0)
    m = sum(t * t for t in x) // p
    while m > 1:
        if m % 2 == 0:
            # pair up entries of equal parity, then halve
            xs = sorted(x, key=lambda t: t % 2)
            a, b, c, d = xs
            x = ((a + b) // 2, (a - b) // 2, (c + d) // 2, (c - d) // 2)
            m //= 2
            continue
        y = tuple(_centered(t, m) for t in x)
        r = sum(t * t for t in y) // m
        x = tuple(t // m for t in _euler(x, y))
        m = r
    return x


def four_square(n: int):
    """(a, b, c, d) with a >= b >= c >= d >= 0 and a^2 + b^2 + c^2 + d^2 = n."""
    if n < 0:
        raise InvalidParameters("n must be nonnegative")
    if n == 0:
        return (0, 0, 0, 0)
    acc = (1, 0, 0, 0)
    for p, e in sorted(factorint(n).items()):
        rep = _prime_four_square(p)
        for _ in range(e):
            acc = _euler(acc, rep)
    out = tuple(sorted((abs(t) for t in acc), reverse=True))
    assert sum(t * t for t in out) == n
    return out


# -- real unit quaternions ---------------------------------------------------------

_TOL = 1e-9


def _hamilton(x, y):
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return np.array([
        x0 * y0 - x1 * y1 - x2 * y2 - x3 * y3,
        x0 * y1 + x1 * y0 + x2 * y3 - x3 * y2,
        x0 * y2 - x1 * y3 + x2 * y0 + x3 * y1,
        x0 * y3 + x1 * y2 - x2 * y1 + x3 * y0,
    ])


def _unit(a):
    if isinstance(a, QuaternionElement):
        a = [float(c.v) for c in a.coords]
    a = np.asarray(a, dtype=float)
    if a.shape != (4,) or abs(float(a @ a) - 1.0) > _TOL:
        raise NotUnit("quaternion must have norm 1 within 1e-9")
    return a


def hamilton_product(x, y):
    return _hamilton(np.asarray(x, dtype=float), np.asarray(y, dtype=float))


def unit_quat_rotation(a) -> np.ndarray:
    """Matrix of v -> a v a^-1 on the pure quaternions, basis (i, j, k)."""
    a = _unit(a)
    abar = a * np.array([1, -1, -1, -1])
    cols = []
    for k in range(1, 4):
        e = np.zeros(4)
        e[k] = 1.0
        cols.append(_hamilton(_hamilton(a, e), abar)[1:])
    return np.column_stack(cols)


def unit_quat_to_su2(a) -> np.ndarray:
    """a0 + a1 i + a2 j + a3 k -> [[w, -z], [conj z, conj w]] with w = a0 + a1 i, z = a2 + a3 i."""
    a = _unit(a)
    w = complex(a[0], a[1])
    z = complex(a[2], a[3])
    return np.array([[w, -z], [z.conjugate(), w.conjugate()]], dtype=complex)
