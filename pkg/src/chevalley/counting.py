"""Closed-form counts over F_q and the brute-force oracles that check them.

The closed forms take q as an opaque integer (any prime power works). The
enumerations need q prime and work on flat integer tuples mod p, row-major,
which is much faster than going through :class:`Matrix`. Every enumeration
is capped at 10^7 elements; set ``CHEVALLEY_MAX_ENUM`` to change the cap.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import permutations, product

from sympy import isprime

from .errors import InvalidSpec, NotPrime, TooLarge
from .exactfield import PrimeField
from .matcore import Matrix

DEFAULT_MAX_ENUM = 10 ** 7


def enum_cap() -> int:
    raw = os.environ.get("CHEVALLEY_MAX_ENUM")
    return int(raw) if raw else DEFAULT_MAX_ENUM


def _check_cap(size, what):
    cap = enum_cap()
    if size > cap:
        raise TooLarge(f"{what} has {size} elements, above the cap {cap}")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    q: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam not in ("GL", "SL", "PGL", "PSL"):
            raise InvalidSpec(f"unknown family {self.family!r}")
        if self.n < 1 or self.q < 2:
            raise InvalidSpec("need n >= 1 and q >= 2")


# -- closed forms -----------------------------------------------------------


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def center_order(spec: GroupSpec) -> int:
    """|Z(GL_n)| = q - 1 and |Z(SL_n)| = #{lambda : lambda^n = 1} = gcd(n, q - 1)."""
    if spec.family in ("GL", "PGL"):
        return spec.q - 1
    return math.gcd(spec.n, spec.q - 1)


def order_formula(spec: GroupSpec) -> int:
    g = gl_order(spec.n, spec.q)
    if spec.family == "GL":
        return g
    sl = g // (spec.q - 1)
    if spec.family == "SL":
        return sl
    if spec.family == "PGL":
        return g // (spec.q - 1)
    return sl // math.gcd(spec.n, spec.q - 1)


def borel_order(n, q):
    return (q - 1) ** n * q ** (n * (n - 1) // 2)


def grassmann_count(n, r, q) -> int:
    """Number of r-dimensional subspaces of F_q^n (the Gaussian binomial)."""
    if not 0 <= r <= n or q < 2:
        raise InvalidSpec(f"need 0 <= r <= n and q >= 2, got n={n} r={r} q={q}")
    num = den = 1
    for i in range(r):
        num *= q ** n - q ** i
        den *= q ** r - q ** i
    return num // den


def gaussian_binomial_coeffs(n, r):
    """Coefficients (ascending in q) of the Gaussian binomial polynomial,
    from the recurrence [n, r] = [n-1, r-1] + q^r [n-1, r]."""
    if not 0 <= r <= n:
        raise InvalidSpec(f"need 0 <= r <= n, got n={n} r={r}")
    if r == 0 or r == n:
        return [1]
    a = gaussian_binomial_coeffs(n - 1, r - 1)
    b = [0] * r + gaussian_binomial_coeffs(n - 1, r)
    size = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(size)]


def sylow_p_count(n, p) -> int:
    """Number of Sylow p-subgroups of GL_n(F_p): prod_{k=1}^{n-1} (1 + p + ... + p^k)."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    out = 1
    for k in range(1, n):
        out *= sum(p ** i for i in range(k + 1))
    return out


# -- flat matrices mod p ----------------------------------------------------


def fmul(a, b, n, p):
    return tuple(sum(a[i * n + k] * b[k * n + j] for k in range(n)) % p
                 for i in range(n) for j in range(n))


def fdet(a, n, p):
    m = [list(a[i * n:(i + 1) * n]) for i in range(n)]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for r in range(c + 1, n):
            f = m[r][c] * inv % p
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return det % p


def finv(a, n, p):
    m = [list(a[i * n:(i + 1) * n]) + [int(i == j) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] % p)
        m[c], m[piv] = m[piv], m[c]
        inv = pow(m[c][c], -1, p)
        m[c] = [x * inv % p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return tuple(x for r in m for x in r[n:])


def fidentity(n):
    return tuple(int(i == j) for i in range(n) for j in range(n))


def to_matrix(flat, n, p) -> Matrix:
    F = PrimeField(p)
    return Matrix(F, [flat[i * n:(i + 1) * n] for i in range(n)])


def from_matrix(M: Matrix):
    return tuple(x.v for r in M.rows for x in r)


def _prime_q(q):
    if not isprime(q):
        raise InvalidSpec(f"enumeration needs a prime q, got {q}")


def enumerate_matrices(n, p):
    _prime_q(p)
    _check_cap(p ** (n * n), f"M_{n}(F_{p})")
    return product(range(p), repeat=n * n)


def enumerate_group(spec: GroupSpec):
    """All elements of GL_n(F_p) or SL_n(F_p) as flat tuples, in lexicographic order."""
    if spec.family not in ("GL", "SL"):
        raise InvalidSpec("enumeration covers GL and SL")
    _prime_q(spec.q)
    _check_cap(order_formula(spec), f"{spec.family}_{spec.n}(F_{spec.q})")
    n, p = spec.n, spec.q
    want_sl = spec.family == "SL"
    out = []
    for a in enumerate_matrices(n, p):
        d = fdet(a, n, p)
        if d and (not want_sl or d == 1):
            out.append(a)
    return out


def group_elements(spec: GroupSpec):
    """The same enumeration as :class:`Matrix` objects."""
    return [to_matrix(a, spec.n, spec.q) for a in enumerate_group(spec)]


def brute_force_order(spec: GroupSpec) -> int:
    """Count by enumeration; for PGL/PSL count classes modulo the scalar
    matrices that lie in the group, found by search as well."""
    elems = enumerate_group_uncapped(spec)
    if spec.family in ("GL", "SL"):
        return len(elems)
    n, p = spec.n, spec.q
    members = set(elems)
    scalars = [c for c in range(1, p) if _scalar(c, n) in members]
    classes = {min(tuple(c * x % p for x in a) for c in scalars) for a in elems}
    return len(classes)


def _scalar(c, n):
    return tuple(c if i == j else 0 for i in range(n) for j in range(n))


def enumerate_group_uncapped(spec):
    # scan every matrix rather than trusting the order formula for the cap
    n, p = spec.n, spec.q
    _prime_q(p)
    _check_cap(p ** (n * n), f"M_{n}(F_{p})")
    return [a for a in product(range(p), repeat=n * n)
            if fdet(a, n, p) and (spec.family in ("GL", "PGL") or fdet(a, n, p) == 1)]


# -- subspaces --------------------------------------------------------------


def subspaces(n, r, p):
    """All r-dimensional subspaces of F_p^n, each as a frozenset of vectors,
    grown one vector at a time from the zero subspace."""
    _prime_q(p)
    _check_cap(p ** n, f"F_{p}^{n}")
    vectors = list(product(range(p), repeat=n))
    zero = tuple([0] * n)
    level = {frozenset([zero])}
    for _ in range(r):
        nxt = set()
        for U in level:
            for v in vectors:
                if v in U:
                    continue
                span = frozenset(tuple((u[k] + c * v[k]) % p for k in range(n))
                                 for u in U for c in range(p))
                nxt.add(span)
        level = nxt
    return level


# -- Sylow subgroups --------------------------------------------------------


def unitriangular(n, p):
    free = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for vals in product(range(p), repeat=len(free)):
        m = list(fidentity(n))
        for (i, j), v in zip(free, vals):
            m[i * n + j] = v
        out.append(tuple(m))
    return out


def brute_force_sylow_count(n, p) -> int:
    """Count the distinct conjugates g U g^-1 of the unitriangular group U,
    a Sylow p-subgroup of GL_n(F_p)."""
    G = enumerate_group(GroupSpec("GL", n, p))
    U = unitriangular(n, p)
    seen = set()
    for g in G:
        gi = finv(g, n, p)
        seen.add(frozenset(fmul(fmul(g, u, n, p), gi, n, p) for u in U))
    return len(seen)


def element_order(a, n, p):
    e, k = fidentity(n), 1
    x = a
    while x != e:
        x = fmul(x, a, n, p)
        k += 1
    return k


def sylow_count_by_elements(p) -> int:
    """For GL_2(F_p) a Sylow p-subgroup is cyclic of order p: count elements
    of order p and divide by p - 1."""
    G = enumerate_group(GroupSpec("GL", 2, p))
    return sum(1 for g in G if element_order(g, 2, p) == p) // (p - 1)


# -- conjugacy classes ------------------------------------------------------


@dataclass
class ConjClassTable:
    classes: list  # (representative Matrix, size)
    order: int

    def to_json(self):
        return {"classes": [{"rep": rep.to_json(), "size": size} for rep, size in self.classes],
                "order": self.order}


def conj_classes(spec: GroupSpec, mode: str = "enumeration") -> ConjClassTable:
    """Orbit partition of the group under conjugation. Each class is
    represented by its lexicographically smallest element."""
    if mode != "enumeration":
        raise InvalidSpec("only enumeration mode is available")
    G = enumerate_group(spec)
    n, p = spec.n, spec.q
    inv = {g: finv(g, n, p) for g in G}
    assigned = set()
    classes = []
    for x in G:
        if x in assigned:
            continue
        orbit = {fmul(fmul(g, x, n, p), inv[g], n, p) for g in G}
        assigned |= orbit
        classes.append((min(orbit), len(orbit)))
    classes.sort()
    return ConjClassTable([(to_matrix(r, n, p), s) for r, s in classes], len(G))


def unipotent_classes(table: ConjClassTable):
    """Classes of non-identity unipotent elements, i.e. (M - I)^n = 0, M != I."""
    out = []
    for rep, size in table.classes:
        n = rep.nrows
        eye = Matrix.identity(rep.field, n)
        if rep != eye and ((rep - eye) ** n).is_zero():
            out.append((rep, size))
    return out


# -- tori -------------------------------------------------------------------


def _block_idempotents(partition):
    n = sum(partition)
    out, off = [], 0
    for k in partition:
        out.append(tuple(int(i == j and off <= i < off + k) for i in range(n) for j in range(n)))
        off += k
    return out


def _is_block_scalar(a, partition, p):
    n = sum(partition)
    blocks = []
    off = 0
    for k in partition:
        blocks.extend([(off, off + k)] * k)
        off += k
    for i in range(n):
        for j in range(n):
            x = a[i * n + j] % p
            if blocks[i] != blocks[j] or i != j:
                if x:
                    return False
            elif x != a[blocks[i][0] * n + blocks[i][0]] % p:
                return False
    return True


def torus_points(partition, p):
    """T(F_p): block-scalar matrices with nonzero scalars."""
    n = sum(partition)
    out = []
    for lams in product(range(1, p), repeat=len(partition)):
        diag = [lam for lam, k in zip(lams, partition) for _ in range(k)]
        out.append(tuple(diag[i] if i == j else 0 for i in range(n) for j in range(n)))
    return out


def torus_centralizer_normalizer(partition, q, mode: str = "algebraic"):
    """(|Z(T)|, |N(T)|, |N(T)/Z(T)|) inside GL_n(F_q), by brute force.

    T is the torus of block-scalar matrices for the given partition. In the
    default ``algebraic`` mode it is treated as an algebraic group: g
    centralizes T when it commutes with every block idempotent, and
    normalizes T when conjugation keeps the block-scalar algebra. This is
    what the product formula prod |GL_{n_i}(F_q)| counts for every q. Mode
    ``points`` uses the finite group T(F_q) instead; over F_2 that group is
    trivial and its centralizer is the whole of GL_n(F_2).
    """
    partition = tuple(partition)
    n = sum(partition)
    G = enumerate_group(GroupSpec("GL", n, q))
    if mode == "algebraic":
        gens = _block_idempotents(partition)
    elif mode == "points":
        gens = torus_points(partition, q)
    else:
        raise InvalidSpec(f"unknown mode {mode!r}")
    cent = norm = 0
    for g in G:
        gi = finv(g, n, q)
        if all(fmul(g, t, n, q) == fmul(t, g, n, q) for t in gens):
            cent += 1
            norm += 1
            continue
        if all(_is_block_scalar(fmul(fmul(g, t, n, q), gi, n, q), partition, q) for t in gens):
            if mode == "points":
                conj = {fmul(fmul(g, t, n, q), gi, n, q) for t in gens}
                if not conj <= set(gens):
                    continue
            norm += 1
    return cent, norm, norm // cent


# -- actions ----------------------------------------------------------------


def fapply(a, v, n, p):
    return tuple(sum(a[i * n + k] * v[k] for k in range(n)) % p for i in range(n))


def gl_orbits_on_vectors(n, p):
    """Orbits of GL_n(F_p) on F_p^n, as a list of frozensets."""
    G = enumerate_group(GroupSpec("GL", n, p))
    remaining = set(product(range(p), repeat=n))
    orbits = []
    while remaining:
        v = min(remaining)
        orb = frozenset(fapply(g, v, n, p) for g in G)
        orbits.append(orb)
        remaining -= orb
    return orbits


def projective_line(p):
    """Normalised representatives of P(F_p^2): (1, x) and (0, 1)."""
    return [(1, x) for x in range(p)] + [(0, 1)]


def _normalise(v, p):
    lead = next(x for x in v if x % p)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def pgl2_is_3_transitive(p) -> bool:
    """True when PGL_2(F_p) acts transitively on ordered triples of distinct
    points of the projective line."""
    G = enumerate_group(GroupSpec("GL", 2, p))
    pts = projective_line(p)
    triples = set(permutations(pts, 3))
    start = (pts[0], pts[1], pts[-1])
    orbit = {tuple(_normalise(fapply(g, x, 2, p), p) for x in start) for g in G}
    return orbit == triples
