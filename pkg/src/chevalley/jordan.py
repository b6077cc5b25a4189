"""Jordan-Chevalley decomposition T = S + N (and T = S U for invertible T).

The semisimple part is S = p(T) where p solves the congruences
p = alpha mod (X - alpha)^n_alpha for each eigenvalue alpha, together with
p = 0 mod X when 0 is not an eigenvalue, so that p has no constant term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import divisors

from .errors import DomainMismatch, NonSplitCharPoly, NonSquare
from .exactfield import Rationals
from .matcore import Matrix, is_nilpotent, min_poly, poly_eval
from .polynomial import Polynomial


@dataclass
class Classification:
    semisimple: bool
    nilpotent: bool
    unipotent: bool


def _check(M):
    if not M.is_square:
        raise NonSquare("square matrix required")
    if not M.field.is_field:
        raise DomainMismatch(f"{M.field} is not a field")


def is_semisimple(M: Matrix) -> bool:
    m = min_poly(M)
    return m.gcd(m.derivative()).degree == 0


def classify(M: Matrix) -> Classification:
    _check(M)
    eye = Matrix.identity(M.field, M.nrows)
    return Classification(is_semisimple(M), is_nilpotent(M), is_nilpotent(M - eye))


@dataclass
class JordanDecomposition:
    S: Matrix
    N: Matrix
    p_poly: Polynomial
    q_poly: Polynomial
    U: Matrix | None = None
    s_inverse_poly: Polynomial | None = None


def eigenvalues(m: Polynomial):
    """Roots of m with multiplicity, or NonSplitCharPoly if m does not split
    into linear factors over its coefficient field."""
    F = m.field
    if F.is_finite:
        roots = m.roots()
    elif isinstance(F, Rationals):
        roots = _rational_roots(m)
    else:
        raise DomainMismatch(f"no root finder over {F}")
    if len(roots) != m.degree:
        raise NonSplitCharPoly(f"{m} does not split over {F}")
    return roots


def _rational_roots(m: Polynomial):
    F = m.field
    # clear denominators to get integer coefficients
    den = 1
    for c in m.coeffs:
        den = den * c.v.denominator // math.gcd(den, c.v.denominator)
    ints = [int(c.v * den) for c in m.coeffs]
    out = []
    f = m
    zeros = next(k for k, c in enumerate(ints) if c != 0)
    out.extend([F.zero] * zeros)
    f = f // Polynomial(F, [0] * zeros + [1])
    a0, an = abs(ints[zeros]), abs(ints[-1])
    cands = {Fraction(s * u, v) for u in divisors(a0) for v in divisors(an) for s in (1, -1)}
    for r in sorted(cands):
        lin = Polynomial(F, [-r, 1])
        while f.degree > 0:
            q, rem = divmod(f, lin)
            if not rem.is_zero():
                break
            out.append(F(r))
            f = q
    return out


def crt(residues, moduli):
    """Solve p = r_k mod m_k for pairwise coprime polynomial moduli."""
    F = moduli[0].field
    total = Polynomial(F, [1])
    for m in moduli:
        total = total * m
    p = Polynomial(F)
    for r, m in zip(residues, moduli):
        rest = total // m
        g, s, _ = rest.xgcd(m)
        assert g.degree == 0, "moduli must be coprime"
        # s * rest = 1 mod m
        p = p + r * s * rest
    return p % total


def jordan_decompose(M: Matrix) -> JordanDecomposition:
    _check(M)
    F = M.field
    n = M.nrows
    m = min_poly(M)
    roots = eigenvalues(m)
    mult = {}
    for r in roots:
        mult[r] = mult.get(r, 0) + 1
    X = Polynomial.x(F)
    residues, moduli = [], []
    for alpha, k in mult.items():
        moduli.append((X - alpha) ** k)
        residues.append(Polynomial(F, [alpha]))
    if F.zero not in mult:
        moduli.append(X)
        residues.append(Polynomial(F))
    p = crt(residues, moduli)
    q = X - p
    S = poly_eval(p, M)
    N = M - S
    out = JordanDecomposition(S, N, p, q)
    if F.zero not in mult:
        # T invertible: p is prime to m, so S^-1 = r(T) with r p = 1 mod m
        _, r, _ = p.xgcd(m)
        r = r % m
        out.s_inverse_poly = r
        Sinv = poly_eval(r, M)
        out.U = Matrix.identity(F, n) + Sinv * N
    return out


def check_invariants(M: Matrix, d: JordanDecomposition) -> list:
    """Names of the decomposition invariants that fail (empty when all hold)."""
    bad = []
    F, n = M.field, M.nrows
    if d.S + d.N != M:
        bad.append("S+N")
    if d.S * d.N != d.N * d.S:
        bad.append("SN=NS")
    if not is_nilpotent(d.N):
        bad.append("N nilpotent")
    if not is_semisimple(d.S):
        bad.append("S semisimple")
    if poly_eval(d.p_poly, M) != d.S:
        bad.append("S=p(T)")
    if poly_eval(d.q_poly, M) != d.N:
        bad.append("N=q(T)")
    if not d.p_poly[0].is_zero() or not d.q_poly[0].is_zero():
        bad.append("zero constant terms")
    invertible = not M.det().is_zero()
    if invertible != (d.U is not None):
        bad.append("U present iff invertible")
    if d.U is not None:
        eye = Matrix.identity(F, n)
        if d.S * d.U != M or d.U * d.S != M:
            bad.append("T=SU=US")
        if not is_nilpotent(d.U - eye):
            bad.append("U unipotent")
        if poly_eval(d.s_inverse_poly, M) * d.S != eye:
            bad.append("S^-1 polynomial in T")
    return bad


def brute_force_decompositions(M: Matrix):
    """Every pair (S', N') with S' semisimple, N' nilpotent, S'N' = N'S' and
    S' + N' = M, found by scanning all matrices S' over a finite field."""
    _check(M)
    F, n = M.field, M.nrows
    if not F.is_finite:
        raise DomainMismatch("brute force needs a finite field")
    out = []
    for entries in product(F.elements(), repeat=n * n):
        S = Matrix(F, [entries[i * n:(i + 1) * n] for i in range(n)])
        N = M - S
        if S * N == N * S and is_nilpotent(N) and is_semisimple(S):
            out.append((S, N))
    return out
