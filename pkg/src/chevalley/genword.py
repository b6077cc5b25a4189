"""Generator words for GL_n and SL_n.

Tokens use 1-based indices, as in the usual notation:

* ``Elem(i, j, t)`` is x_ij(t) = I + t e_ij,
* ``Monomial(i, j, t)`` is n_ij(t) = x_ij(t) x_ji(-1/t) x_ij(t),
* ``Torus(i, j, t)`` is h_ij(t) = n_ij(t) n_ij(-1) = diag(.., t, .., 1/t, ..),
* ``Perm(sigma)`` is the permutation matrix sending e_k to e_sigma(k).

A word evaluates to the left-to-right product of its tokens; the empty word
is the identity. The text form is ``x(1,2;3) n(1,2;1) h(1,2;2) p(2 1 3)``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import product

from .errors import (
    BadIndex,
    DeterminantNotOne,
    DomainMismatch,
    NonMember,
    NonSquare,
    ParseError,
    Singular,
    ZeroInput,
)
from .exactfield import QuadraticEtale, Scalar
from .matcore import Matrix


def _check_pair(i, j, n=None):
    if i == j:
        raise BadIndex(f"indices must differ, got ({i},{j})")
    if min(i, j) < 1 or (n is not None and max(i, j) > n):
        raise BadIndex(f"index out of range: ({i},{j}) for n={n}")


@dataclass(frozen=True)
class Elem:
    i: int
    j: int
    t: Scalar

    def __post_init__(self):
        _check_pair(self.i, self.j)

    def matrix(self, n, F):
        _check_pair(self.i, self.j, n)
        rows = [list(r) for r in Matrix.identity(F, n).rows]
        rows[self.i - 1][self.j - 1] = F(self.t)
        return Matrix(F, rows)

    def inverse(self):
        return Elem(self.i, self.j, -self.t)

    def __str__(self):
        return f"x({self.i},{self.j};{self.t})"


@dataclass(frozen=True)
class Monomial:
    i: int
    j: int
    t: Scalar

    def __post_init__(self):
        _check_pair(self.i, self.j)
        if self.t == 0:
            raise ZeroInput("n_ij(t) needs t != 0")

    def matrix(self, n, F):
        _check_pair(self.i, self.j, n)
        t = F(self.t)
        rows = [list(r) for r in Matrix.identity(F, n).rows]
        i, j = self.i - 1, self.j - 1
        rows[i][i], rows[i][j] = F.zero, t
        rows[j][i], rows[j][j] = -t.inv(), F.zero
        return Matrix(F, rows)

    def as_elems(self):
        t = self.t
        return [Elem(self.i, self.j, t), Elem(self.j, self.i, -t.inv()), Elem(self.i, self.j, t)]

    def __str__(self):
        return f"n({self.i},{self.j};{self.t})"


@dataclass(frozen=True)
class Torus:
    i: int
    j: int
    t: Scalar

    def __post_init__(self):
        _check_pair(self.i, self.j)
        if self.t == 0:
            raise ZeroInput("h_ij(t) needs t != 0")

    def matrix(self, n, F):
        _check_pair(self.i, self.j, n)
        t = F(self.t)
        rows = [list(r) for r in Matrix.identity(F, n).rows]
        rows[self.i - 1][self.i - 1] = t
        rows[self.j - 1][self.j - 1] = t.inv()
        return Matrix(F, rows)

    def as_monomials(self):
        minus_one = -self.t.field.one
        return [Monomial(self.i, self.j, self.t), Monomial(self.i, self.j, minus_one)]

    def __str__(self):
        return f"h({self.i},{self.j};{self.t})"


@dataclass(frozen=True)
class Perm:
    sigma: tuple

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if sorted(self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise BadIndex(f"not a permutation: {self.sigma}")

    def matrix(self, n, F):
        if len(self.sigma) != n:
            raise BadIndex(f"permutation of size {len(self.sigma)} used with n={n}")
        return permutation_matrix(F, self.sigma)

    def __str__(self):
        return "p(" + " ".join(str(s) for s in self.sigma) + ")"


def permutation_matrix(F, sigma) -> Matrix:
    """P with P e_k = e_sigma(k); sigma given 1-based."""
    n = len(sigma)
    return Matrix(F, [[1 if sigma[c] == r + 1 else 0 for c in range(n)] for r in range(n)])


@dataclass
class GeneratorWord:
    n: int
    field: object
    tokens: list = dc_field(default_factory=list)

    def eval(self) -> Matrix:
        out = Matrix.identity(self.field, self.n)
        for tok in self.tokens:
            out = out * tok.matrix(self.n, self.field)
        return out

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return " ".join(str(t) for t in self.tokens)

    @classmethod
    def parse(cls, text, n, F):
        tokens = []
        for m in re.finditer(r"([xnhp])\(([^)]*)\)", text):
            kind, body = m.groups()
            if kind == "p":
                tokens.append(Perm(tuple(int(s) for s in body.split())))
                continue
            idx, _, par = body.partition(";")
            try:
                i, j = (int(s) for s in idx.split(","))
            except ValueError:
                raise ParseError(f"bad token {m.group(0)!r}") from None
            tokens.append({"x": Elem, "n": Monomial, "h": Torus}[kind](i, j, F(par)))
        rest = re.sub(r"([xnhp])\(([^)]*)\)", "", text).strip()
        if rest:
            raise ParseError(f"unparsed text in word: {rest!r}")
        return cls(n, F, tokens)


def eval_word(w: GeneratorWord) -> Matrix:
    return w.eval()


def _require_square_field(M):
    if not M.is_square:
        raise NonSquare("square matrix required")
    if not M.field.is_field:
        raise DomainMismatch(f"{M.field} is not a field")


# -- elimination ------------------------------------------------------------


def elem_decompose(M: Matrix) -> GeneratorWord:
    """Write M in SL_n as a product of elementary matrices x_ij(t).

    For a 2x2 matrix with c != 0 the word is the three-factor form
    x_12((a-1)/c) x_21(c) x_12((d-1)/c). Otherwise M is reduced to I by row
    operations column by column, and the inverted operations are returned.
    """
    _require_square_field(M)
    F, n = M.field, M.nrows
    if M.det() != F.one:
        raise DeterminantNotOne("elem_decompose needs det 1")
    if n == 2 and not M[1, 0].is_zero():
        (a, _), (c, d) = M.rows
        return GeneratorWord(2, F, [Elem(1, 2, (a - 1) / c), Elem(2, 1, c), Elem(1, 2, (d - 1) / c)])

    W = [list(r) for r in M.rows]
    ops = []

    def left(i, j, t):
        # row i += t * row j (0-based)
        ops.append(Elem(i + 1, j + 1, t))
        W[i] = [a + t * b for a, b in zip(W[i], W[j])]

    for k in range(n - 1):
        if W[k][k].is_zero():
            r = next(i for i in range(k + 1, n) if not W[i][k].is_zero())
            left(k, r, F.one)
        p = W[k][k]
        if p != F.one:
            r = k + 1
            t = (1 - p - W[r][k]) / p
            if not t.is_zero():
                left(r, k, t)
            left(k, r, F.one)
        for i in range(n):
            if i != k and not W[i][k].is_zero():
                left(i, k, -W[i][k])
    for i in range(n - 1):
        if not W[i][n - 1].is_zero():
            left(i, n - 1, -W[i][n - 1])
    return GeneratorWord(n, F, [op.inverse() for op in ops])


@dataclass
class GaussReduction:
    left: GeneratorWord
    right: GeneratorWord
    diag: Matrix

    def check(self, M):
        return self.left.eval() * M * self.right.eval() == self.diag


def gauss_reduce(M: Matrix) -> GaussReduction:
    """Find words L, R in Elem/Monomial/Torus tokens with L M R diagonal.

    The result is diag(1, ..., 1, det M) for invertible M and
    diag(1, ..., 1, 0, ..., 0) with rank-many ones otherwise. Row swaps use
    n_ij(1), which moves a row with a sign; the sign is absorbed by the torus
    normalisation or, in the last slot, by the determinant.
    """
    _require_square_field(M)
    F, n = M.field, M.nrows
    W = M
    left, right = [], []

    def on_left(tok):
        nonlocal W
        left.append(tok)
        W = tok.matrix(n, F) * W

    def on_right(tok):
        nonlocal W
        right.append(tok)
        W = W * tok.matrix(n, F)

    for k in range(n):
        piv = next(((i, j) for j in range(k, n) for i in range(k, n) if not W[i, j].is_zero()), None)
        if piv is None:
            break
        i, j = piv
        if i != k:
            on_left(Monomial(k + 1, i + 1, F.one))
        if j != k:
            on_right(Monomial(k + 1, j + 1, F.one))
        p = W[k, k]
        if k < n - 1 and p != F.one:
            on_left(Torus(k + 1, k + 2, p.inv()))
            p = W[k, k]
        pinv = p.inv()
        for i in range(n):
            if i != k and not W[i, k].is_zero():
                on_left(Elem(i + 1, k + 1, -W[i, k] * pinv))
        for j in range(n):
            if j != k and not W[k, j].is_zero():
                on_right(Elem(k + 1, j + 1, -W[k, j] * pinv))
    return GaussReduction(GeneratorWord(n, F, left[::-1]), GeneratorWord(n, F, right), W)


# -- Bruhat -----------------------------------------------------------------


@dataclass
class BruhatDecomposition:
    b1: Matrix
    w: tuple
    b2: Matrix

    @property
    def perm_matrix(self):
        return permutation_matrix(self.b1.field, self.w)

    def product(self):
        return self.b1 * self.perm_matrix * self.b2


def bruhat(M: Matrix) -> BruhatDecomposition:
    """M = b1 P_w b2 with b1, b2 upper triangular (torus part kept in b1).

    Rows are scanned bottom-up. In each row the pivot is the leftmost nonzero
    entry among unused columns; entries to its right are cleared by adding the
    pivot column to later columns, and entries above it by adding the pivot
    row to earlier rows. Both moves are upper-triangular Elem tokens, so what
    remains is a monomial matrix D P_w.
    """
    _require_square_field(M)
    F, n = M.field, M.nrows
    if M.det().is_zero():
        raise Singular("bruhat needs an invertible matrix")
    W = [list(r) for r in M.rows]
    Linv = [list(r) for r in Matrix.identity(F, n).rows]
    Rinv = [list(r) for r in Matrix.identity(F, n).rows]
    used = set()
    sigma = [0] * n
    for i in range(n - 1, -1, -1):
        c = next(j for j in range(n) if j not in used and not W[i][j].is_zero())
        used.add(c)
        sigma[c] = i + 1
        pinv = W[i][c].inv()
        for j in range(c + 1, n):
            if not W[i][j].is_zero():
                t = -W[i][j] * pinv
                # W <- W x_cj(t): col j += t col c ; Rinv <- x_cj(-t) Rinv
                for r in range(n):
                    W[r][j] = W[r][j] + t * W[r][c]
                Rinv[c] = [a - t * b for a, b in zip(Rinv[c], Rinv[j])]
        for r in range(i):
            if not W[r][c].is_zero():
                t = -W[r][c] * pinv
                # W <- x_ri(t) W: row r += t row i ; Linv <- Linv x_ri(-t)
                W[r] = [a + t * b for a, b in zip(W[r], W[i])]
                for q in range(n):
                    Linv[q][i] = Linv[q][i] - t * Linv[q][r]
    # W is now monomial: W = D P_w with D = diag(W[i][c_i]) by rows
    D = Matrix.diag(F, [next(x for x in W[i] if not x.is_zero()) for i in range(n)])
    b1 = Matrix(F, Linv) * D
    return BruhatDecomposition(b1, tuple(sigma), Matrix(F, Rinv))


# -- flags and parabolics ---------------------------------------------------


@dataclass
class Flag:
    partition: tuple
    basis: Matrix | None = None

    def __post_init__(self):
        self.partition = tuple(self.partition)
        if not self.partition or any(k < 1 for k in self.partition):
            raise ParseError(f"bad partition {self.partition}")
        if self.basis is not None:
            if self.basis.nrows != self.n or self.basis.det().is_zero():
                raise Singular("flag basis must be an invertible n x n matrix")

    @property
    def n(self):
        return sum(self.partition)

    @property
    def offsets(self):
        out, s = [0], 0
        for k in self.partition:
            s += k
            out.append(s)
        return out

    def subspaces(self, F=None):
        """V_1 c ... c V_r as matrices whose columns span each V_i."""
        B = self.basis if self.basis is not None else Matrix.identity(F, self.n)
        return [B.block(0, self.n, 0, d) for d in self.offsets[1:]]

    @classmethod
    def from_subspaces(cls, spaces):
        """Build a flag from spanning sets of V_1 c V_2 c ... c V_r = V."""
        F = spaces[0].field
        n = spaces[0].nrows
        dims, chosen = [], []
        for V in spaces:
            for j in range(V.ncols):
                trial = chosen + [V.col(j)]
                if Matrix(F, list(zip(*trial))).rank() == len(trial):
                    chosen = trial
            # the earlier basis vectors must already lie in V
            if len(chosen) != V.rank():
                raise NonMember("subspaces are not nested")
            dims.append(len(chosen))
        if dims[-1] != n:
            raise NonMember("the last subspace must be the whole space")
        parts = [b - a for a, b in zip([0] + dims, dims)]
        if any(p <= 0 for p in parts):
            raise NonMember("flag must be strictly increasing")
        return cls(tuple(parts), Matrix(F, list(zip(*chosen))))


def _in_flag_coords(M, f):
    if f.basis is None:
        return M
    return f.basis.inverse() * M * f.basis


def parabolic_membership(M: Matrix, f: Flag) -> bool:
    """True iff M preserves every V_i, i.e. M is block upper triangular in the
    flag's basis."""
    if M.nrows != f.n or not M.is_square:
        raise NonSquare("size does not match the flag")
    if M.det().is_zero():
        raise Singular("parabolic membership is tested on invertible matrices")
    A = _in_flag_coords(M, f)
    off = f.offsets
    for bi in range(len(f.partition)):
        for bj in range(bi):
            for i in range(off[bi], off[bi + 1]):
                for j in range(off[bj], off[bj + 1]):
                    if not A[i, j].is_zero():
                        return False
    return True


def levi_split(M: Matrix, f: Flag):
    """M = levi * unip with levi block diagonal and unip block unitriangular."""
    if not parabolic_membership(M, f):
        raise NonMember("matrix is not in the parabolic subgroup")
    A = _in_flag_coords(M, f)
    F = M.field
    off = f.offsets
    blocks = [A.block(off[k], off[k + 1], off[k], off[k + 1]) for k in range(len(f.partition))]
    from .matcore import block_diag

    levi = block_diag(*blocks)
    unip = levi.inverse() * A
    if f.basis is not None:
        B, Binv = f.basis, f.basis.inverse()
        levi, unip = B * levi * Binv, B * unip * Binv
    return levi, unip


def flag_orbit_type(f: Flag) -> tuple:
    """The partition (dim V_1, dim V_2/V_1, ...) labelling the GL-orbit."""
    if f.basis is None:
        return f.partition
    return Flag.from_subspaces(f.subspaces()).partition


def compositions(n: int):
    """Ordered compositions of n; there are 2^(n-1) of them."""
    out = []
    for cuts in product([0, 1], repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return sorted(out, key=lambda p: (len(p), p))


# -- SL2 automorphisms ------------------------------------------------------


@dataclass(frozen=True)
class Inner:
    g: Matrix


@dataclass(frozen=True)
class Graph:
    pass


@dataclass(frozen=True)
class FieldAut:
    """An automorphism of the coefficient field: ``"identity"``, ``"conj"``
    (the nontrivial automorphism of an etale algebra) or a callable."""

    sigma: object = "identity"

    def apply(self, x):
        if self.sigma == "identity":
            return x
        if self.sigma == "conj":
            if not isinstance(x.field, QuadraticEtale):
                raise DomainMismatch("conj needs an etale coefficient field")
            return x.conj()
        return self.sigma(x)


def sl2_automorphism(kind, M: Matrix) -> Matrix:
    if (M.nrows, M.ncols) != (2, 2):
        raise NonSquare("sl2_automorphism acts on 2x2 matrices")
    if M.det() != M.field.one:
        raise DeterminantNotOne("argument must lie in SL_2")
    if isinstance(kind, Inner):
        return kind.g * M * kind.g.inverse()
    if isinstance(kind, Graph):
        return M.inverse().T
    if isinstance(kind, FieldAut):
        return M.map(kind.apply)
    raise ParseError(f"unknown automorphism {kind!r}")


# -- small group utilities --------------------------------------------------


def commutator(g: Matrix, h: Matrix) -> Matrix:
    return g * h * g.inverse() * h.inverse()


def find_commutator(target: Matrix, elements):
    """First pair (g, h) from ``elements`` with g h g^-1 h^-1 = target."""
    els = list(elements)
    inv = {g: g.inverse() for g in els}
    for g in els:
        for h in els:
            if g * h * inv[g] * inv[h] == target:
                return g, h
    return None


def generated_subgroup(gens):
    """All elements of the (finite) group generated by ``gens``."""
    gens = list(gens)
    start = Matrix.identity(gens[0].field, gens[0].nrows)
    seen = {start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return seen
