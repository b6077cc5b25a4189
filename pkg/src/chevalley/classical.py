"""Symplectic and split orthogonal groups given by a form matrix J.

Rows are labelled 1..l, -1..-l (with 0 first in odd size), so e_{i,-j} is
the matrix unit in row i and row l+j. The forms are::

    Sp_2l   J = [[0, I], [-I, 0]]
    SO_2l   J = [[0, I], [I, 0]]
    SO_2l+1 J = [1] + [[0, I], [I, 0]]

A matrix M is in the group when M^t J M = J and X is in the Lie algebra
when X^t J = -J X.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadIndex, DomainMismatch, InvalidRank, NotSimilitude, SizeMismatch
from .matcore import Matrix

FAMILIES = ("Sp", "SOeven", "SOodd")


@dataclass(frozen=True)
class FormSpec:
    family: str
    l: int
    field: object

    def __post_init__(self):
        fam = {"sp": "Sp", "sp2l": "Sp", "soeven": "SOeven", "soodd": "SOodd"}.get(
            self.family.lower())
        if fam is None:
            raise DomainMismatch(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if self.l < 1:
            raise InvalidRank("l must be at least 1")
        if fam != "Sp" and self.field.characteristic == 2:
            raise DomainMismatch("orthogonal groups need characteristic != 2")

    @property
    def warning(self):
        """Set for Sp in characteristic 2, where the form is also symmetric."""
        if self.family == "Sp" and self.field.characteristic == 2:
            return "characteristic 2: the symplectic form is also symmetric"
        return None

    @property
    def size(self):
        return 2 * self.l + (1 if self.family == "SOodd" else 0)

    def row(self, idx: int) -> int:
        """0-based row of the label idx in {1..l, -1..-l} (or 0 when odd)."""
        l = self.l
        shift = 1 if self.family == "SOodd" else 0
        if idx == 0 and shift:
            return 0
        if 1 <= idx <= l:
            return shift + idx - 1
        if -l <= idx <= -1:
            return shift + l - idx - 1
        raise BadIndex(f"label {idx} out of range for l={l}")

    @property
    def J(self) -> Matrix:
        F, l, n = self.field, self.l, self.size
        J = [[0] * n for _ in range(n)]
        if self.family == "SOodd":
            J[0][0] = 1
        for i in range(1, l + 1):
            a, b = self.row(i), self.row(-i)
            J[a][b] = 1
            J[b][a] = -1 if self.family == "Sp" else 1
        return Matrix(F, J)

    def e(self, i, j) -> Matrix:
        """Matrix unit e_{i,j} with signed labels."""
        return Matrix.unit(self.field, self.size, self.row(i), self.row(j))


def _size_check(M, form):
    if (M.nrows, M.ncols) != (form.size, form.size):
        raise SizeMismatch(f"expected {form.size}x{form.size}, got {M.nrows}x{M.ncols}")
    if M.field != form.field:
        raise DomainMismatch(f"{M.field} vs {form.field}")


def group_member(M: Matrix, form: FormSpec) -> bool:
    _size_check(M, form)
    J = form.J
    return M.T * J * M == J


def lie_member(X: Matrix, form: FormSpec) -> bool:
    _size_check(X, form)
    J = form.J
    return X.T * J == -(J * X)


def lie_basis(form: FormSpec):
    """(label, matrix) pairs spanning the Lie algebra of the form.

    Sp_2l: e_ij - e_-j,-i (i != j), e_i,-j + e_j,-i and e_-i,j + e_-j,i
    (i < j), e_i,-i, e_-i,i, and the diagonals e_ii - e_-i,-i.
    SO_2l replaces the symmetric families by e_i,-j - e_j,-i and
    e_-i,j - e_-j,i (i < j) and drops e_i,-i, e_-i,i. SO_2l+1 adds
    e_i,0 - e_0,-i and e_0,i - e_-i,0.
    """
    l, fam = form.l, form.family
    e = form.e
    out = []
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            if i != j:
                out.append((f"e({i},{j})-e({-j},{-i})", e(i, j) - e(-j, -i)))
    sign = 1 if fam == "Sp" else -1
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            op = "+" if sign == 1 else "-"
            out.append((f"e({i},{-j}){op}e({j},{-i})", e(i, -j) + e(j, -i) * sign))
            out.append((f"e({-i},{j}){op}e({-j},{i})", e(-i, j) + e(-j, i) * sign))
    if fam == "Sp":
        for i in range(1, l + 1):
            out.append((f"e({i},{-i})", e(i, -i)))
            out.append((f"e({-i},{i})", e(-i, i)))
    if fam == "SOodd":
        for i in range(1, l + 1):
            out.append((f"e({i},0)-e(0,{-i})", e(i, 0) - e(0, -i)))
            out.append((f"e(0,{i})-e({-i},0)", e(0, i) - e(-i, 0)))
    for i in range(1, l + 1):
        out.append((f"e({i},{i})-e({-i},{-i})", e(i, i) - e(-i, -i)))
    return out


SP_KINDS = {
    # kind: (labels, index rule)
    "long_ij": "x_{i,j}(t) = I + t(e_ij - e_-j,-i), i != j",
    "short_plus_ij": "x_{i,-j}(t) = I + t(e_i,-j + e_j,-i), i < j",
    "short_minus_ij": "x_{-i,j}(t) = I + t(e_-i,j + e_-j,i), i < j",
    "diag_i_pos": "x_{i,-i}(t) = I + t e_i,-i",
    "diag_i_neg": "x_{-i,i}(t) = I + t e_-i,i",
}


def sp_chevalley(kind: str, i: int, j: int | None, t, form: FormSpec) -> Matrix:
    """Chevalley generator of Sp_2l. ``kind`` is one of :data:`SP_KINDS`."""
    if form.family != "Sp":
        raise DomainMismatch("sp_chevalley needs a symplectic form")
    l = form.l
    F = form.field
    t = F(t)
    e = form.e
    eye = Matrix.identity(F, form.size)

    def ok(*idx):
        if not all(1 <= k <= l for k in idx):
            raise BadIndex(f"indices {idx} out of range 1..{l}")

    if kind == "long_ij":
        ok(i, j)
        if i == j:
            raise BadIndex("long_ij needs i != j")
        X = e(i, j) - e(-j, -i)
    elif kind in ("short_plus_ij", "short_minus_ij"):
        ok(i, j)
        if not i < j:
            raise BadIndex(f"{kind} needs i < j")
        X = e(i, -j) + e(j, -i) if kind == "short_plus_ij" else e(-i, j) + e(-j, i)
    elif kind == "diag_i_pos":
        ok(i)
        X = e(i, -i)
    elif kind == "diag_i_neg":
        ok(i)
        X = e(-i, i)
    else:
        raise BadIndex(f"unknown generator kind {kind!r}")
    return eye + X * t


def all_sp_generator_slots(l):
    """Every (kind, i, j) allowed for rank l."""
    out = []
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            if i != j:
                out.append(("long_ij", i, j))
            if i < j:
                out.append(("short_plus_ij", i, j))
                out.append(("short_minus_ij", i, j))
        out.append(("diag_i_pos", i, None))
        out.append(("diag_i_neg", i, None))
    return out


def similitude_factor(M: Matrix, form: FormSpec):
    """The scalar lambda with M^t J M = lambda J."""
    if form.family != "Sp":
        raise DomainMismatch("similitude factor is defined here for Sp")
    _size_check(M, form)
    J = form.J
    G = M.T * J * M
    lam = G[form.row(1), form.row(-1)]
    if G != J * lam or lam.is_zero():
        raise NotSimilitude("M^t J M is not a nonzero multiple of J")
    return lam


def levi_embedding(A: Matrix, form: FormSpec) -> Matrix:
    """A -> diag(A, A^-t), the GL_l inside Sp_2l or SO_2l."""
    from .matcore import block_diag

    if form.family == "SOodd":
        raise DomainMismatch("use the even forms for the GL_l embedding")
    return block_diag(A, A.inverse().T)
