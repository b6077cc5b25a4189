"""Dense exact matrices and the polynomial invariants built on them."""

from __future__ import annotations

import json
from collections import namedtuple
from itertools import permutations

from .errors import (
    CharacteristicTooSmall,
    DomainMismatch,
    NonSquare,
    NotNilpotent,
    ParseError,
    Singular,
)
from .exactfield import QuadraticEtale, Scalar
from .polynomial import Polynomial


class Matrix:
    """An immutable rows x cols matrix with entries in one domain."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        if len({len(r) for r in self.rows}) > 1:
            raise ParseError("ragged matrix")
        self._hash = None

    @classmethod
    def _raw(cls, field, rows):
        # rows are already tuples of Scalars in ``field``
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls._raw(field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field, n, m=None):
        m = n if m is None else m
        zero = field.zero
        return cls._raw(field, tuple(tuple(zero for _ in range(m)) for _ in range(n)))

    @classmethod
    def diag(cls, field, entries):
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, field, n, i, j):
        """The matrix unit e_ij, 0-based indices."""
        return cls(field, [[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)])

    @classmethod
    def parse(cls, field, text: str):
        """Read a literal like ``[[1,2],[0,3]]``; entries use the scalar grammar."""
        s = text.strip().replace(" ", "")
        if not (s.startswith("[[") and s.endswith("]]")):
            raise ParseError(f"not a matrix literal: {text!r}")
        rows = []
        for chunk in s[2:-2].split("],["):
            rows.append([field(e) for e in _split_entries(chunk)])
        return cls(field, rows)

    # -- shape ---------------------------------------------------------------

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def key(self):
        """Canonical payload tuple, cheap to hash and order."""
        return tuple(tuple(x.v for x in r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if other.field != self.field:
            raise DomainMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise NonSquare("shape mismatch in addition")
        return Matrix._raw(self.field, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self.rows))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise NonSquare("shape mismatch in product")
            cols = list(zip(*other.rows))
            zero = self.field.zero
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = zero
                    for a, b in zip(r, c):
                        acc = acc + a * b
                    row.append(acc)
                out.append(tuple(row))
            return Matrix._raw(self.field, tuple(out))
        c = self.field(other)
        return Matrix._raw(self.field, tuple(tuple(c * a for a in r) for r in self.rows))

    def __rmul__(self, other):
        c = self.field(other)
        return Matrix._raw(self.field, tuple(tuple(c * a for a in r) for r in self.rows))

    def __pow__(self, e: int):
        if not self.is_square:
            raise NonSquare("power of a non-square matrix")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Matrix.identity(self.field, self.nrows)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    @property
    def T(self):
        return Matrix._raw(self.field, tuple(zip(*self.rows)))

    def transpose(self):
        return self.T

    def map(self, fn):
        return Matrix(self.field, [[fn(x) for x in r] for r in self.rows])

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def is_identity(self):
        return self == Matrix.identity(self.field, self.nrows)

    def is_upper_triangular(self):
        return all(self.rows[i][j].is_zero() for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def trace(self):
        acc = self.field.zero
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def block(self, r0, r1, c0, c1):
        return Matrix._raw(self.field, tuple(r[c0:c1] for r in self.rows[r0:r1]))

    # -- linear algebra ------------------------------------------------------

    def det(self):
        if not self.is_square:
            raise NonSquare("determinant of a non-square matrix")
        if self.field.is_field:
            return _bareiss_det(self)
        return cofactor_det(self)

    def rank(self):
        return len(_echelon(self)[1])

    def inverse(self):
        if not self.is_square:
            raise NonSquare("inverse of a non-square matrix")
        n = self.nrows
        if not self.field.is_field:
            d = cofactor_det(self)
            try:
                dinv = d.inv()
            except ZeroDivisionError:
                raise Singular("matrix is singular") from None
            return adjugate(self) * dinv
        aug = Matrix._raw(self.field, tuple(
            r + Matrix.identity(self.field, n).rows[i] for i, r in enumerate(self.rows)))
        red, pivots = _echelon(aug, reduced=True)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise Singular("matrix is singular")
        return red.block(0, n, n, 2 * n)

    def is_invertible(self):
        return not self.det().is_zero()

    def nullspace(self):
        """Basis of {v : M v = 0} as column tuples."""
        red, pivots = _echelon(self, reduced=True)
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [self.field.zero] * self.ncols
            v[f] = self.field.one
            for i, pc in enumerate(pivots):
                v[pc] = -red.rows[i][f]
            basis.append(tuple(v))
        return basis

    # -- text ----------------------------------------------------------------

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self.field}, {self})"

    def pretty(self):
        cells = [[str(x) for x in r] for r in self.rows]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    def to_json(self):
        return {"rows": self.nrows, "cols": self.ncols,
                "entries": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, field, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        m = cls(field, [[field(str(x)) for x in r] for r in obj["entries"]])
        if (m.nrows, m.ncols) != (obj["rows"], obj["cols"]):
            raise ParseError("matrix JSON shape disagrees with its entries")
        return m


def _split_entries(chunk: str):
    depth, start, out = 0, 0, []
    for k, ch in enumerate(chunk):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append(chunk[start:k])
            start = k + 1
    out.append(chunk[start:])
    return out


def _echelon(M: Matrix, reduced=False):
    """Gaussian elimination over a field. Returns (echelon form, pivot columns)."""
    rows = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        targets = range(nr) if reduced else range(r + 1, nr)
        for i in targets:
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix._raw(M.field, tuple(tuple(r) for r in rows)), pivots


def _bareiss_det(M: Matrix):
    """Fraction-free elimination (Bareiss) with row pivoting."""
    n = M.nrows
    if n == 0:
        return M.field.one
    a = [list(r) for r in M.rows]
    sign = 1
    prev = M.field.one
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return M.field.zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def cofactor_det(M):
    """Laplace expansion along the first row. Valid over any commutative ring;
    entries may also be polynomials."""
    rows = M.rows if isinstance(M, Matrix) else M
    n = len(rows)
    if n == 0:
        return M.field.one if isinstance(M, Matrix) else 1
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def adjugate(M: Matrix) -> Matrix:
    n = M.nrows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(M.rows) if k != j]
            c = cofactor_det(minor) if minor else M.field.one
            row.append(c if (i + j) % 2 == 0 else -c)
        out.append(row)
    return Matrix(M.field, out)


def leibniz_det(M: Matrix):
    """Sum over permutations; a slow independent check for small n."""
    n = M.nrows
    total = M.field.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = M.field.one
        for i in range(n):
            term = term * M.rows[i][perm[i]]
        total = total + (-term if inversions % 2 else term)
    return total


DetInverseRank = namedtuple("DetInverseRank", "det inverse rank")


def det_inverse_rank(M: Matrix) -> DetInverseRank:
    if not M.is_square:
        raise NonSquare("det_inverse_rank needs a square matrix")
    d = M.det()
    inv = None if d.is_zero() else M.inverse()
    return DetInverseRank(d, inv, M.rank())


# -- polynomials of matrices ------------------------------------------------


def poly_eval(f: Polynomial, M: Matrix) -> Matrix:
    """f(M) by Horner's rule."""
    n = M.nrows
    acc = Matrix.zeros(M.field, n)
    eye = Matrix.identity(M.field, n)
    for c in reversed(f.coeffs):
        acc = acc * M + eye * c
    return acc


def char_poly(M: Matrix, method: str | None = None) -> Polynomial:
    """det(X I - M), monic of degree n.

    Over a field this uses Berkowitz's division-free recurrence. Over a ring
    with zero divisors (Z/mZ, split etale) the determinant of X I - M is
    expanded by cofactors, with polynomial entries.
    """
    if not M.is_square:
        raise NonSquare("char_poly of a non-square matrix")
    if method is None:
        method = "berkowitz" if M.field.is_field else "cofactor"
    if method == "cofactor":
        F = M.field
        X = Polynomial.x(F)
        rows = [[(X if i == j else Polynomial(F)) - Polynomial(F, [M.rows[i][j]])
                 for j in range(M.nrows)] for i in range(M.nrows)]
        if not rows:
            return Polynomial(F, [1])
        return cofactor_det(rows)
    return _berkowitz(M)


def _berkowitz(M: Matrix) -> Polynomial:
    F = M.field
    n = M.nrows
    if n == 0:
        return Polynomial(F, [1])
    A = M.rows
    zero, one = F.zero, F.one
    # coefficients highest degree first
    C = [one, -A[0][0]]
    for r in range(1, n):
        R = A[r][:r]
        S = [A[i][r] for i in range(r)]
        sub = [row[:r] for row in A[:r]]
        t = [one, -A[r][r]]
        v = list(S)
        for _ in range(r):
            acc = zero
            for x, y in zip(R, v):
                acc = acc + x * y
            t.append(-acc)
            v = [sum((sub[i][k] * v[k] for k in range(r)), zero) for i in range(r)]
        newC = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i, r) + 1):
                acc = acc + t[i - j] * C[j]
            newC.append(acc)
        C = newC
    return Polynomial(F, list(reversed(C)))


def min_poly(M: Matrix) -> Polynomial:
    """Least-degree monic annihilator, found as the first linear dependency
    among I, M, M^2, ... (flattened to vectors)."""
    if not M.is_square:
        raise NonSquare("min_poly of a non-square matrix")
    F = M.field
    if not F.is_field:
        raise DomainMismatch("min_poly needs a field")
    n = M.nrows
    flat = lambda A: [x for r in A.rows for x in r]
    powers = [flat(Matrix.identity(F, n))]
    P = Matrix.identity(F, n)
    for k in range(1, n + 1):
        P = P * M
        target = flat(P)
        sol = solve_columns(F, powers, target)
        if sol is not None:
            # M^k = sum sol_i M^i
            return Polynomial(F, [-c for c in sol] + [1])
        powers.append(target)
    raise AssertionError("Cayley-Hamilton guarantees a dependency by degree n")


def solve_columns(F, columns, target):
    """Solve sum x_i columns[i] = target; return the x_i or None."""
    m = len(target)
    k = len(columns)
    aug = Matrix._raw(F, tuple(tuple(columns[i][r] for i in range(k)) + (F(target[r]),)
                               for r in range(m)))
    red, pivots = _echelon(aug, reduced=True)
    if k in pivots:
        return None
    x = [F.zero] * k
    for i, pc in enumerate(pivots):
        x[pc] = red.rows[i][k]
    return x


def is_nilpotent(M: Matrix) -> bool:
    return (M ** M.nrows).is_zero()


def exp_nilpotent(N: Matrix) -> Matrix:
    """sum_r N^r / r!, a finite sum for nilpotent N.

    In characteristic p the sum needs (k-1)! invertible, where k is the
    nilpotency index; otherwise CharacteristicTooSmall is raised.
    """
    if not N.is_square:
        raise NonSquare("exp of a non-square matrix")
    n = N.nrows
    F = N.field
    terms = [Matrix.identity(F, n)]
    P = Matrix.identity(F, n)
    for _ in range(n):
        P = P * N
        if P.is_zero():
            break
        terms.append(P)
    else:
        raise NotNilpotent("N^n is not zero")
    out = Matrix.zeros(F, n)
    fact = 1
    for r, T in enumerate(terms):
        fact *= max(r, 1)
        c = F(fact)
        if c.is_zero():
            raise CharacteristicTooSmall(f"{r}! vanishes in characteristic {F.characteristic}")
        out = out + T * c.inv()
    return out


# -- field extensions -------------------------------------------------------


def regular_rep(alpha: Scalar) -> Matrix:
    """Matrix of left multiplication by alpha on the basis {1, w} of k[w]/(w^2 - a).

    For x0 + x1 w the images are 1 -> x0 + x1 w and w -> a x1 + x0 w,
    so the matrix is [[x0, a x1], [x1, x0]].
    """
    K = alpha.field
    if not isinstance(K, QuadraticEtale):
        raise DomainMismatch("regular_rep needs an element of a quadratic etale algebra")
    x0, x1 = alpha.parts
    return Matrix(K.base, [[x0, K.a * x1], [x1, x0]])


def trace_form_gram(K) -> Matrix:
    """Gram matrix of B(x, y) = trace(l_x l_y) on the basis {1, w}."""
    if not isinstance(K, QuadraticEtale):
        raise DomainMismatch("trace_form_gram needs a quadratic etale algebra")
    basis = [K.one, K.w()]
    reps = [regular_rep(b) for b in basis]
    return Matrix(K.base, [[(x * y).trace() for y in reps] for x in reps])


def sym_power_rep(g: Matrix, n: int) -> Matrix:
    """Matrix of Sym^n(g) on the basis x^n, x^(n-1) y, ..., y^n,
    where g.x = a x + c y and g.y = b x + d y."""
    if (g.nrows, g.ncols) != (2, 2):
        raise NonSquare("sym_power_rep takes a 2x2 matrix")
    if g.det().is_zero():
        raise Singular("g is singular")
    F = g.field
    (a, b), (c, d) = g.rows
    # work in u = y/x: x^(n-j) y^j is u^j, g.x = a + c u, g.y = b + d u
    gx = Polynomial(F, [a, c])
    gy = Polynomial(F, [b, d])
    cols = []
    for k in range(n + 1):
        # basis vector x^(n-k) y^k
        img = gx ** (n - k) * gy ** k
        cols.append([img[j] for j in range(n + 1)])
    return Matrix(F, [[cols[k][j] for k in range(n + 1)] for j in range(n + 1)])


def block_diag(*blocks: Matrix) -> Matrix:
    F = blocks[0].field
    n = sum(b.nrows for b in blocks)
    out = [[F.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                out[off + i][off + j] = b.rows[i][j]
        off += b.nrows
    return Matrix(F, out)


def jordan_block(F, r: int, lam) -> Matrix:
    """J_r(lam): lam on the diagonal, 1 on the superdiagonal."""
    return Matrix(F, [[lam if i == j else (1 if j == i + 1 else 0) for j in range(r)]
                      for i in range(r)])
