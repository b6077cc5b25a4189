"""Euclidean geometry in floating point: O_n, isometries x -> Ax + a,
Iwasawa A = P S, the classification of O_2 and Platonic solids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, NotOrthogonal, Singular, ZeroVector

TOL = 1e-9
SING_TOL = 1e-12


def orthogonality_defect(A) -> float:
    A = np.asarray(A, dtype=float)
    return float(np.max(np.abs(A.T @ A - np.eye(A.shape[0]))))


def is_orthogonal(A, tol=TOL) -> bool:
    return orthogonality_defect(A) <= tol


def is_special_orthogonal(A, tol=TOL) -> bool:
    return is_orthogonal(A, tol) and abs(np.linalg.det(A) - 1.0) <= tol


@dataclass(frozen=True)
class AffineIsometry:
    """x -> A x + a."""
    A: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        a = np.asarray(self.a, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or a.shape != (A.shape[0],):
            raise DimensionMismatch(f"A {A.shape} and a {a.shape} do not fit")
        if not is_orthogonal(A):
            raise NotOrthogonal(f"defect {orthogonality_defect(A):.3g}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "a", a)

    @property
    def dim(self):
        return self.A.shape[0]

    @classmethod
    def translation(cls, b):
        b = np.asarray(b, dtype=float)
        return cls(np.eye(len(b)), b)

    @classmethod
    def linear(cls, A):
        A = np.asarray(A, dtype=float)
        return cls(A, np.zeros(A.shape[0]))

    def __call__(self, x):
        return self.A @ np.asarray(x, dtype=float) + self.a

    def compose(self, other: "AffineIsometry") -> "AffineIsometry":
        """(self o other)(x) = A A' x + (A a' + a)."""
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        return AffineIsometry(self.A @ other.A, self.A @ other.a + self.a)

    __matmul__ = compose

    def inverse(self) -> "AffineIsometry":
        Ainv = self.A.T
        return AffineIsometry(Ainv, -Ainv @ self.a)

    def is_translation(self, tol=TOL):
        return float(np.max(np.abs(self.A - np.eye(self.dim)))) <= tol

    def close_to(self, other, tol=TOL):
        return (float(np.max(np.abs(self.A - other.A))) <= tol
                and float(np.max(np.abs(self.a - other.a))) <= tol)


def compose_invert(f: AffineIsometry, g: AffineIsometry):
    """(f o g, f^-1)."""
    return f.compose(g), f.inverse()


def iwasawa(A):
    """A = P S with P upper triangular (positive diagonal) and S orthogonal.

    Rows of S come from classical Gram-Schmidt on the rows of A taken from the
    last one upward, which is what makes P upper triangular; each row is
    re-orthogonalised once to keep the error near machine precision."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("square matrix required")
    if abs(np.linalg.det(A)) <= SING_TOL:
        raise Singular("matrix is singular")
    S = np.zeros((n, n))
    for i in range(n - 1, -1, -1):
        v = A[i].copy()
        for _ in range(2):
            for k in range(i + 1, n):
                v = v - (v @ S[k]) * S[k]
        norm = math.sqrt(float(v @ v))
        if norm <= SING_TOL:
            raise Singular("rows are dependent")
        S[i] = v / norm
    P = A @ S.T
    P = np.triu(P)
    return P, S


def reflection(v):
    """r_v(x) = x - 2 <x, v> / <v, v> v."""
    v = np.asarray(v, dtype=float)
    vv = float(v @ v)
    if vv == 0.0:
        raise ZeroVector("reflection needs a nonzero vector")
    return np.eye(len(v)) - 2.0 * np.outer(v, v) / vv


def rotate2(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotate_plane(l, theta, n):
    """Rotation by theta in the (e_l, e_{l+1}) plane of R^n, 1 <= l <= n-1,
    with block [[cos, sin], [-sin, cos]] and the identity elsewhere."""
    if not 1 <= l <= n - 1:
        raise DimensionMismatch(f"need 1 <= l <= {n - 1}, got {l}")
    c, s = math.cos(theta), math.sin(theta)
    M = np.eye(n)
    i = l - 1
    M[i, i], M[i, i + 1] = c, s
    M[i + 1, i], M[i + 1, i + 1] = -s, c
    return M


@dataclass(frozen=True)
class Reflect:
    v: tuple


@dataclass(frozen=True)
class Rotate2:
    theta: float


@dataclass(frozen=True)
class RotatePlane:
    l: int
    theta: float
    n: int


def reflection_rotation(kind):
    if isinstance(kind, Reflect):
        return reflection(kind.v)
    if isinstance(kind, Rotate2):
        return rotate2(kind.theta)
    if isinstance(kind, RotatePlane):
        return rotate_plane(kind.l, kind.theta, kind.n)
    raise TypeError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class Rotation:
    theta: float

    def matrix(self):
        return rotate2(self.theta)


@dataclass(frozen=True)
class Reflection:
    """Reflection in the line through the origin at angle ``angle``."""
    angle: float

    def matrix(self):
        c, s = math.cos(2 * self.angle), math.sin(2 * self.angle)
        return np.array([[c, s], [s, -c]])

    @property
    def line(self):
        return np.array([math.cos(self.angle), math.sin(self.angle)])


def classify_o2(A):
    A = np.asarray(A, dtype=float)
    if A.shape != (2, 2):
        raise DimensionMismatch("2x2 matrix required")
    if not is_orthogonal(A):
        raise NotOrthogonal(f"defect {orthogonality_defect(A):.3g}")
    d = float(np.linalg.det(A))
    if d > 0:
        return Rotation(math.atan2(A[1, 0], A[0, 0]))
    # A = [[cos p, sin p], [sin p, -cos p]] fixes the line at angle p/2
    return Reflection(math.atan2(A[1, 0], A[0, 0]) / 2)


def platonic_enumerate():
    """(n, m, v, e, f) for n-gon faces with m at each vertex.

    Only finitely many n, m >= 3 satisfy 1/n + 1/m > 1/2 (n = 3 forces m < 6).
    The counts follow from n f = 2 e = m v together with Euler's formula
    v - e + f = 2, which give e = 2mn / (2m + 2n - mn)."""
    out = []
    for n in range(3, 6):
        for m in range(3, 6):
            if Fraction(1, n) + Fraction(1, m) <= Fraction(1, 2):
                continue
            e = Fraction(2 * m * n, 2 * m + 2 * n - m * n)
            v, f = 2 * e / m, 2 * e / n
            assert e.denominator == v.denominator == f.denominator == 1
            out.append((n, m, int(v), int(e), int(f)))
    return out
