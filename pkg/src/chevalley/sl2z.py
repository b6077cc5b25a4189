"""SL_2(Z): words in S and U, relations, and reduction to the fundamental domain.

S = [[0,-1],[1,0]], U = [[1,1],[0,1]]. The other common generator
T = [[0,-1],[1,1]] equals S U and is accepted in words as an alias.
Matrices are plain 2x2 tuples of Python ints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DeterminantNotOne, NotUpperHalfPlane, ParseError

S = ((0, -1), (1, 0))
U = ((1, 1), (0, 1))
T = ((0, -1), (1, 1))
I2 = ((1, 0), (0, 1))
MINUS_I = ((-1, 0), (0, -1))


def mul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def neg(A):
    return tuple(tuple(-x for x in row) for row in A)


def mpow(A, n):
    if n < 0:
        A, n = inverse(A), -n
    out = I2
    for _ in range(n):
        out = mul(out, A)
    return out


def inverse(A):
    (a, b), (c, d) = A
    return ((d, -b), (-c, a))


def u_power(k):
    return ((1, k), (0, 1))


def det(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


@dataclass
class Word:
    """Syllables (name, exponent) with name in {"S", "U"}, and an overall sign."""
    syllables: list
    sign: int = 1

    def eval(self):
        M = I2
        for name, e in self.syllables:
            M = mul(M, mpow(S, e) if name == "S" else u_power(e))
        return M if self.sign == 1 else neg(M)

    def __len__(self):
        return len(self.syllables)

    def __str__(self):
        parts = [name if e == 1 else f"{name}^{e}" for name, e in self.syllables]
        body = " ".join(parts) if parts else "1"
        return body if self.sign == 1 else "-" + ("(" + body + ")" if parts else "1")

    def to_json(self):
        return {"syllables": [[n, e] for n, e in self.syllables], "sign": self.sign}


def _merge(syllables):
    out = []
    for name, e in syllables:
        if out and out[-1][0] == name:
            e += out.pop()[1]
        if name == "S":
            e %= 4
        if e:
            out.append((name, e))
    return out


def _normalise(word: Word) -> Word:
    """Merge neighbours, reduce S-exponents to 1 using S^2 = -I (central)."""
    sign = word.sign
    syl = _merge(word.syllables)
    changed = True
    while changed:
        changed = False
        out = []
        for name, e in syl:
            if name == "S" and e in (2, 3):
                sign = -sign
                e -= 2
            if e:
                out.append((name, e))
        new = _merge(out)
        changed = new != syl
        syl = new
    return Word(syl, sign)


def su_decompose(M) -> Word:
    """Word w in S, U (and a sign) with eval(w) = M.

    Euclid on the first column with floor quotients: multiply on the left by
    U^-q (q = a // c), then by S, until c = 0; what is left is +-U^e."""
    M = tuple(tuple(int(x) for x in row) for row in M)
    if det(M) != 1:
        raise DeterminantNotOne(f"det = {det(M)}")
    ops = []  # left multipliers applied in order
    W = M
    while W[1][0] != 0:
        q = W[0][0] // W[1][0]
        if q:
            W = mul(u_power(-q), W)
            ops.append(("U", -q))
        W = mul(S, W)
        ops.append(("S", 1))
    # W = +-U^e
    sign = 1 if W[0][0] == 1 else -1
    e = W[0][1] * sign
    # W = o_n ... o_1 M, so M = o_1^-1 ... o_n^-1 W; S^-1 = S^3
    syl = []
    for name, k in ops:
        if name == "S":
            syl.append(("S", 3))
        else:
            syl.append(("U", -k))
    syl.append(("U", e))
    w = _normalise(Word(syl, sign))
    assert w.eval() == M
    return w


_TOKEN = re.compile(r"\s*(-?)\s*([SUT])(?:\^\(?(-?\d+)\)?)?")


def parse_word(text: str) -> Word:
    """Parse ``S U^5 U^-1 T`` (T expands to S U). A leading ``-`` sets the sign."""
    s = text.strip()
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:].strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
    syl = []
    pos = 0
    s = s.strip()
    if s in ("", "1", "I"):
        return Word([], sign)
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.group(1):
            raise ParseError(f"bad word near {s[pos:]!r}")
        name, e = m.group(2), int(m.group(3) or 1)
        if name == "T":
            syl.extend([("S", 1), ("U", 1)] * e if e > 0 else [("U", -1), ("S", 3)] * -e)
        else:
            syl.append((name, e))
        pos = m.end()
        while pos < len(s) and s[pos] in " *":
            pos += 1
    return Word(syl, sign)


def eval_word(text_or_word):
    w = parse_word(text_or_word) if isinstance(text_or_word, str) else text_or_word
    return w.eval()


def relations_check(n_max: int = 50) -> dict:
    """S^2 = -I, (SU)^3 = -I, S^4 = I, and (SUS)^n, (USU)^n != I for 1 <= n <= n_max."""
    SU = mul(S, U)
    SUS = mul(SU, S)
    USU = mul(mul(U, S), U)
    return {
        "S^2=-I": mpow(S, 2) == MINUS_I,
        "(SU)^3=-I": mpow(SU, 3) == MINUS_I,
        "S^4=I": mpow(S, 4) == I2,
        "(SUS)^n!=I": all(mpow(SUS, n) != I2 for n in range(1, n_max + 1)),
        "(USU)^n!=I": all(mpow(USU, n) != I2 for n in range(1, n_max + 1)),
    }


def free_product_check(max_syllables: int = 8) -> bool:
    """Every nonempty alternating word in s and (su)^{+-1} with at most
    max_syllables syllables is not +-I."""
    s = S
    t, t2 = mul(S, U), mpow(mul(S, U), 2)
    for length in range(1, max_syllables + 1):
        for start_s in (True, False):
            n_t = length // 2 + (0 if start_s else length % 2)
            for choice in product((t, t2), repeat=n_t):
                M, it = I2, iter(choice)
                for k in range(length):
                    is_s = (k % 2 == 0) == start_s
                    M = mul(M, s if is_s else next(it))
                if M in (I2, MINUS_I):
                    return False
    return True


# -- action on the upper half plane ------------------------------------------------


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if self.y <= 0:
            raise NotUpperHalfPlane(f"y = {self.y} is not positive")

    @property
    def abs2(self):
        return self.x * self.x + self.y * self.y

    def __str__(self):
        return f"{self.x} + {self.y}i"


def mobius(M, z: RationalPoint) -> RationalPoint:
    """(az + b) / (cz + d) for real M, exact."""
    (a, b), (c, d) = M
    x, y = z.x, z.y
    den = (c * x + d) ** 2 + (c * y) ** 2
    nx = (a * x + b) * (c * x + d) + a * c * y * y
    return RationalPoint(nx / den, y * (a * d - b * c) / den)


def step(z: RationalPoint, s) -> RationalPoint:
    name, k = s
    if name == "U":
        return RationalPoint(z.x + k, z.y)
    r = z.abs2
    return RationalPoint(-z.x / r, z.y / r)


def is_reduced(z: RationalPoint) -> bool:
    return abs(z.x) <= Fraction(1, 2) and z.abs2 >= 1


def reduce_to_fundamental_domain(z: RationalPoint):
    """(z', steps) with z' in |x| <= 1/2, |z| >= 1. Steps are ("U", k) meaning
    z -> z + k and ("S", 1) meaning z -> -1/z, applied left to right."""
    if not isinstance(z, RationalPoint):
        z = RationalPoint(*z)
    steps = []
    while True:
        k = -((z.x + Fraction(1, 2)).__floor__()) if abs(z.x) > Fraction(1, 2) else 0
        if k:
            z = step(z, ("U", k))
            steps.append(("U", k))
        if z.abs2 < 1:
            y_before = z.y
            z = step(z, ("S", 1))
            assert z.y > y_before
            steps.append(("S", 1))
            continue
        break
    return z, steps


def replay(z: RationalPoint, steps) -> RationalPoint:
    for s in steps:
        z = step(z, s)
    return z


def steps_matrix(steps):
    """The SL_2(Z) matrix acting as the whole step sequence."""
    M = I2
    for name, k in steps:
        M = mul(S if name == "S" else u_power(k), M)
    return M
