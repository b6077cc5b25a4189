"""Univariate polynomials over any coefficient domain from ``exactfield``.

Coefficients are stored in ascending degree with no trailing zeros, so two
polynomials are equal exactly when their coefficient tuples agree.
"""

from __future__ import annotations

import re

from .errors import DivisionByZero, DomainMismatch, ParseError


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field, roots):
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [-field(r), 1])
        return out

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Polynomial(self.field, [other])
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise DomainMismatch(f"{self.field} vs {other.field}")
            return other
        return Polynomial(self.field, [other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field, [self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field)
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = Polynomial(self.field, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        inv_lc = other.lc().inv()
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(self.field), self
        quot = [self.field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lc
            quot[k] = c
            if c.is_zero():
                continue
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
        return Polynomial(self.field, quot), Polynomial(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        return (other % self).is_zero()

    def monic(self):
        if self.is_zero():
            return self
        return self * self.lc().inv()

    def derivative(self):
        return Polynomial(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a scalar."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def gcd(self, other):
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return (g, s, t) with s*self + t*other = g and g monic."""
        other = self._coerce(other)
        one = Polynomial(self.field, [1])
        zero = Polynomial(self.field)
        r0, r1, s0, s1, t0, t1 = self, other, one, zero, zero, one
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        k = r0.lc().inv()
        return r0 * k, s0 * k, t0 * k

    def is_squarefree(self) -> bool:
        """True when gcd(f, f') = 1, i.e. no repeated root over the closure."""
        return self.gcd(self.derivative()).degree == 0

    def roots(self):
        """Roots found by scanning a finite field, with multiplicity."""
        out = []
        f = self
        for r in self.field.elements():
            lin = Polynomial(self.field, [-r, 1])
            while f.degree > 0:
                q, rem = divmod(f, lin)
                if not rem.is_zero():
                    break
                out.append(r)
                f = q
        return out

    # -- text ----------------------------------------------------------------

    def format(self, var: str = "X") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            cs = str(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and cs == "1":
                body = mono
            elif mono and cs == "-1":
                body = "-" + mono
            elif mono:
                if re.search(r"[+*/]|.-", cs):
                    cs = f"({cs})"
                body = cs + mono
            else:
                body = cs
            terms.append(body)
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()})"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(?:\*?\s*([a-zA-Z])(?:\^(\d+))?)?")


def parse_int_polynomial(field, text: str, var: str = "t") -> Polynomial:
    """Parse text such as ``t^2+3t-1`` with integer coefficients."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    coeffs = {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"bad polynomial term at {s[pos:]!r}")
        sign, digits, v, exp = m.groups()
        if not digits and not v:
            raise ParseError(f"bad polynomial term at {s[pos:]!r}")
        if v is not None and v != var:
            raise ParseError(f"unexpected variable {v!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = 0 if v is None else (int(exp) if exp else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ParseError(f"bad polynomial term at {s[pos:]!r}")
    top = max(coeffs)
    return Polynomial(field, [coeffs.get(k, 0) for k in range(top + 1)])
