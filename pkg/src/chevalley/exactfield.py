"""Exact coefficient domains: F_p, Q, quadratic etale algebras k[w]/(w^2 - a),
rational function fields F_p(t), and the residue rings Z/mZ.

A domain descriptor is a small immutable object. Calling it coerces a value
into a :class:`Scalar`::

    >>> F = PrimeField(5)
    >>> F(2).inv()
    3
    >>> K = QuadraticEtale(Rationals(), 2)
    >>> K("3+2w").norm()
    1

Every payload is kept canonical, so scalar equality is structural.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import product

from sympy import isprime

from .errors import (
    DivisionByZero,
    DomainMismatch,
    NonInvertible,
    NotPrime,
    ParseError,
    ZeroInput,
)
from .polynomial import Polynomial, parse_int_polynomial


class Scalar:
    """An element of some domain. Immutable; arithmetic accepts plain ints."""

    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _pair(self, other):
        """Return (domain, lhs payload, rhs payload), promoting base scalars
        into an etale algebra when the two sides differ that way."""
        if isinstance(other, Scalar):
            f = self.field
            if other.field is f or other.field == f:
                return f, self.v, other.v
            if getattr(f, "base", None) == other.field:
                return f, self.v, f(other).v
            g = other.field
            if getattr(g, "base", None) == f:
                return g, g(self).v, other.v
            raise DomainMismatch(f"{f} vs {g}")
        if isinstance(other, (int, Fraction)):
            return self.field, self.v, self.field._canon(other)
        return None

    def __add__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, x, y = t
        return Scalar(f, f._add(x, y))

    __radd__ = __add__

    def __sub__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, x, y = t
        return Scalar(f, f._add(x, f._neg(y)))

    def __rsub__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, x, y = t
        return Scalar(f, f._add(y, f._neg(x)))

    def __mul__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, x, y = t
        return Scalar(f, f._mul(x, y))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.v))

    def inv(self):
        return Scalar(self.field, self.field._inv(self.v))

    def __truediv__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, x, y = t
        return Scalar(f, f._mul(x, f._inv(y)))

    def __rtruediv__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, x, y = t
        return Scalar(f, f._mul(y, f._inv(x)))

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inv()
        e = abs(e)
        out = self.field.one
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return self.field._is_zero(self.v)

    def is_one(self) -> bool:
        return self.v == self.field.one.v

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.v == other.v
        if isinstance(other, (int, Fraction)):
            return self.v == self.field._canon(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.v))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return self.field._fmt(self.v)

    def __repr__(self):
        return self.field._fmt(self.v)

    # -- domain specific helpers -------------------------------------------

    def is_square(self) -> bool:
        return self.field.is_square(self)

    def conj(self):
        return self.field.conj(self)

    def norm(self):
        return self.field.norm(self)

    def trace(self):
        return self.field.trace(self)

    @property
    def parts(self):
        """(x0, x1) as base scalars for an element x0 + x1 w of an etale algebra."""
        return self.field.parts(self)


class Domain:
    """Common behaviour of every coefficient domain."""

    is_finite = False
    is_field = True
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            return self._from_scalar(value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Fraction)):
            return Scalar(self, self._canon(value))
        return self._from_other(value)

    def _from_scalar(self, s):
        raise DomainMismatch(f"cannot coerce {s.field} into {self}")

    def _from_other(self, value):
        raise DomainMismatch(f"cannot coerce {value!r} into {self}")

    @property
    def zero(self):
        return Scalar(self, self._canon(0))

    @property
    def one(self):
        return Scalar(self, self._canon(1))

    def _is_zero(self, v):
        return v == self._canon(0)

    def parse(self, text: str):
        raise NotImplementedError

    def elements(self):
        raise DomainMismatch(f"{self} is not finite")

    def is_square(self, x):
        raise DomainMismatch(f"square test not supported over {self}")

    def _check_etale(self):
        raise DomainMismatch(f"{self} is not a quadratic etale algebra")

    def conj(self, x):
        self._check_etale()

    norm = trace = parts = conj


@dataclass(frozen=True)
class PrimeField(Domain):
    """F_p, payload the least nonnegative residue."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    is_finite = True

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p

    def _canon(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"{value} has denominator divisible by {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return value % self.p

    def _add(self, x, y):
        return (x + y) % self.p

    def _mul(self, x, y):
        return x * y % self.p

    def _neg(self, x):
        return -x % self.p

    def _inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0")
        return pow(x, -1, self.p)

    def _is_zero(self, v):
        return v == 0

    def _fmt(self, v):
        return str(v)

    def _from_scalar(self, s):
        if isinstance(s.field, PrimeField) and s.field.p == self.p:
            return Scalar(self, s.v)
        if isinstance(s.field, IntegersMod) and s.field.m == self.p:
            return Scalar(self, s.v)
        return super()._from_scalar(s)

    def parse(self, text):
        return Scalar(self, self._canon(_parse_rational(text)))

    def elements(self):
        return [Scalar(self, v) for v in range(self.p)]

    def is_square(self, x):
        x = self(x)
        if x.is_zero():
            raise ZeroInput("is_square of 0")
        if self.p == 2:
            return True
        return pow(x.v, (self.p - 1) // 2, self.p) == 1

    @property
    def spec(self):
        return f"fp:{self.p}"

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class Rationals(Domain):
    """Q, payload a reduced Fraction."""

    def _canon(self, value):
        return Fraction(value)

    def _add(self, x, y):
        return x + y

    def _mul(self, x, y):
        return x * y

    def _neg(self, x):
        return -x

    def _inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0")
        return 1 / x

    def _is_zero(self, v):
        return v == 0

    def _fmt(self, v):
        return str(v)

    def parse(self, text):
        return Scalar(self, _parse_rational(text))

    def is_square(self, x):
        x = self(x)
        if x.is_zero():
            raise ZeroInput("is_square of 0")
        n, d = x.v.numerator, x.v.denominator
        return n > 0 and math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d

    @property
    def spec(self):
        return "q"

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class IntegersMod(Domain):
    """The residue ring Z/mZ. A field only when m is prime."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ParseError("modulus must be at least 2")

    is_finite = True

    @cached_property
    def is_field(self):
        return isprime(self.m)

    @property
    def characteristic(self):
        return self.m

    @property
    def order(self):
        return self.m

    def _canon(self, value):
        if isinstance(value, Fraction):
            return value.numerator * self._inv(value.denominator % self.m) % self.m
        return value % self.m

    def _add(self, x, y):
        return (x + y) % self.m

    def _mul(self, x, y):
        return x * y % self.m

    def _neg(self, x):
        return -x % self.m

    def _inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0")
        if math.gcd(x, self.m) != 1:
            raise NonInvertible(f"{x} is a zero divisor mod {self.m}")
        return pow(x, -1, self.m)

    def _is_zero(self, v):
        return v == 0

    def _fmt(self, v):
        return str(v)

    def parse(self, text):
        return Scalar(self, self._canon(_parse_rational(text)))

    def elements(self):
        return [Scalar(self, v) for v in range(self.m)]

    @property
    def spec(self):
        return f"zmod:{self.m}"

    def __str__(self):
        return f"Z/{self.m}Z"


@dataclass(frozen=True)
class RationalFunctions(Domain):
    """F_p(t). Payload (num, den) of coprime polynomials, den monic."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    @property
    def base(self):
        return PrimeField(self.p)

    def _poly(self, coeffs):
        return Polynomial(self.base, coeffs)

    def _norm(self, num, den):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return (num, self._poly([1]))
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        k = den.lc().inv()
        return (num * k, den * k)

    def _canon(self, value):
        if isinstance(value, Fraction):
            return self._norm(self._poly([value.numerator]), self._poly([value.denominator]))
        return (self._poly([value]), self._poly([1]))

    def _add(self, x, y):
        return self._norm(x[0] * y[1] + y[0] * x[1], x[1] * y[1])

    def _mul(self, x, y):
        return self._norm(x[0] * y[0], x[1] * y[1])

    def _neg(self, x):
        return (-x[0], x[1])

    def _inv(self, x):
        if x[0].is_zero():
            raise DivisionByZero("inverse of 0")
        return self._norm(x[1], x[0])

    def _is_zero(self, v):
        return v[0].is_zero()

    def _fmt(self, v):
        num = f"({v[0].format('t')})"
        if v[1].degree == 0:
            return num
        return f"{num}/({v[1].format('t')})"

    def _from_scalar(self, s):
        if isinstance(s.field, PrimeField) and s.field.p == self.p:
            return Scalar(self, self._canon(s.v))
        return super()._from_scalar(s)

    def _from_other(self, value):
        if isinstance(value, Polynomial):
            return Scalar(self, self._norm(value, self._poly([1])))
        return super()._from_other(value)

    def t(self):
        return Scalar(self, (self._poly([0, 1]), self._poly([1])))

    def parse(self, text):
        s = text.replace(" ", "")
        depth, split = 0, None
        for k, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                split = k
        if split is None:
            num, den = s, "1"
        else:
            num, den = s[:split], s[split + 1:]
        return Scalar(self, self._norm(self._parse_poly(num), self._parse_poly(den)))

    def _parse_poly(self, s):
        while s.startswith("(") and s.endswith(")") and _balanced(s[1:-1]):
            s = s[1:-1]
        return parse_int_polynomial(self.base, s, "t")

    def is_square(self, x):
        x = self(x)
        if x.is_zero():
            raise ZeroInput("is_square of 0")
        if self.p != 2:
            raise DomainMismatch("square test over F_p(t) is only implemented for p = 2")
        # over F_2 every coefficient is its own square, so f is a square iff
        # only even powers of t occur
        return all(c.is_zero() for part in x.v for c in part.coeffs[1::2])

    @property
    def spec(self):
        return f"fpt:{self.p}"

    def __str__(self):
        return f"F_{self.p}(t)"


@dataclass(frozen=True)
class QuadraticEtale(Domain):
    """k[w]/(w^2 - a). Payload (x0, x1) of base payloads for x0 + x1 w."""

    base: Domain
    a: Scalar

    def __init__(self, base, a):
        if isinstance(base, QuadraticEtale):
            raise DomainMismatch("quadratic etale algebras nest only one level deep")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "a", base(a))
        if self.a.is_zero():
            raise ZeroInput("etale parameter a must be nonzero")

    @property
    def is_finite(self):
        return self.base.is_finite

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def order(self):
        return self.base.order ** 2

    @cached_property
    def is_split(self) -> bool:
        """True when a is a square in the base, i.e. K is isomorphic to k x k."""
        return self.base.is_square(self.a)

    @cached_property
    def is_field(self):
        try:
            return self.base.is_field and not self.is_split
        except DomainMismatch:
            # no square test for this base; callers fall back to ring methods
            return False

    @property
    def is_separable(self) -> bool:
        return self.characteristic != 2

    def _canon(self, value):
        return (self.base._canon(value), self.base._canon(0))

    def _add(self, x, y):
        b = self.base
        return (b._add(x[0], y[0]), b._add(x[1], y[1]))

    def _mul(self, x, y):
        b = self.base
        r0 = b._add(b._mul(x[0], y[0]), b._mul(self.a.v, b._mul(x[1], y[1])))
        r1 = b._add(b._mul(x[0], y[1]), b._mul(x[1], y[0]))
        return (r0, r1)

    def _neg(self, x):
        return (self.base._neg(x[0]), self.base._neg(x[1]))

    def _norm_payload(self, x):
        b = self.base
        return b._add(b._mul(x[0], x[0]), b._neg(b._mul(self.a.v, b._mul(x[1], x[1]))))

    def _inv(self, x):
        b = self.base
        n = self._norm_payload(x)
        if b._is_zero(n):
            if self._is_zero(x):
                raise DivisionByZero("inverse of 0")
            raise NonInvertible(f"{self._fmt(x)} is a zero divisor")
        ninv = b._inv(n)
        return (b._mul(x[0], ninv), b._neg(b._mul(x[1], ninv)))

    def _is_zero(self, v):
        return self.base._is_zero(v[0]) and self.base._is_zero(v[1])

    def _fmt(self, v):
        b = self.base
        x0, x1 = b._fmt(v[0]), b._fmt(v[1])
        if b._is_zero(v[1]):
            return x0
        if x1 == "1":
            tail = "w"
        elif x1 == "-1":
            tail = "-w"
        else:
            tail = x1 + "w"
        if b._is_zero(v[0]):
            return tail
        if tail.startswith("-"):
            return x0 + tail
        return x0 + "+" + tail

    def _from_scalar(self, s):
        if s.field == self.base:
            return Scalar(self, (s.v, self.base._canon(0)))
        return Scalar(self, (self.base(s).v, self.base._canon(0)))

    def _from_other(self, value):
        if isinstance(value, tuple) and len(value) == 2:
            return Scalar(self, (self.base(value[0]).v, self.base(value[1]).v))
        return super()._from_other(value)

    def w(self):
        return Scalar(self, (self.base._canon(0), self.base._canon(1)))

    def parse(self, text):
        s = text.replace(" ", "")
        if not s.endswith("w"):
            return Scalar(self, (self.base.parse(s).v, self.base._canon(0)))
        body = s[:-1]
        depth, split = 0, None
        for k, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch in "+-" and depth == 0 and k > 0 and body[k - 1] not in "/^(":
                split = k
        if split is None:
            head, coef = "0", body
        else:
            head, coef = body[:split], body[split:]
            if coef.startswith("+"):
                coef = coef[1:]
        if coef in ("", "+"):
            coef = "1"
        elif coef == "-":
            coef = "-1"
        return Scalar(self, (self.base.parse(head).v, self.base.parse(coef).v))

    def elements(self):
        els = self.base.elements()
        return [Scalar(self, (x.v, y.v)) for x, y in product(els, els)]

    def parts(self, x):
        x = self(x)
        return Scalar(self.base, x.v[0]), Scalar(self.base, x.v[1])

    def conj(self, x):
        x = self(x)
        return Scalar(self, (x.v[0], self.base._neg(x.v[1])))

    def norm(self, x):
        return Scalar(self.base, self._norm_payload(self(x).v))

    def trace(self, x):
        x0 = Scalar(self.base, self(x).v[0])
        return x0 + x0

    @property
    def spec(self):
        return f"etale:{self.base.spec}:{self.a}"

    def __str__(self):
        return f"{self.base}[w]/(w^2-({self.a}))"


def etale_conj_norm(x: Scalar):
    """(conjugate, norm, trace) of x = x0 + x1 w in k[w]/(w^2 - a)."""
    return x.conj(), x.norm(), x.trace()


def is_square(x: Scalar) -> bool:
    """Square test in F_p. Raises ZeroInput on 0 and DomainMismatch elsewhere."""
    if not isinstance(x.field, PrimeField):
        raise DomainMismatch("is_square is defined on prime fields")
    return x.field.is_square(x)


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


_RATIONAL = re.compile(r"^\(?([+-]?\d+)(?:/([+-]?\d+))?\)?$")


def _parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text.strip().replace(" ", ""))
    if m is None:
        raise ParseError(f"not a rational number: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise DivisionByZero(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_field(text: str) -> Domain:
    """Parse a domain spec: ``q``, ``fp:P``, ``fpt:P``, ``zmod:M`` or
    ``etale:<base spec>:<a>`` (for example ``etale:fp:5:2`` or ``etale:q:-1``)."""
    s = text.strip()
    try:
        if s in ("q", "Q"):
            return Rationals()
        if s.startswith("fp:"):
            return PrimeField(int(s[3:]))
        if s.startswith("fpt:"):
            return RationalFunctions(int(s[4:]))
        if s.startswith("zmod:"):
            return IntegersMod(int(s[5:]))
        if s.startswith("etale:"):
            base_text, a_text = s[6:].rsplit(":", 1)
            return QuadraticEtale(parse_field(base_text), parse_field(base_text)(a_text))
    except ValueError as exc:
        raise ParseError(f"bad field spec {text!r}: {exc}") from None
    raise ParseError(f"bad field spec {text!r}")
