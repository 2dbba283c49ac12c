"""Exact arithmetic in Q[t] and Q(t).

Polynomials are stored as tuples of :class:`fractions.Fraction` indexed by
exponent of ``t``.  Rational functions keep a reduced numerator/denominator
pair with a monic denominator, so equality is structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from functools import total_ordering
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction

__all__ = [
    "Rational",
    "NEG_INF",
    "Poly",
    "RatFunc",
    "as_rational",
    "substitute",
    "T",
    "ONE",
    "ZERO",
]


@total_ordering
class _NegInf:
    """Degree of the zero polynomial.

    Adding an integer keeps it at -oo, so ``deg(p*q) == deg(p) + deg(q)``
    holds for every pair of polynomials.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-oo"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("kappa_feq.NEG_INF")

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__


NEG_INF = _NegInf()


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _trim(coeffs: Sequence[Fraction]) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Univariate polynomial over Q in the indeterminate ``t``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([as_rational(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        # coeffs already Fractions
        p = object.__new__(cls)
        p.coeffs = _trim(coeffs)
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    # -- basic queries -------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((Fraction(other),))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly._raw(())
            return Poly._raw(tuple(c * other for c in self.coeffs))
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        if len(a) == 1:
            return other * a[0] if a[0] != 1 else other
        if len(b) == 1:
            return self * b[0] if b[0] != 1 else self
        # convolve integer numerators over a common denominator
        x, dx = _scaled_ints(a)
        y, dy = _scaled_ints(b)
        out = [0] * (len(x) + len(y) - 1)
        for i, u in enumerate(x):
            if u:
                for j, v in enumerate(y):
                    out[i + j] += u * v
        den = dx * dy
        return Poly._raw(tuple(Fraction(v, den) for v in out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer")
        result, base = Poly._raw((Fraction(1),)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        db = len(other.coeffs) - 1
        if len(self.coeffs) - 1 < db:
            return Poly._raw(()), self
        # pseudo-division over Z: lead^e * x = q * y + r
        x, dx = _scaled_ints(self.coeffs)
        y, dy = _scaled_ints(other.coeffs)
        lead = y[-1]
        steps = len(x) - db
        quot = [0] * steps
        r = x
        for i in range(len(x) - 1, db - 1, -1):
            c = r[i]
            if lead != 1:
                r = [v * lead for v in r]
                quot = [v * lead for v in quot]
            if c:
                quot[i - db] += c
                for j, w in enumerate(y):
                    r[i - db + j] -= c * w
        scale = dx * lead ** steps
        q = tuple(Fraction(v * dy, scale) for v in quot)
        rem = tuple(Fraction(v, scale) for v in r[:db])
        return Poly._raw(q), Poly._raw(rem)

    def __divmod__(self, other):
        return self.divmod(_as_poly(other))

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Poly._raw(tuple(c / lc for c in self.coeffs))

    def derivative(self) -> "Poly":
        return Poly._raw(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __call__(self, r):
        """Horner evaluation at a rational (or any ring element)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * r + c
        return acc


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly._raw((Fraction(x),))
    return None


def _scaled_ints(coeffs) -> tuple:
    """``(ints, den)`` with ``coeffs[i] == ints[i] / den``."""
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _primitive_ints(coeffs) -> list:
    """Integer multiple of ``coeffs`` with content 1 (coefficients as Python ints)."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q; gcd(0, 0) = 0.

    Runs the primitive pseudo-remainder sequence over Z, which keeps
    coefficient growth in check compared with Euclid over Q.
    """
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if len(a.coeffs) == 1 or len(b.coeffs) == 1:
        return Poly._raw((Fraction(1),))
    x, y = _primitive_ints(a.coeffs), _primitive_ints(b.coeffs)
    if len(x) < len(y):
        x, y = y, x
    while y:
        lead, dy = y[-1], len(y) - 1
        r = x[:]
        while len(r) - 1 >= dy and r:
            c = r[-1]
            shift = len(r) - 1 - dy
            r = [v * lead for v in r]
            for j, w in enumerate(y):
                r[shift + j] -= c * w
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        if r:
            g = 0
            for v in r:
                g = gcd(g, v)
            r = [v // g for v in r]
            if len(r) == 1:
                return Poly._raw((Fraction(1),))
        x, y = y, r
    lc = x[-1]
    return Poly._raw(tuple(Fraction(v, lc) for v in x))


def substitute(p: Poly, q: Poly) -> Poly:
    """Polynomial composition ``p(q(t))``."""
    acc = Poly._raw(())
    for c in reversed(p.coeffs):
        acc = acc * q + c
    return acc


def _fmt_rational(c: Fraction) -> str:
    return str(c)


def render_poly(p: Poly) -> str:
    """Render with descending exponents, e.g. ``3*t^2 - 1/2``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = _fmt_rational(mag)
        else:
            mono = "t" if k == 1 else f"t^{k}"
            body = mono if mag == 1 else f"{_fmt_rational(mag)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class RatFunc:
    """Element of Q(t) in lowest terms with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _as_poly(num) if not isinstance(num, Poly) else num
        if num is None:
            raise TypeError("numerator must be a Poly or rational")
        if den is None:
            den = Poly._raw((Fraction(1),))
        else:
            den = _as_poly(den) if not isinstance(den, Poly) else den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls._raw(p, _ONE_POLY)

    @classmethod
    def constant(cls, c) -> "RatFunc":
        return cls._raw(Poly._raw((as_rational(c),)), _ONE_POLY)

    # -- queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and len(self.num.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self == _coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({render_ratfunc(self)!r})"

    def __str__(self):
        return render_ratfunc(self)

    # -- field operations ------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            if self.den.is_one():
                return RatFunc._raw(self.num + other.num, _ONE_POLY)
            num, den = _normalize(self.num + other.num, self.den)
            return RatFunc._raw(num, den)
        if self.den.is_one() or other.den.is_one():
            num = self.num * other.den + other.num * self.den
            return RatFunc._raw(*_normalize(num, self.den * other.den))
        # Henrici: with g = gcd(d1, d2) only gcd(num, g) can cancel
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            return RatFunc._raw(num, self.den * other.den)
        d1, d2 = self.den // g, other.den // g
        num = self.num * d2 + other.num * d1
        if num.is_zero():
            return ZERO
        h = poly_gcd(num, g)
        if not h.is_one():
            num, g = num // h, g // h
        return RatFunc._raw(num, d1 * d2 * g)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return RatFunc._raw(self.num * Fraction(other), self.den)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num * other.num, _ONE_POLY)
        # cross-cancel before multiplying keeps intermediate degrees small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = (self.num // g1, other.den // g1) if not g1.is_one() else (self.num, other.den)
        n2, d1 = (other.num // g2, self.den // g2) if not g2.is_one() else (other.num, self.den)
        num, den = n1 * n2, d1 * d2
        if num.is_zero():
            return ZERO
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc._raw(*_normalize(self.den, self.num))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    def derivative(self) -> "RatFunc":
        """d/dt by the quotient rule."""
        if self.den.is_one():
            return RatFunc._raw(self.num.derivative(), _ONE_POLY)
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RatFunc(num, self.den * self.den)

    def __call__(self, r):
        d = self.den(r)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at t = {r}")
        return self.num(r) / d


def _normalize(num: Poly, den: Poly):
    if num.is_zero():
        return num, _ONE_POLY
    if den.is_one():
        return num, den
    g = poly_gcd(num, den)
    if not g.is_one():
        num, den = num // g, den // g
    lc = den.lc
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return num, den


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc._raw(x, _ONE_POLY)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RatFunc._raw(Poly._raw((Fraction(x),)), _ONE_POLY)
    return None


def render_ratfunc(r: RatFunc) -> str:
    """Wire format ``(3*t^2 - 1/2)/(t + 1)``; the denominator is omitted when 1."""
    num = render_poly(r.num)
    if r.den.is_one():
        return num
    den = render_poly(r.den)
    if len([c for c in r.num.coeffs if c]) > 1 or "/" in num:
        num = f"({num})"
    if len([c for c in r.den.coeffs if c]) > 1 or "*" in den or "/" in den:
        den = f"({den})"
    return f"{num}/{den}"


_ONE_POLY = Poly._raw((Fraction(1),))
T = RatFunc._raw(Poly._raw((Fraction(0), Fraction(1))), _ONE_POLY)
ONE = RatFunc._raw(_ONE_POLY, _ONE_POLY)
ZERO = RatFunc._raw(Poly._raw(()), _ONE_POLY)


def ratfunc(value) -> RatFunc:
    """Coerce ints, Fractions and polynomials into Q(t)."""
    r = _coerce(value if not isinstance(value, str) else as_rational(value))
    if r is None:
        raise TypeError(f"cannot interpret {value!r} as an element of Q(t)")
    return r


Scalar = Union[int, Fraction]
