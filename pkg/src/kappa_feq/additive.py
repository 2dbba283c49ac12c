"""Additive maps on Q(t) spanned by the identity and powers of D = d/dt."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Optional, Sequence

from .exact import ONE, T, ZERO, RatFunc, as_rational, ratfunc

__all__ = [
    "AdditiveMap",
    "CheckResult",
    "DEFAULT_SAMPLES",
    "ID",
    "D",
    "apply",
    "compose",
    "leibniz_defect",
    "order_certify",
    "order_identity_coeffs",
    "recursive_order_probe",
]


def _default_samples():
    t = T
    return (
        t,
        t + 1,
        t ** 2,
        t ** 3 - 2,
        1 / (t + 1),
        (t ** 2 + 1) / (t - 3),
        ratfunc(2),
        ratfunc(Fraction(1, 2)),
        ratfunc(-1),
    )


#: Mixed polynomial / proper-rational probe points used by every identity check.
DEFAULT_SAMPLES: tuple = _default_samples()


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a sample-based identity check.

    Truthiness follows ``ok``.  On failure ``sample`` is the first failing
    input and ``residual`` the nonzero value found there.
    """

    ok: bool
    sample: object = None
    residual: Optional[RatFunc] = None
    checked: int = 0
    label: str = "holds on sample set"

    def __bool__(self):
        return self.ok


@lru_cache(maxsize=65536)
def _nth_derivative(p: RatFunc, k: int) -> RatFunc:
    if k == 0:
        return p
    return _nth_derivative(p, k - 1).derivative()


class AdditiveMap:
    """Finite Q-linear combination ``sum c_k D^k`` (``D^0`` is the identity).

    >>> str(AdditiveMap({1: 1, 2: Fraction(-1, 2)}))
    'D - 1/2*D^2'
    """

    __slots__ = ("support", "_hash")

    def __init__(self, support: Mapping[int, object] = None):
        clean = {}
        for k, c in (support or {}).items():
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"derivative order must be a non-negative int, got {k!r}")
            c = as_rational(c)
            if c:
                clean[k] = clean.get(k, Fraction(0)) + c
        self.support = tuple(sorted((k, c) for k, c in clean.items() if c))
        self._hash = None

    @classmethod
    def derivative_power(cls, k: int, c=1) -> "AdditiveMap":
        return cls({k: c})

    @property
    def max_order(self) -> int:
        return self.support[-1][0] if self.support else 0

    def is_zero(self) -> bool:
        return not self.support

    def is_derivation_basis(self) -> bool:
        """True when the map is a single pure power D^k with k >= 1."""
        return len(self.support) == 1 and self.support[0][0] >= 1

    def __eq__(self, other):
        if not isinstance(other, AdditiveMap):
            return NotImplemented
        return self.support == other.support

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("AdditiveMap", self.support))
        return self._hash

    def __lt__(self, other):
        return self.support < other.support

    def __add__(self, other):
        if not isinstance(other, AdditiveMap):
            return NotImplemented
        merged = dict(self.support)
        for k, c in other.support:
            merged[k] = merged.get(k, 0) + c
        return AdditiveMap(merged)

    def __neg__(self):
        return AdditiveMap({k: -c for k, c in self.support})

    def __sub__(self, other):
        if not isinstance(other, AdditiveMap):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, AdditiveMap):
            return compose(self, c)
        if isinstance(c, (int, Fraction)):
            return AdditiveMap({k: v * c for k, v in self.support})
        return NotImplemented

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self * c
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("map powers need a non-negative integer")
        out = ID
        for _ in range(e):
            out = compose(out, self)
        return out

    def __call__(self, p) -> RatFunc:
        return apply(self, p)

    def __repr__(self):
        return f"AdditiveMap({str(self)!r})"

    def __str__(self):
        from .parser import render_map

        return render_map(self)


ID = AdditiveMap({0: 1})
D = AdditiveMap({1: 1})


def apply(a: AdditiveMap, p) -> RatFunc:
    """Evaluate ``a`` at ``p``; ``D`` acts by the quotient rule."""
    p = ratfunc(p) if not isinstance(p, RatFunc) else p
    out = ZERO
    for k, c in a.support:
        out = out + _nth_derivative(p, k) * c
    return out


def compose(a: AdditiveMap, b: AdditiveMap) -> AdditiveMap:
    """``a o b``; orders add because D^i o D^j = D^(i+j)."""
    out = {}
    for i, ci in a.support:
        for j, cj in b.support:
            out[i + j] = out.get(i + j, 0) + ci * cj
    return AdditiveMap(out)


def leibniz_defect(a: AdditiveMap, x, y) -> RatFunc:
    """``a(xy) - x a(y) - y a(x)``."""
    x, y = ratfunc(x), ratfunc(y)
    return apply(a, x * y) - x * apply(a, y) - y * apply(a, x)


def order_identity_coeffs(m: int) -> dict:
    """Coefficients of ``sum_j (-1)^j C(m+1, j) x^j a(x^(m+1-j))`` keyed by the exponent inside ``a``."""
    return {m + 1 - j: Fraction((-1) ** j * comb(m + 1, j)) for j in range(m + 2)}


def order_certify(a: AdditiveMap, m: int, samples: Sequence = DEFAULT_SAMPLES) -> CheckResult:
    """Check the order-``m`` derivation identity of ``a`` on ``samples``.

    The identity is ``sum_{j=0}^{m+1} (-1)^j C(m+1, j) x^j a(x^(m+1-j)) = 0``
    together with ``a(1) = 0``.  A pass is a falsification check on the
    sample set, not a proof.
    """
    if m < 1:
        raise ValueError("order must be at least 1")
    samples = [ratfunc(s) for s in samples]
    if not samples:
        raise ValueError("empty sample set")
    at_one = apply(a, ONE)
    if not at_one.is_zero():
        return CheckResult(False, ONE, at_one, 0)
    coeffs = order_identity_coeffs(m)
    for i, x in enumerate(samples):
        res = ZERO
        for e, c in coeffs.items():
            res = res + x ** (m + 1 - e) * apply(a, x ** e) * c
        if not res.is_zero():
            return CheckResult(False, x, res, i + 1)
    return CheckResult(True, checked=len(samples))


def recursive_order_probe(f, m: int, samples: Sequence = None, depth_samples: int = 4) -> bool:
    """Probe membership in D_m through the recursive Leibniz-defect definition.

    ``f`` is any callable Q(t) -> Q(t) assumed additive.  Order 0 means ``f``
    vanishes on the probe points; order ``m`` means every one-variable section
    ``x -> f(xy) - x f(y) - y f(x)`` has order ``m - 1``.  Independent of
    :func:`order_certify`; cost grows like ``(3 * depth_samples) ** m``.
    """
    if isinstance(f, AdditiveMap):
        f = f.__call__
    probes = [ratfunc(s) for s in (samples or DEFAULT_SAMPLES)]
    inner = probes[:depth_samples]

    def probe(g, k):
        if k == 0:
            return all(g(x).is_zero() for x in probes)
        for y in inner:
            gy = y_section(g, y)
            if not probe(gy, k - 1):
                return False
        return True

    def y_section(g, y):
        cache = {}

        def h(x):
            if x not in cache:
                cache[x] = g(x * y) - x * g(y) - y * g(x)
            return cache[x]

        return h

    return probe(f, m)
