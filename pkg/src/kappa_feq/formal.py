"""Formal generalized polynomials in one variable ``x``.

A term is ``coeff * x^p * S(x^e1, ..., x^er)`` where ``S`` is an opaque
symmetric multiadditive symbol: the unknown form ``A`` (arity n, slots holding
``x^2``, ``x`` or ``1``), an additive ``a``, a bi-additive ``B`` and so on.
The degree of a term is ``p + e1 + ... + er``.  Scalars are always pulled out
of slots, so ``A(2x, 1, 1)`` is stored as ``2 * A(x, 1, 1)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Callable, Iterable, Mapping, Optional

from .exact import as_rational

__all__ = [
    "Atom",
    "FormalTerm",
    "FormalPoly",
    "InductionOrderError",
    "extend_multilinear",
    "render_atom",
]


class InductionOrderError(ValueError):
    """A rewrite needed a diagonal that has not been determined yet."""


@dataclass(frozen=True, order=True)
class Atom:
    """Symbol applied to monomial arguments; ``args`` are exponents of ``x``, sorted descending."""

    symbol: str
    args: tuple

    @classmethod
    def of(cls, symbol: str, *exponents: int) -> "Atom":
        return cls(symbol, tuple(sorted(exponents, reverse=True)))

    @property
    def degree(self) -> int:
        return sum(self.args)

    @property
    def live(self) -> tuple:
        """Exponents of the slots not holding the constant 1."""
        return tuple(e for e in self.args if e)

    def has_constant_slot(self) -> bool:
        return 0 in self.args

    @property
    def slots(self) -> tuple:
        """``(c2, c1, c0)``: numbers of ``x^2``, ``x`` and ``1`` arguments."""
        c = Counter(self.args)
        if set(c) - {0, 1, 2}:
            raise ValueError(f"{self} has arguments outside {{x^2, x, 1}}")
        return (c[2], c[1], c[0])

    def __str__(self):
        return render_atom(self)


def _render_power(e: int) -> str:
    return "1" if e == 0 else "x" if e == 1 else f"x^{e}"


def render_atom(atom: Atom) -> str:
    return f"{atom.symbol}({', '.join(_render_power(e) for e in atom.args)})"


@dataclass(frozen=True)
class FormalTerm:
    coeff: Fraction
    outer_pow: int
    atom: Atom

    @property
    def degree(self) -> int:
        return self.outer_pow + self.atom.degree

    @property
    def slots(self) -> tuple:
        return self.atom.slots


def _term_order(key):
    p, atom = key
    return (-(p + atom.degree), atom.symbol, tuple(-e for e in atom.args), p)


class FormalPoly:
    """Canonical sum of :class:`FormalTerm`, merged on ``(outer_pow, atom)``."""

    __slots__ = ("_data",)

    def __init__(self, data: Mapping = None):
        clean = {}
        for key, c in (data or {}).items():
            c = as_rational(c)
            if c:
                clean[key] = c
        self._data = clean

    @classmethod
    def from_terms(cls, terms: Iterable) -> "FormalPoly":
        acc = {}
        for t in terms:
            if isinstance(t, FormalTerm):
                key, c = (t.outer_pow, t.atom), t.coeff
            else:
                c, p, atom = t
                key = (p, atom)
            acc[key] = acc.get(key, Fraction(0)) + as_rational(c)
        return cls(acc)

    @classmethod
    def atom(cls, atom: Atom, coeff=1, outer_pow: int = 0) -> "FormalPoly":
        return cls({(outer_pow, atom): coeff})

    @property
    def terms(self) -> tuple:
        return tuple(
            FormalTerm(self._data[k], k[0], k[1]) for k in sorted(self._data, key=_term_order)
        )

    def items(self):
        return self._data.items()

    def coeff(self, atom: Atom, outer_pow: int = 0) -> Fraction:
        return self._data.get((outer_pow, atom), Fraction(0))

    def is_zero(self) -> bool:
        return not self._data

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        if not isinstance(other, FormalPoly):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    def __add__(self, other):
        acc = dict(self._data)
        for k, c in other._data.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return FormalPoly(acc)

    def __neg__(self):
        return FormalPoly({k: -c for k, c in self._data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_rational(c)
        return FormalPoly({k: v * c for k, v in self._data.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / as_rational(c))

    def times_x(self, q: int) -> "FormalPoly":
        return FormalPoly({(p + q, a): c for (p, a), c in self._data.items()})

    def degrees(self) -> set:
        return {p + a.degree for p, a in self._data}

    def collect_degree(self, k: int) -> "FormalPoly":
        return FormalPoly({key: c for key, c in self._data.items() if key[0] + key[1].degree == k})

    def filter(self, keep: Callable[[FormalTerm], bool]) -> "FormalPoly":
        return FormalPoly.from_terms(t for t in self.terms if keep(t))

    def symbols(self) -> set:
        return {a.symbol for _, a in self._data}

    def rewrite(self, rule: Callable[[Atom], Optional["FormalPoly"]]) -> "FormalPoly":
        """Replace each atom by ``rule(atom)`` (``None`` keeps it)."""
        out = FormalPoly()
        for (p, atom), c in self._data.items():
            image = rule(atom)
            if image is None:
                image = FormalPoly.atom(atom)
            out = out + image.times_x(p) * c
        return out

    def shift(self, vanishing: Callable[[Atom], bool] = None) -> "FormalPoly":
        """Substitute ``x -> x + 1`` using multiadditivity of every symbol.

        ``S((x+1)^e1, ...) = sum prod C(ei, ui) S(x^u1, ...)``.  Atoms for which
        ``vanishing`` returns true after expansion are dropped.
        """
        acc = {}
        for (p, atom), c in self._data.items():
            for q in range(p + 1):
                cq = c * comb(p, q)
                for exps, mult in _binomial_expansions(atom.args):
                    new = Atom.of(atom.symbol, *exps)
                    if vanishing is not None and vanishing(new):
                        continue
                    key = (q, new)
                    acc[key] = acc.get(key, Fraction(0)) + cq * mult
        return FormalPoly(acc)

    def difference_one(self, vanishing: Callable[[Atom], bool] = None) -> "FormalPoly":
        """``Delta_1``: shifted minus original."""
        base = self if vanishing is None else self.filter(lambda t: not vanishing(t.atom))
        return self.shift(vanishing) - base

    def square_argument(self) -> "FormalPoly":
        """Substitute ``x -> x^2``."""
        return FormalPoly(
            {(2 * p, Atom(a.symbol, tuple(2 * e for e in a.args))): c for (p, a), c in self._data.items()}
        )

    def content(self) -> Fraction:
        """Positive rational ``g`` with ``self / g`` primitive over Z."""
        if not self._data:
            return Fraction(1)
        num = 0
        den = 1
        for c in self._data.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def cleared(self) -> "FormalPoly":
        """Integer-primitive multiple keeping the derived orientation."""
        return self / self.content()

    def leading(self) -> Optional[FormalTerm]:
        t = self.terms
        return t[0] if t else None

    def normalized(self) -> "FormalPoly":
        """Scaled so the leading term (highest degree first) has coefficient 1."""
        lead = self.leading()
        return self if lead is None else self / lead.coeff

    def vector(self, basis: Iterable) -> tuple:
        """Coefficients on ``basis`` given as ``(outer_pow, atom)`` pairs."""
        return tuple(self._data.get(tuple(b), Fraction(0)) for b in basis)

    def __repr__(self):
        return f"FormalPoly({str(self)!r})"

    def __str__(self):
        return render_formal(self)


def _binomial_expansions(args: tuple):
    """Yield ``(exponents, multiplicity)`` for ``prod_i (x+1)^args[i]`` split slotwise."""
    out = [((), 1)]
    for e in args:
        nxt = []
        for exps, mult in out:
            for u in range(e + 1):
                nxt.append((exps + (u,), mult * comb(e, u)))
        out = nxt
    return out


def render_term(coeff: Fraction, p: int, atom: Atom) -> str:
    body = []
    if p:
        body.append(_render_power(p))
    body.append(render_atom(atom))
    mono = "*".join(body)
    mag = abs(coeff)
    return mono if mag == 1 else f"{mag}*{mono}"


def render_formal(poly: FormalPoly) -> str:
    terms = poly.terms
    if not terms:
        return "0"
    out = ""
    for i, t in enumerate(terms):
        body = render_term(t.coeff, t.outer_pow, t.atom)
        if i == 0:
            out = ("-" if t.coeff < 0 else "") + body
        else:
            out += (" - " if t.coeff < 0 else " + ") + body
    return out


# -- multilinear extension ----------------------------------------------------

def _compositions(total: int, caps: tuple):
    if not caps:
        if total == 0:
            yield ()
        return
    first, rest = caps[0], caps[1:]
    for k in range(min(total, first) + 1):
        for tail in _compositions(total - k, rest):
            yield (k,) + tail


def _distribute(classes: list, caps: tuple):
    """Spread a multiset of exponents over groups of fixed sizes.

    Yields ``(group_sums, multiplicity)`` where the multiplicity counts
    labelled assignments of the individual (distinguishable) arguments.
    """
    if not classes:
        yield (0,) * len(caps), 1
        return
    (value, count), rest = classes[0], classes[1:]
    for parts in _compositions(count, caps):
        mult = factorial(count)
        for k in parts:
            mult //= factorial(k)
        left = tuple(c - k for c, k in zip(caps, parts))
        for sums, m in _distribute(rest, left):
            yield tuple(s + value * k for s, k in zip(sums, parts)), mult * m


def extend_multilinear(row: FormalPoly, args: Iterable[int]) -> FormalPoly:
    """Evaluate the symmetric multilinear extension of a known diagonal.

    ``row`` is the diagonal ``U(x)`` of a symmetric ``l``-additive map written
    as a sum of terms ``x^p * S(x^e1, ..)`` with ``p + sum(e) = l``.  The
    extension of such a term is the average over all ways of handing the
    ``l`` arguments to the ``p`` outer factors and to the slots of ``S`` (slot
    ``i`` takes ``e_i`` arguments and multiplies them).  ``args`` are the
    exponents of the monomial arguments, e.g. ``(2, 1)`` for ``(x^2, x)``.
    """
    args = tuple(args)
    if any(e < 1 for e in args):
        raise ValueError("extension arguments must be positive powers of x")
    l = len(args)
    classes = sorted(Counter(args).items(), reverse=True)
    out = {}
    for (p, atom), c in row.items():
        live = atom.live
        constants = len(atom.args) - len(live)
        if p + sum(live) != l:
            raise InductionOrderError(
                f"row term x^{p}*{atom} has degree {p + sum(live)}, expected {l}"
            )
        sizes = (p,) + live
        total = factorial(l)
        for s in sizes:
            total //= factorial(s)
        for sums, mult in _distribute(classes, sizes):
            new = Atom.of(atom.symbol, *(sums[1:] + (0,) * constants))
            key = (sums[0], new)
            out[key] = out.get(key, Fraction(0)) + c * Fraction(mult, total)
    return FormalPoly(out)
