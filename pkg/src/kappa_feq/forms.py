"""Structured symmetric multiadditive forms on Q(t).

A :class:`SymForm` of arity ``n`` is a rational combination of block patterns.
A pattern partitions the slots ``1..n`` into blocks and attaches an additive
map to each block; its raw value is the product over blocks of the map applied
to the product of the block's arguments.  Evaluation averages the raw value
over all ``n!`` slot permutations, so every form is symmetric by construction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .additive import D, ID, AdditiveMap, apply
from .exact import ONE, ZERO, RatFunc, as_rational, ratfunc

__all__ = [
    "ArityError",
    "BlockPattern",
    "SymForm",
    "evaluate",
    "trace",
    "partial_trace",
    "b4_lift",
    "s_constraint_defect",
    "monomial_form",
    "product_form",
    "derivation_power_form",
    "mixed_power_form",
    "lambda_family_form",
    "random_form",
]


class ArityError(ValueError):
    """Wrong number of arguments or slots for a form."""


@dataclass(frozen=True, order=True)
class BlockPattern:
    """Partition of slots ``1..arity`` with an additive map per block.

    ``blocks`` is a tuple of ``(slots, map)`` pairs; patterns are stored in a
    canonical relabelling (blocks sorted by size then map, slots numbered
    consecutively), which is harmless because evaluation symmetrizes.
    """

    arity: int
    blocks: tuple

    @classmethod
    def build(cls, blocks: Iterable) -> "BlockPattern":
        blocks = [(tuple(sorted(int(s) for s in slots)), m) for slots, m in blocks]
        seen = sorted(s for slots, _ in blocks for s in slots)
        if not blocks or any(not slots for slots, _ in blocks):
            raise ArityError("every block needs at least one slot")
        n = len(seen)
        if seen != list(range(1, n + 1)):
            dup = sorted({s for s in seen if seen.count(s) > 1})
            missing = sorted(set(range(1, max(seen) + 1)) - set(seen))
            raise ArityError(
                f"slots must cover 1..{max(seen)} exactly once"
                + (f"; repeated {dup}" if dup else "")
                + (f"; missing {missing}" if missing else "")
            )
        shapes = sorted((len(slots), m) for slots, m in blocks)
        out, nxt = [], 1
        for size, m in shapes:
            out.append((tuple(range(nxt, nxt + size)), m))
            nxt += size
        return cls(n, tuple(out))

    @property
    def sizes(self):
        return tuple(len(slots) for slots, _ in self.blocks)

    def maps(self):
        return [m for _, m in self.blocks]


class SymForm:
    """Symmetric ``arity``-additive form ``sum coeff * pattern``."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Iterable = ()):
        if arity < 1:
            raise ArityError("arity must be positive")
        merged = {}
        for coeff, pattern in terms:
            if pattern.arity != arity:
                raise ArityError(
                    f"pattern of arity {pattern.arity} in a form of arity {arity}"
                )
            coeff = as_rational(coeff)
            if any(m.is_zero() for m in pattern.maps()):
                continue
            # pull each map's leading scalar into the coefficient
            if any(m.support[0][1] != 1 for m in pattern.maps()):
                blocks = []
                for slots, m in pattern.blocks:
                    lead = m.support[0][1]
                    coeff *= lead
                    blocks.append((slots, m * (1 / lead)))
                pattern = BlockPattern.build(blocks)
            merged[pattern] = merged.get(pattern, Fraction(0)) + coeff
        self.arity = arity
        self.terms = tuple(
            (c, p) for p, c in sorted(merged.items(), key=lambda kv: kv[0]) if c
        )

    def __eq__(self, other):
        if not isinstance(other, SymForm):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, self.terms))

    def __add__(self, other):
        if not isinstance(other, SymForm):
            return NotImplemented
        if other.arity != self.arity:
            raise ArityError(f"cannot add forms of arity {self.arity} and {other.arity}")
        return SymForm(self.arity, self.terms + other.terms)

    def __neg__(self):
        return SymForm(self.arity, [(-c, p) for c, p in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymForm(self.arity, [(c * other, p) for c, p in self.terms])
        if isinstance(other, SymForm):
            return self.tensor(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def tensor(self, other: "SymForm") -> "SymForm":
        """Slot-disjoint product; arities add."""
        n1 = self.arity
        terms = []
        for c1, p1 in self.terms:
            for c2, p2 in other.terms:
                blocks = list(p1.blocks) + [
                    (tuple(s + n1 for s in slots), m) for slots, m in p2.blocks
                ]
                terms.append((c1 * c2, BlockPattern.build(blocks)))
        return SymForm(n1 + other.arity, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def maps(self):
        return {m for _, p in self.terms for m in p.maps()}

    def __call__(self, *args):
        return evaluate(self, args)

    def __repr__(self):
        return f"SymForm({str(self)!r})"

    def __str__(self):
        from .parser import render_form

        return render_form(self)


def _labelled_partitions(indices: tuple, sizes: tuple):
    """Yield tuples of index groups, one per requested size, in order."""
    if not sizes:
        yield ()
        return
    first, rest = sizes[0], sizes[1:]
    for group in itertools.combinations(indices, first):
        remaining = tuple(i for i in indices if i not in group)
        for tail in _labelled_partitions(remaining, rest):
            yield (group,) + tail


def _check_args(F: SymForm, args):
    if len(args) != F.arity:
        raise ArityError(f"form of arity {F.arity} given {len(args)} arguments")
    return [ratfunc(a) if not isinstance(a, RatFunc) else a for a in args]


def evaluate(F: SymForm, args: Sequence) -> RatFunc:
    """Average of the raw pattern values over all slot permutations.

    Permutations differing only inside a block give the same product, so the
    sum runs over labelled partitions of the arguments with multiplicity
    ``prod(size!)``.
    """
    args = _check_args(F, args)
    n = F.arity
    if all(a == args[0] for a in args[1:]):
        return _trace_value(F, args[0])
    idx = tuple(range(n))
    memo = {}
    total = ZERO
    for coeff, pattern in F.terms:
        sizes = pattern.sizes
        weight = Fraction(1, factorial(n))
        for s in sizes:
            weight *= factorial(s)
        acc = ZERO
        for groups in _labelled_partitions(idx, sizes):
            val = ONE
            for group, (_, m) in zip(groups, pattern.blocks):
                key = (m, group)
                if key not in memo:
                    prod = ONE
                    for i in group:
                        prod = prod * args[i]
                    memo[key] = apply(m, prod)
                v = memo[key]
                if v.is_zero():
                    val = ZERO
                    break
                val = val * v
            acc = acc + val
        total = total + acc * (coeff * weight)
    return total


def _trace_value(F: SymForm, x: RatFunc) -> RatFunc:
    powers = {}
    total = ZERO
    for coeff, pattern in F.terms:
        val = ONE
        for slots, m in pattern.blocks:
            k = len(slots)
            if k not in powers:
                powers[k] = x ** k
            v = apply(m, powers[k])
            if v.is_zero():
                val = ZERO
                break
            val = val * v
        total = total + val * coeff
    return total


def trace(F: SymForm, x) -> RatFunc:
    """``F(x, ..., x)``."""
    return _trace_value(F, ratfunc(x))


def partial_trace(F: SymForm, k: int, x) -> RatFunc:
    """``F([x]_k, [1]_(n-k))``."""
    if not 0 <= k <= F.arity:
        raise ArityError(f"k={k} outside 0..{F.arity}")
    x = ratfunc(x)
    return evaluate(F, [x] * k + [ONE] * (F.arity - k))


def b4_lift(B: SymForm) -> SymForm:
    """4-additive form with ``B4(x1..x4) = (B(x1x2, x3x4) + B(x1x3, x2x4) + B(x1x4, x2x3)) / 3``.

    Slot 1 of each pattern becomes slots {1, 2} and slot 2 becomes {3, 4};
    symmetrizing over S_4 then averages over the three pairings.
    """
    if B.arity != 2:
        raise ArityError(f"b4_lift needs a bi-additive form, got arity {B.arity}")
    terms = []
    for c, p in B.terms:
        blocks = []
        for slots, m in p.blocks:
            lifted = []
            for s in slots:
                lifted.extend((2 * s - 1, 2 * s))
            blocks.append((tuple(lifted), m))
        terms.append((c, BlockPattern.build(blocks)))
    return SymForm(4, terms)


def s_constraint_defect(F: SymForm, args: Sequence) -> RatFunc:
    """Sum over S_(n+1) of ``F(x1 x2, x3, ...) - x1 F(x2, ...) - x2 F(x1, x3, ...)`` (indices permuted).

    By symmetry of ``F`` this equals
    ``2 (n-1)! sum_{i<j} F(xi xj, rest) - 2 n! sum_i xi F(args without i)``.
    """
    n = F.arity
    if len(args) != n + 1:
        raise ArityError(f"constraint for arity {n} needs {n + 1} arguments, got {len(args)}")
    xs = [ratfunc(a) for a in args]
    paired = ZERO
    for i, j in itertools.combinations(range(n + 1), 2):
        rest = [xs[k] for k in range(n + 1) if k not in (i, j)]
        paired = paired + evaluate(F, [xs[i] * xs[j]] + rest)
    single = ZERO
    for i in range(n + 1):
        if xs[i].is_zero():
            continue
        rest = [xs[k] for k in range(n + 1) if k != i]
        single = single + xs[i] * evaluate(F, rest)
    return paired * (2 * factorial(n - 1)) - single * (2 * factorial(n))


# -- constructors -------------------------------------------------------------

def product_form(maps: Sequence[AdditiveMap], coeff=1) -> SymForm:
    """``coeff * m1(x1) * ... * mn(xn)`` symmetrized."""
    pattern = BlockPattern.build([((i + 1,), m) for i, m in enumerate(maps)])
    return SymForm(len(maps), [(coeff, pattern)])


def monomial_form(n: int, coeff=1) -> SymForm:
    """``coeff * x1 * ... * xn``; its trace is ``coeff * x^n``."""
    return product_form([ID] * n, coeff)


def derivation_power_form(n: int, a: AdditiveMap = D) -> SymForm:
    """``a(x1) ... a(xn)``, trace ``a(x)^n``."""
    return product_form([a] * n)


def mixed_power_form(n: int, k: int, a: AdditiveMap = D) -> SymForm:
    """Form with trace ``x^(n-k) * a(x)^k``."""
    return product_form([ID] * (n - k) + [a] * k)


def lambda_family_form(lambdas: Sequence, a: AdditiveMap = D) -> SymForm:
    """Form with trace ``sum_j lambdas[j-1] * x^(n-j) * a(x^j)``, ``n = len(lambdas)``."""
    n = len(lambdas)
    terms = []
    for j, lam in enumerate(lambdas, start=1):
        blocks = [((i,), ID) for i in range(1, n - j + 1)]
        blocks.append((tuple(range(n - j + 1, n + 1)), a))
        terms.append((as_rational(lam), BlockPattern.build(blocks)))
    return SymForm(n, terms)


_RANDOM_MAPS = (
    ID,
    D,
    D ** 2,
    D - Fraction(1, 2) * D ** 2,
    2 * ID + D,
    D ** 3,
)
_RANDOM_COEFFS = tuple(Fraction(p, q) for p in (-3, -2, -1, 1, 2, 5) for q in (1, 2, 3))


def _random_set_partition(rng: random.Random, n: int):
    blocks = []
    for s in range(1, n + 1):
        k = rng.randrange(len(blocks) + 1)
        if k == len(blocks):
            blocks.append([s])
        else:
            blocks[k].append(s)
    return blocks


def random_form(rng: random.Random, max_arity: int = 4, max_terms: int = 3, arity: int = None) -> SymForm:
    """Seeded random structured form for property checks."""
    n = arity or rng.randint(1, max_arity)
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        blocks = [(b, rng.choice(_RANDOM_MAPS)) for b in _random_set_partition(rng, n)]
        terms.append((rng.choice(_RANDOM_COEFFS), BlockPattern.build(blocks)))
    return SymForm(n, terms)
