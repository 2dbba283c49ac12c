"""Difference operators on point functions and the polarization check."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from math import factorial
from typing import Callable, Optional, Sequence

from .additive import DEFAULT_SAMPLES
from .exact import RatFunc, ratfunc
from .forms import SymForm, evaluate, trace

__all__ = [
    "PointFunction",
    "SamplePool",
    "PolarizationResult",
    "delta",
    "delta_iter",
    "trace_function",
    "polarization_check",
    "seed_from_env",
]

PointFunction = Callable[[RatFunc], RatFunc]

SEED_ENV = "KAPPA_FEQ_SEED"


def seed_from_env(default: int = 0) -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return default
    return int(raw)


def delta(f: PointFunction, y) -> PointFunction:
    """``x -> f(x + y) - f(x)``."""
    y = ratfunc(y)

    def stepped(x):
        x = ratfunc(x)
        return f(x + y) - f(x)

    return stepped


def delta_iter(f: PointFunction, ys: Sequence) -> PointFunction:
    """Left fold of :func:`delta` over ``ys``."""
    for y in ys:
        f = delta(f, y)
    return f


def _memoized(f: PointFunction) -> PointFunction:
    cache = {}

    def g(x):
        if x not in cache:
            cache[x] = f(x)
        return cache[x]

    return g


def trace_function(F: SymForm) -> PointFunction:
    return lambda x: trace(F, x)


class SamplePool:
    """Seeded, read-only pool of probe points.

    The pool holds the base samples plus small integer combinations
    ``s_i + c * s_j``; draws come from a private ``random.Random``.
    """

    def __init__(self, seed: int = 0, base: Sequence = DEFAULT_SAMPLES, combos: int = 12):
        self.seed = seed
        base = [ratfunc(s) for s in base]
        build = random.Random(seed)
        extra = []
        for _ in range(combos):
            a, b = build.sample(range(len(base)), 2)
            c = build.choice((-2, -1, 1, 2, 3))
            extra.append(base[a] + base[b] * c)
        self.points = tuple(base + extra)
        self._rng = random.Random(seed + 1)

    def draw(self, k: int) -> tuple:
        return tuple(self._rng.choice(self.points) for _ in range(k))


@dataclass(frozen=True)
class PolarizationResult:
    ok: bool
    trials: int
    x: Optional[RatFunc] = None
    ys: tuple = ()
    lhs: Optional[RatFunc] = None
    rhs: Optional[RatFunc] = None
    failure: str = ""

    def __bool__(self):
        return self.ok


def polarization_check(F: SymForm, trials: int = 50, pool: SamplePool = None) -> PolarizationResult:
    """Check ``D_{y1..yn} F*(x) = n! F(y1..yn)`` and that ``n + 1`` differences vanish."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pool = pool or SamplePool(seed_from_env())
    n = F.arity
    f = _memoized(trace_function(F))
    for _ in range(trials):
        x, *ys = pool.draw(n + 2)
        ys_n = tuple(ys[:n])
        lhs = delta_iter(f, ys_n)(x)
        rhs = evaluate(F, ys_n) * factorial(n)
        if lhs != rhs:
            return PolarizationResult(False, trials, x, ys_n, lhs, rhs, "n-fold difference")
        over = delta_iter(f, tuple(ys))(x)
        if not over.is_zero():
            return PolarizationResult(False, trials, x, tuple(ys), over, ratfunc(0), "(n+1)-fold difference")
    return PolarizationResult(True, trials)
