"""Shared test helpers.

sympy serves as the independent oracle: rational functions are converted to
sympy expressions and compared after ``cancel``; additive maps are applied
with ``sympy.diff``; forms are evaluated by brute-force symmetrization over
every slot permutation.
"""

from __future__ import annotations

import itertools
import math
import random
import sys
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import settings

from kappa_feq.exact import Poly, RatFunc, ratfunc
from kappa_feq.forms import SymForm

t = sp.Symbol("t")

# sympy oracles are slow; exact results do not depend on timing
settings.register_profile("exact", deadline=None, derandomize=True)
settings.load_profile("exact")


def poly_to_sympy(p: Poly):
    return sum((sp.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(p.coeffs)), sp.Integer(0))


def to_sympy(r) -> sp.Expr:
    r = ratfunc(r)
    return poly_to_sympy(r.num) / poly_to_sympy(r.den)


def same(r, expr) -> bool:
    return sp.cancel(to_sympy(r) - sp.sympify(expr)) == 0


def apply_oracle(a, expr):
    out = sp.Integer(0)
    for k, c in a.support:
        out += sp.Rational(c.numerator, c.denominator) * sp.diff(expr, t, k)
    return out


def evaluate_oracle(F: SymForm, args) -> sp.Expr:
    """Average over all n! slot permutations, exactly as defined."""
    n = F.arity
    exprs = [to_sympy(a) for a in args]
    total = sp.Integer(0)
    for perm in itertools.permutations(range(n)):
        for c, pattern in F.terms:
            term = sp.Rational(c.numerator, c.denominator)
            for slots, m in pattern.blocks:
                prod = sp.Integer(1)
                for s in slots:
                    prod *= exprs[perm[s - 1]]
                term *= apply_oracle(m, prod)
            total += term
    return sp.cancel(total / math.factorial(n))


def random_ratfunc(rng: random.Random, max_deg: int = 3, allow_den: bool = True) -> RatFunc:
    def poly(deg):
        return Poly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(deg + 1)])

    num = poly(rng.randint(0, max_deg))
    if not allow_den or rng.random() < 0.5:
        return RatFunc(num)
    den = poly(rng.randint(1, 2))
    while den.is_zero():
        den = poly(rng.randint(1, 2))
    return RatFunc(num, den)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.SUMMARY:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.SUMMARY:
        terminalreporter.write_line(line)
