"""Symmetric multiadditive forms, their traces, and the polarization formula."""

import random

from kappa_feq import SamplePool, evaluate, polarization_check, trace
from kappa_feq.exact import T
from kappa_feq.forms import random_form
from kappa_feq.parser import parse_form, render

F = parse_form("9*id({1})*id({2})*D({3}) - 9/2*id({1})*D({2,3}) + D({1,2,3})")
print("F =", render(F))
print("F(t, t^2, 1/t) =", render(evaluate(F, [T, T ** 2, 1 / T])))
print("trace at t:", render(trace(F, T)))

# symmetric: any permutation of the arguments gives the same value
assert evaluate(F, [T ** 2, 1 / T, T]) == evaluate(F, [T, T ** 2, 1 / T])

# the trace determines the form through iterated differences
print("polarization holds:", bool(polarization_check(F, trials=10, pool=SamplePool(1))))

rng = random.Random(3)
for _ in range(3):
    G = random_form(rng, max_arity=3)
    res = polarization_check(G, trials=5, pool=SamplePool(2))
    print(f"  {render(G)}: {'ok' if res else res.failure}")
