"""The n = 3, kappa = 4 case: the elimination fails and a nonzero solution exists."""

from kappa_feq import kappa4_pipeline, verify_solution
from kappa_feq.kappa4 import B_BASIS_LABELS
from kappa_feq.parser import parse_form, parse_point_function, render
from kappa_feq.exact import T

full = kappa4_pipeline()

def vec(v):
    return "(" + ", ".join(map(str, v)) + ")"


print("degree-4 identities on basis", ", ".join(B_BASIS_LABELS))
print("  from g(x+1):       ", vec(full.eq_fourth))
print("  from the expansion:", vec(full.eq_fourth2))
print("  rank", full.rank, "->", full.verdict)

# the second identity is -3 times the first, so B(x^2, x^2) cannot be isolated.
# and indeed f(x) = x * D(x)^2 is a nonzero solution
F = parse_form("id({1})*D({2})*D({3})")
print("verify x*D(x)^2:", bool(verify_solution(3, 4, F)))
f = parse_point_function("x*D(x)^2")
x = T ** 2 + 1
print("f(x^2) - 4 x^3 f(x) at x = t^2 + 1:", render(f(x * x) - 4 * x ** 3 * f(x)))

# leaving out the A(x^2, x^2, 1) term produces an independent second identity
# and an elimination that would wrongly force f = 0
dropped = kappa4_pipeline(include_square_slot=False)
print()
print("without the A(x^2, x^2, 1) term:", vec(dropped.eq_fourth2), "combination", vec(dropped.combination))
