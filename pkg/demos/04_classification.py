"""Branches of f(x^2) = kappa * x^n * f(x) over a small grid."""

from fractions import Fraction

from kappa_feq import classify, solve_lambda, residual_identity, reduce_order_n3

kappas = [1, 2, 3, 4, 8, 16, Fraction(5, 2)]
print("n  " + "".join(f"{str(k):>18}" for k in kappas))
for n in range(1, 5):
    print(f"{n}  " + "".join(f"{classify(n, k).branch:>18}" for k in kappas))

c = classify(3, 2)
print()
print("kappa = 2, n = 3: order bound", c.order_bound)
print("lambda table:", solve_lambda(3).as_strings())
identity = residual_identity(3, solve_lambda(3))
print("residual identity:", identity.cleared().render())
red = reduce_order_n3(identity)
print("after one difference step:", red.result.render())
