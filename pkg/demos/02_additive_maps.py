"""Additive maps built from D = d/dt and their derivation order."""

from kappa_feq import D, apply, compose, leibniz_defect, order_certify
from kappa_feq.exact import T
from kappa_feq.parser import parse_map, render

a = parse_map("D - 1/2*D^2")
print("a =", render(a))
print("a(t^3) =", render(apply(a, T ** 3)))
print("a o D =", render(compose(a, D)))

# D is a derivation; D^2 is not
print("Leibniz defect of D at (t, t^2):", render(leibniz_defect(D, T, T ** 2)))
print("Leibniz defect of D^2 at (t, t^2):", render(leibniz_defect(D ** 2, T, T ** 2)))

# D^k is a derivation of order exactly k
for k in range(1, 4):
    row = ["yes" if order_certify(D ** k, m) else "no " for m in range(1, 5)]
    print(f"D^{k} has order <= m for m = 1..4:", " ".join(row))

