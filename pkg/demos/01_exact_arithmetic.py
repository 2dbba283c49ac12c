"""Rational functions in t over Q: arithmetic, substitution, derivatives."""

from kappa_feq import T, poly_gcd
from kappa_feq.parser import parse_ratfunc, render

r = parse_ratfunc("(t^2 - 1)/(t^2 + 2*t + 1)")
print("reduced:", render(r))  # common factor t + 1 cancels

s = r + 1 / (T - 1)
print("sum:", render(s))
print("at t = 3:", s(3))
print("substitute t -> t^2:", render(r(T ** 2)))
print("derivative:", render(r.derivative()))

p, q = (T ** 3 - T).num, (T ** 2 - 1).num
print("gcd(t^3 - t, t^2 - 1):", render(poly_gcd(p, q)))

try:
    r / (T - T)  # noqa
except ZeroDivisionError as exc:
    print("division by zero is an error:", exc)
