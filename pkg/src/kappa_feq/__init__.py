"""Exact tools for the functional equation ``f(x^2) = kappa * x^n * f(x)``.

Rational functions in ``t`` over Q, additive maps built from ``D = d/dt``,
symmetric multiadditive forms, difference operators, and a formal engine that
runs the degree-by-degree induction behind the branch classification.
"""

from .additive import (
    D,
    DEFAULT_SAMPLES,
    ID,
    AdditiveMap,
    CheckResult,
    apply,
    compose,
    leibniz_defect,
    order_certify,
    recursive_order_probe,
)
from .classify import BRANCHES, Classification, classify, verify_solution
from .difference import SamplePool, delta, delta_iter, polarization_check, trace_function
from .engine import (
    IdentityCoeffs,
    LambdaTable,
    collect_degree,
    derive_recursion,
    expand_shifted,
    reduce_order_n3,
    residual_identity,
    run_induction,
    solve_lambda,
)
from .exact import T, Poly, RatFunc, poly_gcd
from .formal import Atom, FormalPoly, extend_multilinear
from .forms import ArityError, BlockPattern, SymForm, b4_lift, evaluate, partial_trace, s_constraint_defect, trace
from .kappa4 import kappa4_pipeline
from .parser import ParseError, parse_expr, parse_form, parse_map, parse_point_function, parse_ratfunc, render

__all__ = [
    "D",
    "DEFAULT_SAMPLES",
    "ID",
    "AdditiveMap",
    "CheckResult",
    "apply",
    "compose",
    "leibniz_defect",
    "order_certify",
    "recursive_order_probe",
    "BRANCHES",
    "Classification",
    "classify",
    "verify_solution",
    "SamplePool",
    "delta",
    "delta_iter",
    "polarization_check",
    "trace_function",
    "IdentityCoeffs",
    "LambdaTable",
    "collect_degree",
    "derive_recursion",
    "expand_shifted",
    "reduce_order_n3",
    "residual_identity",
    "run_induction",
    "solve_lambda",
    "T",
    "Poly",
    "RatFunc",
    "poly_gcd",
    "Atom",
    "FormalPoly",
    "extend_multilinear",
    "ArityError",
    "BlockPattern",
    "SymForm",
    "b4_lift",
    "evaluate",
    "partial_trace",
    "s_constraint_defect",
    "trace",
    "kappa4_pipeline",
    "ParseError",
    "parse_expr",
    "parse_form",
    "parse_map",
    "parse_point_function",
    "parse_ratfunc",
    "render",
]

__version__ = "0.1.0"
