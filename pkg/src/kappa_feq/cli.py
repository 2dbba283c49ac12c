"""``kappa-feq`` command line.

Exit codes: 0 on success or a true verdict, 1 on a false verdict, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .additive import DEFAULT_SAMPLES, CheckResult, order_certify
from .classify import classify, verify_solution
from .difference import SamplePool, delta_iter, polarization_check, seed_from_env
from .engine import reduce_order_n3, residual_identity, solve_lambda
from .exact import render_ratfunc
from .forms import ArityError
from .kappa4 import kappa4_pipeline
from .parser import ParseError, parse_form, parse_map, parse_point_function, parse_ratfunc

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _rational(text: str):
    try:
        value = parse_ratfunc(text)
    except ParseError as exc:
        raise InputError(f"bad rational {text!r}: {exc}") from None
    if not value.is_constant():
        raise InputError(f"expected a rational number, got {text!r}")
    return value.constant_value()


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _load_samples(path: Optional[str]):
    if path is None:
        return DEFAULT_SAMPLES
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise InputError(f"cannot read samples file: {exc}") from None
    out = []
    for i, line in enumerate(lines, start=1):
        if not line or line.startswith("#"):
            continue
        try:
            out.append(parse_ratfunc(line))
        except ParseError as exc:
            raise InputError(f"{path}:{i}: {exc}") from None
    if not out:
        raise InputError(f"{path}: no samples")
    return tuple(out)


def _check_dict(res: CheckResult) -> dict:
    return {
        "ok": res.ok,
        "label": res.label,
        "checked": res.checked,
        "sample": None if res.ok else render_ratfunc(res.sample),
        "residual": None if res.ok else render_ratfunc(res.residual),
    }


def _check_text(res: CheckResult) -> str:
    if res.ok:
        return f"{res.label} ({res.checked} points)"
    return f"fails at x = {render_ratfunc(res.sample)}: residual {render_ratfunc(res.residual)}"


# -- verbs ---------------------------------------------------------------------------

def cmd_classify(args):
    c = classify(args.n, _rational(args.kappa))
    if args.json:
        return EXIT_OK, c.to_json()
    lines = [f"n = {c.n}, kappa = {c.kappa}: {c.branch}"]
    if c.order_bound is not None:
        lines.append(f"order bound: {c.order_bound}")
    if c.lambda_table is not None:
        lines.append("lambdas: " + ", ".join(str(v) for v in c.lambda_table[-1]))
    if c.residual_identity is not None:
        lines.append(f"residual identity: {c.residual_identity.render()}")
    if c.certificate is not None:
        lines.append(f"order certificate: {c.certificate.render()}")
    if c.constraint:
        lines.append(f"constraint: {c.constraint}")
    if c.obstruction is not None:
        lines.append(f"obstruction at k = {c.obstruction}")
    if c.witness:
        lines.append(f"nonzero solution: trace of {c.witness}")
    if c.note:
        lines.append(f"note: {c.note}")
    lines += ["derivation:"] + [f"  {s}" for s in c.derivation_log]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_lambdas(args):
    table = solve_lambda(args.n)
    if args.json:
        return EXIT_OK, _dump({"n": args.n, "lambda_table": table.as_strings()})
    lines = [f"k = {k}: " + ", ".join(str(c) for c in row) for k, row in enumerate(table.rows, start=1)]
    return EXIT_OK, "\n".join(lines) + "\n"


def _identity_dict(identity) -> dict:
    return {"degree": identity.degree, "coeffs": {str(j): str(c) for j, c in identity.coeffs}}


def cmd_residual(args):
    identity = residual_identity(args.n, solve_lambda(args.n))
    cleared = identity.cleared()
    if args.json:
        return EXIT_OK, _dump({"n": args.n, "residual_identity": _identity_dict(identity),
                               "cleared": _identity_dict(cleared)})
    return EXIT_OK, f"{identity.render()}\ncleared: {cleared.render()}\n"


def cmd_reduce_n3(args):
    red = reduce_order_n3(residual_identity(3, solve_lambda(3)))
    if args.json:
        return EXIT_OK, _dump({
            "source": _identity_dict(red.source),
            "delta": str(red.delta),
            "fourth": _identity_dict(red.fourth),
            "result": _identity_dict(red.result),
        })
    text = (
        f"identity: {red.source.render()}\n"
        f"Delta_1:  {red.delta} = 0\n"
        f"degree 4: {red.fourth.render()}\n"
        f"result:   {red.result.render()}\n"
    )
    return EXIT_OK, text


def cmd_kappa4(args):
    report = kappa4_pipeline(include_square_slot=not args.drop_square_slot)
    if args.json:
        return EXIT_OK, _dump(report.to_dict())
    lines = list(report.log) + [
        f"eq1 = ({', '.join(map(str, report.eq_fourth))})",
        f"eq2 = ({', '.join(map(str, report.eq_fourth2))})",
        f"rank = {report.rank}",
        f"verdict: {report.verdict}",
    ]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_verify(args):
    F = parse_form(args.form, arity=args.n)
    res = verify_solution(args.n, _rational(args.kappa), F, _load_samples(args.samples))
    code = EXIT_OK if res.ok else EXIT_FALSE
    if args.json:
        return code, _dump(_check_dict(res))
    return code, _check_text(res) + "\n"


def cmd_order_check(args):
    a = parse_map(args.map)
    res = order_certify(a, args.m, _load_samples(args.samples))
    code = EXIT_OK if res.ok else EXIT_FALSE
    if args.json:
        out = _check_dict(res)
        out.update(map=args.map, m=args.m)
        return code, _dump(out)
    return code, f"order {args.m}: " + _check_text(res) + "\n"


def cmd_polar_check(args):
    F = parse_form(args.form)
    base = _load_samples(args.samples)
    res = polarization_check(F, args.trials, SamplePool(seed_from_env(), base))
    code = EXIT_OK if res.ok else EXIT_FALSE
    if args.json:
        out = {"ok": res.ok, "trials": res.trials, "arity": F.arity}
        if not res.ok:
            out.update(
                failure=res.failure, x=render_ratfunc(res.x), ys=[render_ratfunc(y) for y in res.ys],
                lhs=render_ratfunc(res.lhs), rhs=render_ratfunc(res.rhs),
            )
        return code, _dump(out)
    if res.ok:
        return code, f"polarization holds on {res.trials} random tuples\n"
    return code, (
        f"{res.failure} fails at x = {render_ratfunc(res.x)}, "
        f"y = ({', '.join(render_ratfunc(y) for y in res.ys)}): "
        f"{render_ratfunc(res.lhs)} != {render_ratfunc(res.rhs)}\n"
    )


def cmd_delta_eval(args):
    f = parse_point_function(args.expr)
    ys = [parse_ratfunc(y) for y in args.increments]
    x = parse_ratfunc(args.at)
    value = delta_iter(f, ys)(x)
    if args.json:
        return EXIT_OK, _dump({
            "expr": args.expr, "increments": [render_ratfunc(y) for y in ys],
            "at": render_ratfunc(x), "value": render_ratfunc(value),
        })
    return EXIT_OK, render_ratfunc(value) + "\n"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kappa-feq",
        description="Classify and check solutions of f(x^2) = kappa*x^n*f(x) exactly.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    sampled = argparse.ArgumentParser(add_help=False)
    sampled.add_argument("--samples", metavar="FILE", help="sample points, one expression per line")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("classify", parents=[common], help="branch of the equation for (n, kappa)")
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--kappa", required=True, help="exact rational, e.g. 4 or 5/2")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("lambdas", parents=[common], help="lambda table for kappa = 2")
    s.add_argument("--n", type=_positive_int, required=True)
    s.set_defaults(run=cmd_lambdas)

    s = sub.add_parser("residual", parents=[common], help="residual identity for kappa = 2")
    s.add_argument("--n", type=_positive_int, required=True)
    s.set_defaults(run=cmd_residual)

    s = sub.add_parser("reduce-n3", parents=[common], help="order reduction for n = 3, kappa = 2")
    s.set_defaults(run=cmd_reduce_n3)

    s = sub.add_parser("kappa4-demo", parents=[common], help="elimination attempt for n = 3, kappa = 4")
    s.add_argument("--drop-square-slot", action="store_true",
                   help="leave out the A(x^2, x^2, 1) term of the degree-4 component")
    s.set_defaults(run=cmd_kappa4)

    s = sub.add_parser("verify", parents=[common, sampled], help="check a form solves the equation")
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--kappa", required=True)
    s.add_argument("--form", required=True, help='e.g. "D({1})*D({2})*D({3})"')
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("order-check", parents=[common, sampled], help="derivation-order identity of a map")
    s.add_argument("--map", required=True, help='e.g. "D - 1/2*D^2"')
    s.add_argument("--m", type=_positive_int, required=True)
    s.set_defaults(run=cmd_order_check)

    s = sub.add_parser("polar-check", parents=[common, sampled], help="polarization formula for a form")
    s.add_argument("--form", required=True)
    s.add_argument("--trials", type=_positive_int, default=50)
    s.set_defaults(run=cmd_polar_check)

    s = sub.add_parser("delta-eval", parents=[common], help="iterated differences of a point function")
    s.add_argument("--expr", required=True, help='function of x, e.g. "x*D(x)^2"')
    s.add_argument("--increments", nargs="*", default=[], metavar="Y")
    s.add_argument("--at", default="t", help="evaluation point (default t)")
    s.set_defaults(run=cmd_delta_eval)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, text = args.run(args)
    except (InputError, ParseError, ArityError, ZeroDivisionError, ValueError) as exc:
        print(f"kappa-feq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
