"""Formal expansion of ``f(x^2) = kappa x^n f(x)`` and the degree-wise induction.

With ``f = A*`` for a symmetric n-additive ``A``, substituting ``x + 1`` gives

    sum_{a1+a2+a3=n} multinom(n; a1,a2,a3) 2^a2 A([x^2]_a1, [x]_a2, [1]_a3)
      - kappa (x+1)^n sum_g C(n, g) A([x]_g, [1]_(n-g)) = 0,

a generalized polynomial of degree 2n whose homogeneous components vanish
separately.  ``U_k`` below is the partial diagonal ``A([x]_k, [1]_(n-k))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional

from .exact import as_rational
from .formal import Atom, FormalPoly, FormalTerm, InductionOrderError, extend_multilinear

__all__ = [
    "A_SYMBOL",
    "diagonal_atom",
    "multinomial",
    "shifted_square_terms",
    "shifted_product_terms",
    "expand_shifted",
    "collect_degree",
    "RecursionEq",
    "derive_recursion",
    "InductionStep",
    "Induction",
    "run_induction",
    "LambdaTable",
    "solve_lambda",
    "lambda_row_poly",
    "IdentityCoeffs",
    "residual_identity",
    "OrderReduction",
    "reduce_order_n3",
    "delta_one_identity",
]

A_SYMBOL = "A"
FREE_SYMBOLS = {1: "a", 2: "B"}


def multinomial(n: int, *parts: int) -> int:
    if sum(parts) != n or min(parts, default=0) < 0:
        raise ValueError(f"parts {parts} do not compose {n}")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def diagonal_atom(n: int, k: int) -> Atom:
    """``A([x]_k, [1]_(n-k))``."""
    return Atom(A_SYMBOL, (1,) * k + (0,) * (n - k))


def _slot_atom(n: int, c2: int, c1: int) -> Atom:
    return Atom(A_SYMBOL, (2,) * c2 + (1,) * c1 + (0,) * (n - c2 - c1))


def shifted_square_terms(n: int) -> List[FormalTerm]:
    """One term per composition ``a1 + a2 + a3 = n`` of ``A([(x+1)^2]_n)``, unmerged."""
    out = []
    for a1 in range(n + 1):
        for a2 in range(n - a1 + 1):
            a3 = n - a1 - a2
            coeff = Fraction(multinomial(n, a1, a2, a3) * 2 ** a2)
            out.append(FormalTerm(coeff, 0, _slot_atom(n, a1, a2)))
    return out


def shifted_product_terms(n: int, kappa) -> List[FormalTerm]:
    """Terms of ``-kappa (x+1)^n A([x+1]_n)``, unmerged."""
    kappa = as_rational(kappa)
    out = []
    for b in range(n + 1):
        for g in range(n + 1):
            coeff = -kappa * comb(n, b) * comb(n, g)
            if coeff:
                out.append(FormalTerm(coeff, b, _slot_atom(n, 0, g)))
    return out


def expand_shifted(n: int, kappa) -> FormalPoly:
    """Full left-hand side after ``x -> x + 1``, merged on ``(p, c2, c1)``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return FormalPoly.from_terms(shifted_square_terms(n) + shifted_product_terms(n, kappa))


def collect_degree(P: FormalPoly, k: int) -> FormalPoly:
    return P.collect_degree(k)


@dataclass(frozen=True)
class RecursionEq:
    """``lhs_coeff * U_k = rhs`` read off the degree-k component."""

    n: int
    kappa: Fraction
    k: int
    lhs_coeff: Fraction
    rhs: FormalPoly

    @property
    def target(self) -> Atom:
        return diagonal_atom(self.n, self.k)

    def component(self) -> FormalPoly:
        """``lhs_coeff * U_k - rhs``; equals the degree-k component of the expansion."""
        return FormalPoly.atom(self.target, self.lhs_coeff) - self.rhs

    def render(self) -> str:
        return f"{self.lhs_coeff}*{self.target} = {self.rhs}"


def derive_recursion(n: int, kappa, k: int) -> RecursionEq:
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    kappa = as_rational(kappa)
    comp = collect_degree(expand_shifted(n, kappa), k)
    target = diagonal_atom(n, k)
    lhs = Fraction(comb(n, k)) * (2 ** k - kappa)
    if comp.coeff(target) != lhs:
        raise AssertionError("diagonal coefficient disagrees with C(n,k)(2^k - kappa)")
    rhs = FormalPoly.atom(target, lhs) - comp
    return RecursionEq(n, kappa, k, lhs, rhs)


@dataclass(frozen=True)
class InductionStep:
    k: int
    equation: RecursionEq
    rewritten_rhs: FormalPoly
    value: Optional[FormalPoly]
    status: str  # "determined" | "free" | "obstructed"

    def render(self) -> str:
        line = f"k={self.k}: {self.equation.render()}"
        if self.status == "determined":
            line += f"  =>  {self.equation.target} = {self.value}"
        elif self.status == "free":
            line += f"  =>  no information; {self.equation.target} = {self.value} (free)"
        else:
            line += "  =>  no information; induction stops"
        return line


@dataclass
class Induction:
    """State of the increasing-k induction: known diagonals and the log."""

    n: int
    kappa: Fraction
    rows: Dict[int, FormalPoly] = field(default_factory=dict)
    steps: List[InductionStep] = field(default_factory=list)
    obstruction: Optional[int] = None
    constraints: List[FormalPoly] = field(default_factory=list)

    def rule(self, atom: Atom) -> Optional[FormalPoly]:
        """Rewrite ``A`` atoms through known diagonals; other symbols stay."""
        if atom.symbol != A_SYMBOL:
            return None
        live = atom.live
        l = len(live)
        if l in self.rows:
            return extend_multilinear(self.rows[l], live)
        if l == self.n:
            return None
        raise InductionOrderError(
            f"{atom} needs the diagonal of order {l}, known orders are {sorted(self.rows)}"
        )

    def rewrite(self, poly: FormalPoly) -> FormalPoly:
        return poly.rewrite(self.rule)

    def log(self) -> List[str]:
        return [s.render() for s in self.steps]


def _free_symbol(n: int, k: int) -> FormalPoly:
    if k == 0:
        return FormalPoly.atom(Atom(A_SYMBOL, (0,) * n))
    name = FREE_SYMBOLS.get(k, f"S{k}")
    return FormalPoly.atom(Atom.of(name, *([1] * k)))


def run_induction(n: int, kappa, upto: int = None, continue_past: int = 0) -> Induction:
    """Determine ``U_0, U_1, ...`` in increasing order.

    Where ``2^k = kappa`` the recursion carries no information.  For ``k <=
    continue_past`` a fresh symbol is introduced for ``U_k`` (``A(1,..,1)``,
    ``a``, ``B``, ...) and the induction goes on; beyond that it stops and
    records ``obstruction = k``.
    """
    kappa = as_rational(kappa)
    upto = n if upto is None else upto
    ind = Induction(n, kappa)
    for k in range(upto + 1):
        eq = derive_recursion(n, kappa, k)
        rhs = ind.rewrite(eq.rhs)
        if eq.lhs_coeff:
            value = rhs / eq.lhs_coeff
            ind.rows[k] = value
            ind.steps.append(InductionStep(k, eq, rhs, value, "determined"))
            continue
        if not rhs.is_zero():
            ind.constraints.append(rhs)
        if k <= continue_past:
            value = _free_symbol(n, k)
            ind.rows[k] = value
            ind.steps.append(InductionStep(k, eq, rhs, value, "free"))
            continue
        ind.steps.append(InductionStep(k, eq, rhs, None, "obstructed"))
        ind.obstruction = k
        break
    return ind


# -- kappa = 2: lambda table and residual identity -------------------------------

@dataclass(frozen=True)
class LambdaTable:
    """Rows ``k = 1..n``; ``rows[k-1][j-1]`` is the coefficient of ``x^(k-j) a(x^j)``."""

    rows: tuple

    @property
    def n(self) -> int:
        return len(self.rows)

    def row(self, k: int) -> tuple:
        return self.rows[k - 1]

    def as_strings(self) -> list:
        return [[str(c) for c in r] for r in self.rows]


def lambda_row_poly(row) -> FormalPoly:
    """``sum_j row[j-1] x^(k-j) a(x^j)`` with ``k = len(row)``."""
    k = len(row)
    return FormalPoly({(k - j, Atom.of("a", j)): as_rational(c) for j, c in enumerate(row, start=1)})


def _row_from_poly(k: int, poly: FormalPoly) -> tuple:
    coeffs = [Fraction(0)] * k
    for (p, atom), c in poly.items():
        if atom.symbol != "a" or len(atom.args) != 1 or p + atom.args[0] != k or atom.args[0] < 1:
            raise ValueError(f"unexpected term x^{p}*{atom} in row {k}")
        coeffs[atom.args[0] - 1] += c
    return tuple(coeffs)


def solve_lambda(n: int) -> LambdaTable:
    """Run the kappa = 2 induction and read off ``A([x]_k, [1]_(n-k)) = sum lambda_kj x^(k-j) a(x^j)``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    ind = run_induction(n, 2, continue_past=1)
    if ind.obstruction is not None or ind.constraints:
        raise AssertionError("kappa = 2 induction did not close")
    return LambdaTable(tuple(_row_from_poly(k, ind.rows[k]) for k in range(1, n + 1)))


@dataclass(frozen=True)
class IdentityCoeffs:
    """``sum_j coeffs[j] x^(degree-j) a(x^j) = 0``."""

    degree: int
    coeffs: tuple  # ((j, c), ...) sorted by descending j, zeros dropped

    @classmethod
    def build(cls, degree: int, coeffs) -> "IdentityCoeffs":
        items = dict(coeffs).items()
        return cls(degree, tuple(sorted(((int(j), as_rational(c)) for j, c in items if c), reverse=True)))

    @classmethod
    def from_poly(cls, degree: int, poly: FormalPoly) -> "IdentityCoeffs":
        acc = {}
        for (p, atom), c in poly.items():
            if atom.symbol != "a" or p + atom.degree != degree:
                raise ValueError(f"term x^{p}*{atom} is not of the form x^(m-j) a(x^j), m={degree}")
            j = atom.args[0]
            acc[j] = acc.get(j, Fraction(0)) + c
        return cls.build(degree, acc)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def as_poly(self) -> FormalPoly:
        return FormalPoly({(self.degree - j, Atom.of("a", j)): c for j, c in self.coeffs})

    def vector(self, js=None) -> tuple:
        d = self.as_dict()
        js = js if js is not None else [j for j, _ in self.coeffs]
        return tuple(d.get(j, Fraction(0)) for j in js)

    def cleared(self) -> "IdentityCoeffs":
        """Integer content, positive leading coefficient."""
        poly = self.as_poly().cleared()
        out = IdentityCoeffs.from_poly(self.degree, poly)
        if out.coeffs and out.coeffs[0][1] < 0:
            out = IdentityCoeffs(self.degree, tuple((j, -c) for j, c in out.coeffs))
        return out

    def normalized(self) -> "IdentityCoeffs":
        if not self.coeffs:
            return self
        lead = self.coeffs[0][1]
        return IdentityCoeffs(self.degree, tuple((j, c / lead) for j, c in self.coeffs))

    def scaled(self, c) -> "IdentityCoeffs":
        c = as_rational(c)
        return IdentityCoeffs.build(self.degree, {j: v * c for j, v in self.coeffs})

    def render(self) -> str:
        return f"{self.as_poly()} = 0"


def residual_identity(n: int, table: LambdaTable) -> IdentityCoeffs:
    """Constraint on ``a`` from putting ``f = sum lambda_nj x^(n-j) a(x^j)`` back into ``f(x^2) = 2 x^n f(x)``."""
    if table.n < n:
        raise ValueError(f"lambda table has {table.n} rows, need row {n}")
    f = lambda_row_poly(table.row(n))
    return IdentityCoeffs.from_poly(2 * n, f.square_argument() - f.times_x(n) * 2)


def _a_of_one(atom: Atom) -> bool:
    return atom.symbol == "a" and atom.args == (0,)


def delta_one_identity(identity: IdentityCoeffs, a_of_one_zero: bool = True) -> FormalPoly:
    """``Delta_1`` of the identity's left-hand side; ``a(1)`` terms dropped when it is known to vanish."""
    return identity.as_poly().difference_one(_a_of_one if a_of_one_zero else None)


@dataclass(frozen=True)
class OrderReduction:
    source: IdentityCoeffs
    delta: FormalPoly  # Delta_1 expression, integer-cleared
    fourth: IdentityCoeffs  # degree-4 component before normalization
    result: IdentityCoeffs  # normalized to leading coefficient 1


def reduce_order_n3(identity: IdentityCoeffs) -> OrderReduction:
    """Lower the degree-6 residual identity of ``n = 3`` to a degree-4 one.

    Applies ``Delta_1`` (``x -> x + 1`` minus the original, with ``a(1) = 0``
    since ``f(1) = 0`` when kappa = 2), clears the integer content of the whole
    expression and keeps the degree-4 component.
    """
    if identity.degree != 6 or not identity.coeffs:
        raise ValueError(f"expected a nonzero identity of degree 6, got degree {identity.degree}")
    if any(j < 1 or j > 6 for j, _ in identity.coeffs):
        raise ValueError("identity terms must be x^(6-j) a(x^j) with 1 <= j <= 6")
    delta = delta_one_identity(identity).cleared()
    fourth = IdentityCoeffs.from_poly(4, delta.collect_degree(4))
    if not fourth.coeffs:
        raise ValueError("degree-4 component vanishes; nothing to normalize")
    return OrderReduction(identity, delta, fourth, fourth.normalized())
