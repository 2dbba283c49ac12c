"""Elimination attempt for ``n = 3``, ``kappa = 4``.

With ``B(x, y) = A(x, y, 1)`` the induction gives ``A(x,x,x) = 9x B(x,x) -
3 B(x^2, x)`` and ``B(., 1) = 0``.  Two degree-4 identities in ``B`` are then
derived: one from the shifted degree-6 identity ``g``, one from the degree-4
component of the shifted expansion.  If some combination of them leaves
``B(x^2, x^2)`` alone, the 4-additive lift of ``B`` forces ``B = 0``.

Derived exactly, the second identity is ``-3`` times the first, so no such
combination exists, and ``f(x) = x D(x)^2`` is a nonzero solution.
``include_square_slot=False`` drops the ``A(x^2, x^2, 1)`` term from the
degree-4 component; the elimination then succeeds with ``eq1 + 4 eq2``.  That
mode is kept only to locate where the two computations part ways.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .engine import A_SYMBOL, collect_degree, expand_shifted, run_induction
from .formal import Atom, FormalPoly

__all__ = [
    "B_BASIS",
    "B_BASIS_LABELS",
    "Kappa4Report",
    "kappa4_pipeline",
    "b4_pairing_coefficients",
    "eliminate",
]

#: Degree-4 B-monomials: B(x^2,x^2), x B(x^2,x), B(x^3,x), x^2 B(x,x).
B_BASIS = (
    (0, Atom.of("B", 2, 2)),
    (1, Atom.of("B", 2, 1)),
    (0, Atom.of("B", 3, 1)),
    (2, Atom.of("B", 1, 1)),
)
B_BASIS_LABELS = ("B(x^2, x^2)", "x*B(x^2, x)", "B(x^3, x)", "x^2*B(x, x)")


def _b_vanishes(atom: Atom) -> bool:
    # B(., 1) = A(., 1, 1) = a = 0 once kappa != 2
    return atom.symbol == "B" and 0 in atom.args


@dataclass(frozen=True)
class Kappa4Report:
    include_square_slot: bool
    diagonal: FormalPoly  # A(x,x,x) in terms of B
    g_raw: FormalPoly  # f(x^2) - 4 x^3 f(x)
    g: FormalPoly  # normalized, leading B(x^4, x^2) coefficient 1
    eq_fourth: tuple  # from the shifted g, on B_BASIS, integer-cleared
    eq_fourth2_raw: FormalPoly
    eq_fourth2: tuple  # from the expansion, on B_BASIS, integer-cleared
    rank: int
    combination: Optional[tuple]  # (c1, c2) with c1*eq1 + c2*eq2 = r*B(x^2,x^2)
    combined: Optional[tuple]
    b4_coefficients: dict
    verdict: str  # "IdenticallyZero" | "Inconclusive"
    counterexample: Optional[str] = None
    counterexample_holds: Optional[bool] = None
    log: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        s = lambda v: [str(c) for c in v] if v is not None else None
        return {
            "include_square_slot": self.include_square_slot,
            "diagonal": str(self.diagonal),
            "g": str(self.g),
            "basis": list(B_BASIS_LABELS),
            "eq_fourth": s(self.eq_fourth),
            "eq_fourth2": s(self.eq_fourth2),
            "eq_fourth2_expression": str(self.eq_fourth2_raw),
            "rank": self.rank,
            "combination": s(self.combination),
            "combined": s(self.combined),
            "b4_at_x_y_1_1": {k: str(v) for k, v in self.b4_coefficients.items()},
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "counterexample_holds": self.counterexample_holds,
            "log": list(self.log),
        }


def _cleared_vector(poly: FormalPoly) -> tuple:
    rest = poly - FormalPoly({tuple(b): c for b, c in zip(B_BASIS, poly.vector(B_BASIS))})
    if not rest.is_zero():
        raise AssertionError(f"terms outside the degree-4 B basis: {rest}")
    return poly.cleared().vector(B_BASIS)


def _rank(rows) -> int:
    m = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def eliminate(eq1: tuple, eq2: tuple, keep: int = 0):
    """Find ``(c1, c2)`` cancelling every coordinate except ``keep`` while leaving it nonzero.

    Returns ``(None, None)`` when every combination that cancels the other
    coordinates also cancels ``keep``.
    """
    others = [(eq1[i], eq2[i]) for i in range(len(eq1)) if i != keep]
    nonzero = [(a, b) for a, b in others if a or b]
    if not nonzero:
        kernel = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    else:
        a, b = nonzero[0]
        kernel = [(b, -a)]
    for c1, c2 in kernel:
        combo = tuple(c1 * u + c2 * v for u, v in zip(eq1, eq2))
        if any(combo[i] for i in range(len(combo)) if i != keep) or not combo[keep]:
            continue
        if c1:
            c2, combo, c1 = c2 / c1, tuple(x / c1 for x in combo), Fraction(1)
        return (c1, c2), combo
    return None, None


def b4_pairing_coefficients(labels=("x", "y", "1", "1")) -> dict:
    """Coefficients of ``B4(labels)`` as B-values of products, using the three pairings."""
    out = {}
    pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    for p, q in pairings:
        def prod(pair):
            parts = sorted(labels[i] for i in pair if labels[i] != "1")
            return "*".join(parts) if parts else "1"

        u, v = sorted((prod(p), prod(q)), key=lambda s: (s == "1", s))
        key = f"B({u}, {v})"
        out[key] = out.get(key, Fraction(0)) + Fraction(1, 3)
    return out


def kappa4_pipeline(include_square_slot: bool = True) -> Kappa4Report:
    """Run the elimination; see the module docstring for the two modes."""
    from .classify import verify_solution
    from .forms import mixed_power_form
    from .parser import render_form

    log = []
    ind = run_induction(3, 4, continue_past=2)
    diagonal = ind.rows[3]
    log.append(f"A(x, x, x) = {diagonal}")

    f = diagonal
    g_raw = f.square_argument() - f.times_x(3) * 4
    g = g_raw.normalized()
    log.append(f"f(x^2) - 4*x^3*f(x) = {g_raw}")

    shifted = g.shift(_b_vanishes)
    eq1 = _cleared_vector(shifted.collect_degree(4))
    log.append(f"degree-4 part of g(x+1): {FormalPoly(dict(zip(B_BASIS, eq1)))} = 0")

    comp = collect_degree(expand_shifted(3, 4), 4)
    if not include_square_slot:
        comp = comp.filter(lambda t: not (t.atom.symbol == A_SYMBOL and t.atom.slots[0] == 2))
    comp2 = ind.rewrite(comp)
    eq2 = _cleared_vector(comp2)
    log.append(f"degree-4 part of the expansion: {comp} = 0, i.e. {comp2} = 0")

    rank = _rank([eq1, eq2])
    combination, combined = eliminate(eq1, eq2)
    b4 = b4_pairing_coefficients()
    if combination is not None:
        log.append(
            f"{combination[0]}*eq1 + {combination[1]}*eq2 = {combined[0]}*B(x^2, x^2); "
            "B4(x, y, 1, 1) = 2/3*B(x, y) so B = 0 and f = 0"
        )
        verdict = "IdenticallyZero"
        cx, holds = None, None
    else:
        witness = mixed_power_form(3, 2)
        cx = render_form(witness)
        holds = bool(verify_solution(3, 4, witness))
        log.append(f"equations have rank {rank}; no combination isolates B(x^2, x^2)")
        log.append(f"{cx} (trace x*D(x)^2) solves f(x^2) = 4*x^3*f(x): {holds}")
        verdict = "Inconclusive"
    return Kappa4Report(
        include_square_slot, diagonal, g_raw, g, eq1, comp2, eq2, rank,
        combination, combined, b4, verdict, cx, holds, tuple(log),
    )
