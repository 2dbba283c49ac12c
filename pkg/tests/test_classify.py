"""Classification branches, solution checks and golden JSON fixtures.

Set ``KAPPA_FEQ_REGEN=1`` to rewrite the fixtures after an intended change.
"""

import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

from kappa_feq.classify import BRANCHES, classify, kappa_exponent, verify_solution
from kappa_feq.exact import T
from kappa_feq.forms import ArityError, derivation_power_form, lambda_family_form, monomial_form

FIXTURES = Path(__file__).parent / "fixtures" / "classify"


def fixture_grid():
    for n in range(1, 6):
        kappas = {Fraction(k) for k in (1, 2, 3, 4, 8, 16, 32, 7, 2 ** n)} | {Fraction(5, 2)}
        for kappa in sorted(kappas):
            yield n, kappa


def fixture_path(n, kappa):
    return FIXTURES / f"n{n}_kappa{str(kappa).replace('/', '_')}.json"


@pytest.mark.parametrize("n, kappa", list(fixture_grid()))
def test_classify_matches_fixture(n, kappa):
    text = classify(n, kappa).to_json()
    path = fixture_path(n, kappa)
    if os.environ.get("KAPPA_FEQ_REGEN"):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    assert path.read_text() == text


def test_classify_examples():
    assert classify(3, 1).branch == "ScalarPower"
    c = classify(5, 8)
    assert c.branch == "OutsideTheorem" and c.obstruction == 3
    assert all("= 0" in line.split("=>")[-1] for line in c.derivation_log[:3])
    assert classify(4, 16).branch == "TopConstraint"
    assert classify(2, 7).branch == "IdenticallyZero"


def test_derivation_family_details():
    c = classify(3, 2)
    assert c.branch == "DerivationFamily" and c.order_bound == 3
    d = c.to_dict()
    assert d["lambdas"] == ["9", "-9/2", "1"]
    assert d["residual_identity"] == {"6": "2", "4": "-9", "3": "-4", "2": "36", "1": "-36"}
    assert classify(1, 2).order_bound == 1
    assert classify(4, 2).order_bound == 7
    assert classify(5, 2).order_bound == 9


def test_top_constraint_is_symbolic():
    c = classify(3, 8)
    assert c.constraint.startswith("sum_{s in S_4}")
    assert "A(x^2, x, x) - 2*x*A(x, x, x)" in c.constraint


def test_kappa_four_for_three():
    c = classify(3, 4)
    assert c.branch == "OutsideTheorem"
    assert c.witness == "id({1})*D({2})*D({3})"
    assert "rank 1" in c.note


def test_json_is_exact_and_deterministic():
    a = classify(4, 2).to_json()
    assert a == classify(4, 2).to_json()
    assert "." not in "".join(json.loads(a)["lambda_table"][-1])


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("kappa", [Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4), Fraction(6), Fraction(2 ** 8)])
def test_branch_totality(n, kappa):
    assert classify(n, kappa).branch in BRANCHES


def test_kappa_exponent():
    assert [kappa_exponent(k) for k in (1, 2, 3, 4, Fraction(1, 2), 0, -2, 1024)] == [0, 1, None, 2, None, None, None, 10]


@pytest.mark.parametrize("n", range(1, 5))
def test_verify_solution_families(n):
    c = Fraction(7, 3)
    assert verify_solution(n, 1, monomial_form(n, c))
    assert verify_solution(n, 2 ** n, derivation_power_form(n))


def test_verify_solution_thm3_family():
    F = lambda_family_form((9, Fraction(-9, 2), 1))
    assert verify_solution(3, 2, F)
    assert verify_solution(1, 2, derivation_power_form(1))


def test_verify_solution_failures():
    res = verify_solution(3, 4, derivation_power_form(3))
    assert not res
    assert res.sample == T and res.residual == 4 * T ** 3
    assert not verify_solution(3, 1, derivation_power_form(3))


def test_verify_solution_arity_check():
    with pytest.raises(ArityError):
        verify_solution(2, 1, monomial_form(3))
