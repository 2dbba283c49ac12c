from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kappa_feq.additive import (
    D,
    DEFAULT_SAMPLES,
    ID,
    AdditiveMap,
    apply,
    compose,
    leibniz_defect,
    order_certify,
    order_identity_coeffs,
    recursive_order_probe,
)
from kappa_feq.exact import ONE, T, RatFunc
from kappa_feq.parser import parse_map, render_map

from conftest import apply_oracle, random_ratfunc, same, to_sympy

maps = st.dictionaries(
    st.integers(0, 4), st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=3
).map(AdditiveMap)


def test_apply_examples():
    assert apply(D, T ** 3) == 3 * T ** 2
    assert apply(D ** 2, T ** 3) == 6 * T
    assert apply(D, 1 / T) == -1 / T ** 2


def test_compose_examples():
    assert compose(D, D) == D ** 2
    assert compose(ID, D - D ** 3) == D - D ** 3
    assert compose(2 * D, 3 * D ** 2) == 6 * D ** 3


def test_leibniz_defect_examples():
    assert leibniz_defect(D, T, T).is_zero()
    assert leibniz_defect(D ** 2, T, T) == RatFunc.constant(2)
    x, y = T + 1, T ** 2 - 3
    assert leibniz_defect(ID, x, y) == -x * y


def test_order_certify_examples():
    assert order_certify(D, 1)
    res = order_certify(D ** 2, 1)
    assert not res and res.sample == T and res.residual == RatFunc.constant(2)
    assert order_certify(D ** 2, 2)


def test_order_certify_requires_vanishing_at_one():
    res = order_certify(ID, 3)
    assert not res and res.sample == ONE


def test_order_identity_coefficients_for_three():
    assert order_identity_coeffs(3) == {4: 1, 3: -4, 2: 6, 1: -4, 0: 1}


def test_constants_are_killed():
    assert apply(D, ONE).is_zero()
    for k in range(1, 5):
        assert apply(D ** k, ONE).is_zero()
    assert apply(ID, ONE) == ONE


def test_render_examples():
    assert render_map(AdditiveMap({1: 1, 2: Fraction(-1, 2)})) == "D - 1/2*D^2"
    assert render_map(ID) == "id"
    assert render_map(AdditiveMap()) == "0"
    assert render_map(-D ** 3 + 2 * ID) == "2*id - D^3"


def test_default_samples():
    assert len(DEFAULT_SAMPLES) == 9
    assert DEFAULT_SAMPLES[0] == T


@given(maps, st.integers(0, 10 ** 6))
def test_additivity_and_homogeneity(a, seed):
    import random

    rng = random.Random(seed)
    p, q = random_ratfunc(rng), random_ratfunc(rng)
    c = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
    assert apply(a, p + q) == apply(a, p) + apply(a, q)
    assert apply(a, p * c) == apply(a, p) * c


@given(maps, st.integers(0, 10 ** 6))
def test_apply_matches_sympy(a, seed):
    import random

    p = random_ratfunc(random.Random(seed))
    assert same(apply(a, p), apply_oracle(a, to_sympy(p)))


@given(maps, maps, st.integers(0, 10 ** 6))
def test_compose_is_application_composition(a, b, seed):
    import random

    p = random_ratfunc(random.Random(seed))
    assert apply(compose(a, b), p) == apply(a, apply(b, p))


@given(maps, st.integers(0, 10 ** 6))
def test_leibniz_defect_symmetric(a, seed):
    import random

    rng = random.Random(seed)
    x, y = random_ratfunc(rng), random_ratfunc(rng)
    assert leibniz_defect(a, x, y) == leibniz_defect(a, y, x)


@given(maps)
def test_render_round_trips(a):
    assert parse_map(render_map(a)) == a


@pytest.mark.parametrize("k", range(1, 5))
def test_order_certify_monotone_on_powers(k):
    verdicts = [bool(order_certify(D ** k, m)) for m in range(1, 6)]
    assert verdicts == [m >= k for m in range(1, 6)]


@pytest.mark.parametrize("k", range(1, 4))
@pytest.mark.parametrize("m", range(1, 5))
def test_recursive_probe_agrees_with_identity(k, m):
    a = D ** k
    assert recursive_order_probe(lambda p: apply(a, p), m) == bool(order_certify(a, m))
