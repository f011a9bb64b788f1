from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spweyl.padics import INF
from spweyl.weyl import (WeylElement, degree, homogeneous_degrees, tau, tau_total,
                         weyl_commutator, weyl_multiply, weyl_valuation)

from conftest import weyl_elements

x1, x2 = WeylElement.x(1, 2), WeylElement.x(2, 2)
d1, d2 = WeylElement.d(1, 2), WeylElement.d(2, 2)
one = WeylElement.scalar(2, 1)


# Independent oracle: polynomials as {exponent tuple: Fraction}, operators applied
# generator by generator (rightmost first) using plain multiplication/derivation.

def _mul_x(f, i):
    return {g[:i] + (g[i] + 1,) + g[i + 1:]: v for g, v in f.items()}


def _diff(f, i):
    out = {}
    for g, v in f.items():
        if g[i]:
            k = g[:i] + (g[i] - 1,) + g[i + 1:]
            out[k] = out.get(k, 0) + v * g[i]
    return out


def oracle_act(w, f):
    total = {}
    for (al, be), c in w.terms.items():
        h = dict(f)
        for i, e in enumerate(be):
            for _ in range(e):
                h = _diff(h, i)
        for i, e in enumerate(al):
            for _ in range(e):
                h = _mul_x(h, i)
        for g, v in h.items():
            total[g] = total.get(g, 0) + c * v
    return {g: v for g, v in total.items() if v}


def test_defining_relation():
    assert d1 * x1 == x1 * d1 + one
    assert x1 * x2 == x2 * x1 == WeylElement.monomial((1, 1), (0, 0))
    assert d1 * x2 == x2 * d1


def test_square_of_euler_operator():
    e = x1 * d1
    assert weyl_multiply(e, e) == WeylElement.monomial((2, 0), (2, 0)) + e
    for k in range(6):
        f = {(k, 0): Fraction(1)}
        assert oracle_act(e * e, f) == ({(k, 0): Fraction(k * k)} if k else {})


def test_commutator_examples():
    assert weyl_commutator(d1 ** 2, x1 ** 2) == 4 * x1 * d1 + 2 * one
    assert not weyl_commutator(x1, x2)
    assert not weyl_commutator(d1, x2)


def test_valuation_examples():
    assert weyl_valuation(WeylElement(2), 3) == INF
    w = -3 * x1 ** 2 + Fraction(9, 2) * x1 ** 4
    assert weyl_valuation(w, 3) == 1
    assert weyl_valuation(x1 * d1 + one, 3) == 0


def test_tau_examples():
    assert tau(1, x1) == d1
    assert tau(1, d1) == -x1
    assert tau(1, x1 * d1) == -x1 * d1 - one
    assert tau_total(x1 * x2) == d1 * d2
    assert tau_total(one) == one
    assert tau_total(-(x1 ** 2)) == -(d1 ** 2)


def test_tau_fourth_power_is_identity_on_generators():
    for g in (x1, x2, d1, d2):
        for i in (1, 2):
            assert tau(i, tau(i, tau(i, tau(i, g)))) == g
            if (g in (x1, d1) and i == 1) or (g in (x2, d2) and i == 2):
                assert tau(i, tau(i, g)) == -g


def test_degrees():
    w = x1 ** 2 * d2 + d1
    assert degree(w) == 3
    assert homogeneous_degrees(w) == {1, -1}


@given(weyl_elements(), weyl_elements(), weyl_elements())
def test_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(weyl_elements(), weyl_elements(), st.sampled_from([1, 2]))
def test_tau_is_multiplicative(u, v, i):
    assert tau(i, u * v) == tau(i, u) * tau(i, v)


@given(weyl_elements(), weyl_elements())
def test_valuation_submultiplicative(u, v):
    assert weyl_valuation(u * v, 3) >= weyl_valuation(u, 3) + weyl_valuation(v, 3)


@pytest.mark.parametrize("u,v", [
    (3 * x1, 9 * d1), (Fraction(1, 3) * x1 * d1 + one, 27 * x2),
    (3 * x1 ** 2 + d2, 3 * d1 + x2), (9 * one, Fraction(1, 9) * d1 * x2),
])
def test_valuation_multiplicative_on_unit_leading_pairs(u, v):
    assert weyl_valuation(u * v, 3) == weyl_valuation(u, 3) + weyl_valuation(v, 3)


@given(weyl_elements(deg=2), weyl_elements(deg=2),
       st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_product_matches_action_oracle(u, v, gamma):
    f = {gamma: Fraction(1)}
    assert oracle_act(u * v, f) == oracle_act(u, oracle_act(v, f))


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        x1 ** -1
