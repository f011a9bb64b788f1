import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spweyl import randgen
from spweyl import symplectic as sp
from spweyl.expr import SORTS, ParseError, SortError, format_value, parse, tokenize
from spweyl.metaplectic import rho
from spweyl.modaction import LaurentPoly, Poly
from spweyl.padics import PrimeContext
from spweyl.symplectic import SpElement, a, b
from spweyl.weyl import WeylElement

from conftest import polys, sp_elements, weyl_elements

x1, d1 = WeylElement.x(1, 2), WeylElement.d(1, 2)


def test_parse_examples():
    assert parse("[a(1,2), b(2,2)]", "lie") == 2 * b(1, 2)
    assert parse("x1^2*d1 - 1/2", "weyl") == x1 ** 2 * d1 - Fraction(1, 2) * WeylElement.scalar(2, 1)
    assert parse("X1^-1", "laurent") == LaurentPoly.monomial((-1, 0))


def test_format_examples():
    assert format_value(rho(a(1, 1), 2)) == "-1/2 - x1*d1"
    assert format_value(0) == "0"
    assert format_value(4 * a(1, 1)) == "4*a(1,1)"
    assert format_value(SpElement()) == "0"


def test_symmetric_indices_normalise():
    assert parse("b(2,1)", "lie") == b(1, 2)


def test_power_binds_tighter_than_minus():
    assert parse("-x1^2", "weyl") == -(x1 ** 2)
    assert parse("(-x1)^3", "weyl") == -(x1 ** 3)


def test_prime_symbol():
    assert parse("p*x1", "weyl", PrimeContext(5, 2)) == 5 * x1
    assert parse("p^2*1/2", "poly", PrimeContext(3, 2)) == Poly.scalar(2, Fraction(9, 2))
    with pytest.raises(ParseError):
        parse("p/2", "poly")  # '/' only forms rational literals


def test_bracket_per_sort():
    assert parse("[d1, x1]", "weyl") == WeylElement.scalar(2, 1)
    assert parse("[b(1,1), c(1,1)]", "lie") == 4 * a(1, 1)
    assert parse("[X1, X2]", "poly") == Poly(2)


def test_juxtaposition_is_an_error():
    with pytest.raises(ParseError):
        parse("x1 x2", "weyl")


@pytest.mark.parametrize("src,sort", [
    ("x1", "lie"), ("a(1,1)", "weyl"), ("X1", "weyl"), ("d1", "poly"),
    ("a(1,1)*a(1,2)", "lie"), ("a(1,1)^2", "lie"), ("3", "lie"),
])
def test_sort_errors(src, sort):
    with pytest.raises(SortError):
        parse(src, sort)


@pytest.mark.parametrize("src,sort,pos", [
    ("x1^-1", "weyl", 2), ("X1^-1", "poly", 2), ("1/0", "weyl", 2),
    ("(x1", "weyl", 3), ("x1 +", "weyl", 4), ("a(1,", "lie", 0),
    ("a(3,1)", "lie", 0), ("x1 $ x2", "weyl", 3), ("", "weyl", 0),
])
def test_parse_errors_carry_position(src, sort, pos):
    with pytest.raises(ParseError) as err:
        parse(src, sort, 2)
    assert err.value.position == pos


def test_unknown_sort():
    with pytest.raises(ValueError):
        parse("1", "matrix")


def test_tokenizer_whitespace_insensitive():
    assert parse(" a ( 1 , 2 ) ", "lie") == a(1, 2)
    kinds = [t.kind for t in tokenize("[x1,d2]^3")]
    assert kinds == ["[", "var", ",", "var", "]", "^", "num", "end"]


def test_formatting_is_canonical():
    w = parse("d1*x1 + 3", "weyl")
    assert format_value(w) == "4 + x1*d1"
    assert format_value(parse("X2 + X1^2 - 1", "poly")) == "-1 + X2 + X1^2"


@given(sp_elements(n=3))
def test_roundtrip_lie(v):
    assert parse(format_value(v), "lie", 3) == v


@given(weyl_elements(n=3))
def test_roundtrip_weyl(v):
    assert parse(format_value(v), "weyl", 3) == v


@given(polys(n=3))
def test_roundtrip_poly(v):
    assert parse(format_value(v), "poly", 3) == v


@given(polys(n=2, laurent=True))
def test_roundtrip_laurent(v):
    assert parse(format_value(v), "laurent", 2) == v


def test_seeded_roundtrip_500():
    rng = random.Random(7)
    for k in range(500):
        sort = SORTS[k % 4]
        v = randgen.value(rng, sort, 2)
        assert parse(format_value(v), sort, 2) == v


@given(st.integers(-50, 50), st.integers(1, 50))
def test_rational_literals(num, den):
    assert parse(f"{num}/{den}", "weyl") == WeylElement.scalar(2, Fraction(num, den))
    with pytest.raises(ParseError):
        parse(f"({num})/{den}", "weyl")
