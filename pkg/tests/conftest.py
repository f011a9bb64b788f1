import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spweyl import symplectic as sp
from spweyl.modaction import LaurentPoly, Poly
from spweyl.weyl import WeylElement

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(bool)


def exps(length, hi, lo=0):
    return st.tuples(*[st.integers(lo, hi)] * length)


@st.composite
def weyl_elements(draw, n=2, deg=3, max_terms=4):
    keys = draw(st.lists(st.tuples(exps(n, deg), exps(n, deg)), max_size=max_terms))
    return WeylElement(n, {k: draw(rationals) for k in keys})


@st.composite
def sp_elements(draw, n=2, max_terms=4, integral=False):
    idx = draw(st.lists(st.sampled_from(sp.basis(n)), max_size=max_terms))
    coeff = st.integers(-5, 5) if integral else rationals
    return sp.SpElement({k: draw(coeff) for k in idx})


@st.composite
def polys(draw, n=2, deg=4, laurent=False, max_terms=4):
    keys = draw(st.lists(exps(n, deg, -deg if laurent else 0), max_size=max_terms))
    cls = LaurentPoly if laurent else Poly
    return cls(n, {k: draw(rationals) for k in keys})


def F(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
