import pytest

from spweyl.padics import PrimeContext
from spweyl.suites import SUITES, expansion_check, run_suite


def test_all_suites_pass_at_defaults():
    reports = run_suite("all", PrimeContext(3, 2))
    assert [r.name for r in reports if not r.passed] == []
    assert len({r.name for r in reports}) == len(reports)


def test_declaration_order_is_stable():
    names = [r.name for r in run_suite("tables", PrimeContext(3, 2))]
    assert names == [r.name for r in run_suite("tables", PrimeContext(3, 2))]
    assert names[0] == "bracket_agreement"


@pytest.mark.parametrize("p", [5, 7])
def test_expansion_other_primes(p):
    r = expansion_check(PrimeContext(p, 2), 6)
    assert r.passed, r.details


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", PrimeContext(3, 2))
    assert "all" not in SUITES
