from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from spweyl.linalg import (EchelonBasis, integer_vector, nullspace, padic_minor_valuation,
                           rank, same_span, solve)
from spweyl.padics import valuation

small = st.integers(-6, 6)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[2, 1], [0, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0


@given(matrices)
def test_nullspace_dimension_and_kernel(m):
    ncols = len(m[0])
    ker = nullspace(m, ncols)
    assert len(ker) + rank(m) == ncols
    for v in ker:
        assert all(sum(Fraction(a) * x for a, x in zip(row, v)) == 0 for row in m)
        w = integer_vector(v)
        assert all(isinstance(x, int) for x in w)


@given(matrices)
def test_echelon_basis_counts_rank(m):
    eb = EchelonBasis()
    added = sum(eb.add({k: Fraction(x) for k, x in enumerate(row) if x}) for row in m)
    assert added == len(eb) == rank(m)
    for row in m:
        assert eb.contains({k: Fraction(x) for k, x in enumerate(row) if x})


def test_solve_and_span():
    x = solve([[2, 1], [0, 1]], [3, 1])
    assert x == [1, 1]
    assert same_span([[1, 1], [1, -1]], [[1, 0], [0, 1]])
    assert not same_span([[1, 1]], [[1, 0]])


def _minor_gcd_valuation(m, p):
    # brute force over all maximal minors (square full-column-rank case)
    from itertools import combinations

    from spweyl.linalg import transpose

    rows, cols = len(m), len(m[0])
    best = None
    for pick in combinations(range(rows), cols):
        sub = [m[r] for r in pick]
        d = _det(sub)
        if d:
            v = valuation(d, p)
            best = v if best is None else min(best, v)
    return best


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n, det = len(m), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


@given(st.lists(st.lists(st.integers(-9, 9), min_size=2, max_size=2), min_size=2, max_size=4))
def test_minor_valuation_matches_brute_force(m):
    if rank(m) < 2:
        return
    assert padic_minor_valuation(m, 3) == _minor_gcd_valuation(m, 3)
