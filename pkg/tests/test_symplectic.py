import itertools
from fractions import Fraction

import pytest
from hypothesis import given

from spweyl import symplectic as sp
from spweyl.symplectic import BasisIndex, SpElement, a, b, c

from conftest import rationals, sp_elements


def zeros(n):
    return [[0] * (2 * n) for _ in range(2 * n)]


def test_basis_sizes_and_order():
    B = sp.basis(2)
    assert len(B) == 10
    assert [x.text() for x in B[:4]] == ["a(1,1)", "a(1,2)", "a(2,1)", "a(2,2)"]
    assert [x.text() for x in B[4:]] == ["b(1,1)", "b(1,2)", "b(2,2)",
                                        "c(1,1)", "c(1,2)", "c(2,2)"]
    assert len(sp.basis(3)) == 21


def test_symmetric_index_normalisation():
    assert b(2, 1) == b(1, 2)
    assert c(3, 1) == c(1, 3)
    assert a(2, 1) != a(1, 2)
    assert BasisIndex.make("B", 2, 1) == BasisIndex.make("B", 1, 2)


def test_basis_matrix_examples():
    m = zeros(2)
    m[0][0], m[2][2] = 1, -1
    assert sp.basis_matrix(BasisIndex.make("A", 1, 1), 2) == m
    m = zeros(2)
    m[0][2] = 2
    assert sp.basis_matrix(BasisIndex.make("B", 1, 1), 2) == m
    m = zeros(2)
    m[2][1] = m[3][0] = 1
    assert sp.basis_matrix(BasisIndex.make("C", 1, 2), 2) == m


def test_index_out_of_range():
    with pytest.raises(IndexError):
        sp.basis_matrix(BasisIndex.make("A", 3, 1), 2)


def test_bracket_structure_examples():
    assert sp.bracket_structure(a(1, 2), b(2, 2)) == 2 * b(1, 2)
    assert sp.bracket_structure(b(1, 1), b(1, 2)) == SpElement()
    assert sp.bracket_structure(b(1, 1), c(1, 1)) == 4 * a(1, 1)


def test_bracket_matrix_examples():
    assert sp.bracket_matrix(a(1, 2), a(2, 1), 2) == a(1, 1) - a(2, 2)
    assert sp.bracket_matrix(b(1, 1), c(1, 1), 2) == 4 * a(1, 1)


@given(sp_elements())
def test_bracket_matrix_self_is_zero(x):
    assert sp.bracket_matrix(x, x, 2) == SpElement()


@pytest.mark.parametrize("n", [2, 3])
def test_two_bracket_implementations_agree(n):
    B = sp.basis(n)
    for u, v in itertools.product(B, B):
        x, y = sp.element(u), sp.element(v)
        assert sp.bracket_structure(x, y) == sp.bracket_matrix(x, y, n), (u, v)


@pytest.mark.parametrize("n", [2, 3])
def test_matrix_roundtrip_and_block_shape(n):
    for idx in sp.basis(n):
        m = sp.to_matrix(sp.element(idx), n)
        A = [row[:n] for row in m[:n]]
        D = [row[n:] for row in m[n:]]
        assert D == [[-A[j][i] for j in range(n)] for i in range(n)]
        assert sp.from_matrix(m, n) == sp.element(idx)


def test_from_matrix_rejects_non_symplectic():
    m = zeros(2)
    m[0][0] = 1
    with pytest.raises(sp.DecompositionError):
        sp.from_matrix(m, 2)


@given(sp_elements(), sp_elements(), rationals)
def test_bracket_bilinear_and_antisymmetric(x, y, t):
    br = sp.bracket_structure
    assert br(x, y) + br(y, x) == SpElement()
    assert br(t * x + y, y) == t * br(x, y)


def test_jacobi_n2():
    B = [sp.element(i) for i in sp.basis(2)]
    br = sp.bracket_structure
    for x, y, z in itertools.product(B, B, B):
        assert br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y)) == SpElement()


@pytest.mark.parametrize("fam", ["b", "c"])
def test_b_and_c_abelian(fam):
    gens = [sp.element(i) for i in sp.subalgebra(fam, 3)]
    assert all(not sp.bracket_structure(x, y) for x in gens for y in gens)


def test_subalgebra_examples():
    assert [i.text() for i in sp.subalgebra("c^1", 3)] == ["c(1,1)", "c(1,2)", "c(1,3)"]
    assert [i.text() for i in sp.subalgebra("a0", 2)] == ["a(1,1)", "a(2,2)"]
    s = sp.subalgebra("s", 2)
    assert len(s) == 7
    assert {i.family for i in s} == {"A", "C"}


def test_subalgebra_errors():
    with pytest.raises(KeyError):
        sp.subalgebra("nonsense", 2)
    with pytest.raises(ValueError):
        sp.subalgebra("c^4", 3)


@pytest.mark.parametrize("n", [2, 3])
def test_catalogued_subalgebras_close(n):
    from spweyl.verify import catalogued_names

    for name in catalogued_names(n):
        assert sp.is_closed(sp.subalgebra(name, n)), name


def test_span_helpers():
    assert sp.span_contains([a(1, 1), a(2, 2)], a(1, 1) - 3 * a(2, 2))
    assert not sp.span_contains([a(1, 1)], a(2, 2))
    assert sp.spans_equal([a(1, 1) + a(2, 2), a(1, 1)], [a(2, 2), a(1, 1)])


def test_scalar_coefficients_are_exact():
    x = Fraction(1, 3) * a(1, 1)
    assert sp.format_sp(x) == "1/3*a(1,1)"
    assert sp.format_sp(4 * a(1, 1)) == "4*a(1,1)"
    assert sp.format_sp(SpElement()) == "0"
