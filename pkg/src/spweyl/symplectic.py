"""The Lie algebra sp_2n in the basis a_ij, b_ij, c_ij.

Two bracket implementations are provided: the closed-form commutation rules
(``bracket_structure``) and the matrix commutator in the 2n x 2n model
(``bracket_matrix``). They are independent and are cross-checked in tests.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from spweyl.linalg import EchelonBasis, same_span
from spweyl.padics import PrimeContext, as_rational, format_rational


class BasisIndex(NamedTuple):
    family: str
    i: int
    j: int

    @classmethod
    def make(cls, family: str, i: int, j: int) -> "BasisIndex":
        family = family.upper()
        if family not in "ABC" or len(family) != 1:
            raise ValueError(f"unknown basis family {family!r}")
        if i < 1 or j < 1:
            raise ValueError(f"basis indices start at 1, got ({i},{j})")
        if family != "A" and i > j:
            i, j = j, i
        return cls(family, i, j)

    def check(self, n: int):
        if not (1 <= self.i <= n and 1 <= self.j <= n):
            raise IndexError(f"{self.text()} out of range for n={n}")

    def text(self) -> str:
        return f"{self.family.lower()}({self.i},{self.j})"


def basis(n: int) -> list[BasisIndex]:
    """The fixed PBW order: a_ij lexicographic, then b_ij and c_ij with i <= j."""
    out = [BasisIndex("A", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for fam in "BC":
        out += [BasisIndex(fam, i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    return out


_FAMILY_RANK = {"A": 0, "B": 1, "C": 2}


def index_key(idx: BasisIndex):
    return (_FAMILY_RANK[idx.family], idx.i, idx.j)


class SpElement:
    """Finite rational combination of basis elements; immutable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        for k, v in (coeffs or {}).items():
            if not isinstance(k, BasisIndex):
                k = BasisIndex.make(*k)
            else:
                k = BasisIndex.make(k.family, k.i, k.j)
            v = as_rational(v)
            if v:
                s = c.get(k, 0) + v
                if s:
                    c[k] = s
                else:
                    c.pop(k, None)
        self._c = c
        self._hash = None

    @classmethod
    def basis_element(cls, idx: BasisIndex) -> "SpElement":
        return cls({idx: 1})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items(), key=lambda kv: index_key(kv[0]))

    def support(self):
        return [k for k, _ in self.items()]

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._c
        return isinstance(other, SpElement) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, SpElement):
            return NotImplemented
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return SpElement(out)

    def __neg__(self):
        return SpElement({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, SpElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, SpElement):
            raise TypeError("use bracket() for Lie products")
        s = as_rational(scalar)
        return SpElement({k: v * s for k, v in self._c.items()})

    __rmul__ = __mul__

    def coefficient(self, idx: BasisIndex) -> Fraction:
        return self._c.get(BasisIndex.make(*idx), Fraction(0))

    def vector(self, n: int) -> list[Fraction]:
        return [self._c.get(k, Fraction(0)) for k in basis(n)]

    def check_range(self, n: int):
        for k in self._c:
            k.check(n)

    def __repr__(self):
        return f"SpElement({format_sp(self)!r})"


def format_sp(x: SpElement) -> str:
    if not x:
        return "0"
    parts = []
    for k, v in x.items():
        mono = k.text()
        if v == 1:
            t = mono
        elif v == -1:
            t = "-" + mono
        else:
            t = f"{format_rational(v)}*{mono}"
        parts.append(t)
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def a(i: int, j: int) -> SpElement:
    return SpElement({BasisIndex.make("A", i, j): 1})


def b(i: int, j: int) -> SpElement:
    return SpElement({BasisIndex.make("B", i, j): 1})


def c(i: int, j: int) -> SpElement:
    return SpElement({BasisIndex.make("C", i, j): 1})


_GEN = {"A": a, "B": b, "C": c}


def element(idx: BasisIndex) -> SpElement:
    return _GEN[idx.family](idx.i, idx.j)


# -- closed-form commutation rules ------------------------------------------

def _d(x, y):
    return 1 if x == y else 0


def _basis_bracket(u: BasisIndex, v: BasisIndex) -> SpElement:
    fu, fv = u.family, v.family
    if _FAMILY_RANK[fu] > _FAMILY_RANK[fv]:
        return -_basis_bracket(v, u)
    i, j, k, l = u.i, u.j, v.i, v.j
    if fu == "A" and fv == "A":
        return _d(j, k) * a(i, l) - _d(i, l) * a(k, j)
    if fu == "A" and fv == "B":
        return _d(j, k) * b(i, l) + _d(j, l) * b(i, k)
    if fu == "A" and fv == "C":
        return -_d(i, l) * c(j, k) - _d(i, k) * c(j, l)
    if fu == "B" and fv == "C":
        return (_d(j, k) * a(i, l) + _d(j, l) * a(i, k)
                + _d(i, k) * a(j, l) + _d(i, l) * a(j, k))
    return SpElement()


def bracket_structure(x: SpElement, y: SpElement) -> SpElement:
    out = SpElement()
    for u, cu in x.items():
        for v, cv in y.items():
            out = out + (cu * cv) * _basis_bracket(u, v)
    return out


bracket = bracket_structure


# -- matrix model -------------------------------------------------------------

def zero_matrix(n: int):
    return [[Fraction(0)] * (2 * n) for _ in range(2 * n)]


def basis_matrix(idx: BasisIndex, n: int):
    """2n x 2n matrix of a basis element (1-based indices)."""
    idx = BasisIndex.make(*idx)
    idx.check(n)
    m = zero_matrix(n)
    i, j = idx.i - 1, idx.j - 1
    if idx.family == "A":
        m[i][j] += 1
        m[j + n][i + n] -= 1
    elif idx.family == "B":
        m[i][j + n] += 1
        m[j][i + n] += 1
    else:
        m[i + n][j] += 1
        m[j + n][i] += 1
    return m


def to_matrix(x: SpElement, n: int):
    m = zero_matrix(n)
    for idx, coef in x.items():
        bm = basis_matrix(idx, n)
        for r in range(2 * n):
            for s in range(2 * n):
                if bm[r][s]:
                    m[r][s] += coef * bm[r][s]
    return m


class DecompositionError(ArithmeticError):
    """A matrix that should lie in sp_2n does not."""


def from_matrix(m, n: int) -> SpElement:
    coeffs = {}
    for i in range(n):
        for j in range(n):
            coeffs[BasisIndex("A", i + 1, j + 1)] = m[i][j]
    for i in range(n):
        for j in range(i, n):
            scale = Fraction(1, 2) if i == j else 1
            coeffs[BasisIndex("B", i + 1, j + 1)] = m[i][j + n] * scale
            coeffs[BasisIndex("C", i + 1, j + 1)] = m[i + n][j] * scale
    x = SpElement(coeffs)
    if to_matrix(x, n) != [[Fraction(v) for v in row] for row in m]:
        raise DecompositionError("matrix is not in sp_2n")
    return x


def matmul(x, y):
    size = len(x)
    out = [[Fraction(0)] * size for _ in range(size)]
    for r in range(size):
        xr, orow = x[r], out[r]
        for k in range(size):
            v = xr[k]
            if v:
                yk = y[k]
                for s in range(size):
                    if yk[s]:
                        orow[s] += v * yk[s]
    return out


def bracket_matrix(x: SpElement, y: SpElement, ctx: PrimeContext | int) -> SpElement:
    n = ctx if isinstance(ctx, int) else ctx.n
    mx, my = to_matrix(x, n), to_matrix(y, n)
    xy, yx = matmul(mx, my), matmul(my, mx)
    comm = [[u - v for u, v in zip(r1, r2)] for r1, r2 in zip(xy, yx)]
    return from_matrix(comm, n)


# -- subalgebra catalogue -----------------------------------------------------

def _A(i, j):
    return BasisIndex("A", i, j)


def _B(i, j):
    return BasisIndex.make("B", i, j)


def _C(i, j):
    return BasisIndex.make("C", i, j)


def _sym(fam, hi):
    return [BasisIndex(fam, i, j) for i in range(1, hi + 1) for j in range(i, hi + 1)]


def _c_upper(n, k):
    return _sym("C", k) + [_C(1, j) for j in range(k + 1, n + 1)]


def _c_tilde(n, k):
    return [_C(i, k) for i in range(1, k + 1)] + [_C(1, j) for j in range(k + 1, n + 1)]


def _a_plus(n, k):
    return [_A(k, i) for i in range(1, k)] + [_A(i, 1) for i in range(k + 1, n + 1)]


def _a_minus(n, k):
    return [_A(i, k) for i in range(1, k)] + [_A(1, i) for i in range(k + 1, n + 1)]


def _a_k(n, k):
    return ([_A(i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
            + [_A(i, i) for i in range(k + 1, n + 1)])


def _c_plus(n, k):
    if k == 1:
        return [_B(1, i) for i in range(1, n + 1)]
    return _sym("C", k - 1) + _a_plus(n, k) + [_B(k, k)]


def _c_minus(n, k):
    if k == 1:
        return [_C(1, i) for i in range(1, n + 1)]
    return _sym("B", k - 1) + _a_minus(n, k) + [_C(k, k)]


def _ct_plus(n, k):
    if k == 1:
        return [_B(1, i) for i in range(1, n + 1)]
    return _a_plus(n, k) + [_B(k, k)]


def _ct_minus(n, k):
    if k == 1:
        return [_C(1, i) for i in range(1, n + 1)]
    return _a_minus(n, k) + [_C(k, k)]


def _dedupe(xs):
    seen, out = set(), []
    for x in xs:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


# name pattern -> (builder(n, k), smallest k)
_PARAMETRIC = {
    r"c\^(\d+)": (_c_upper, 1),
    r"c~\^(\d+)": (_c_tilde, 1),
    r"c\^(\d+)_\+": (_c_plus, 1),
    r"c\^(\d+)_-": (_c_minus, 1),
    r"c~\^(\d+)_\+": (_ct_plus, 1),
    r"c~\^(\d+)_-": (_ct_minus, 1),
    r"a_(\d+)": (_a_k, 0),
    r"b_(\d+)": (lambda n, k: [_B(i, k) for i in range(1, k)], 1),
    r"c_(\d+)": (lambda n, k: [_C(i, k) for i in range(1, k)], 1),
    r"a_(\d+)\^-": (lambda n, k: _a_k(n, k - 1) + [_C(i, k) for i in range(1, k)], 1),
    r"a_(\d+)\^\+": (lambda n, k: _a_k(n, k - 1) + [_B(i, k) for i in range(1, k)], 1),
    r"a_(\d+)\^pm": (lambda n, k: _a_k(n, k - 1) + [_B(i, k) for i in range(1, k)]
                     + [_C(i, k) for i in range(1, k)], 1),
    r"a\^(\d+)_\+": (_a_plus, 2),
    r"a\^(\d+)_-": (_a_minus, 2),
    r"c\|(\d+)": (lambda n, k: [_C(i, k) for i in range(1, n + 1)], 1),
}

_FIXED = {
    "a": lambda n: [_A(i, j) for i in range(1, n + 1) for j in range(1, n + 1)],
    "b": lambda n: _sym("B", n),
    "c": lambda n: _sym("C", n),
    "g": basis,
    "a0": lambda n: [_A(i, i) for i in range(1, n + 1)],
    "s": lambda n: _FIXED["a"](n) + _sym("C", n),
    "t": lambda n: _FIXED["a"](n) + _sym("B", n),
}

SUBALGEBRA_NAMES = sorted(_FIXED) + [
    "c^k", "c~^k", "c^k_+", "c^k_-", "c~^k_+", "c~^k_-",
    "a_k", "b_k", "c_k", "a_k^-", "a_k^+", "a_k^pm", "a^k_+", "a^k_-", "c|k",
]


def subalgebra(name: str, ctx: PrimeContext | int) -> list[BasisIndex]:
    """Generating basis elements of a named subalgebra.

    Names: a, b, c, g, a0, s (= a+c), t (= a+b), and with an integer k in
    place of ``k``: c^k, c~^k (tilde), c^k_+, c^k_-, c~^k_+, c~^k_-, a_k,
    b_k, c_k, a_k^-, a_k^+, a_k^pm, a^k_+, a^k_-, and c|k for the column
    span <c_ik : 1 <= i <= n>.
    """
    n = ctx if isinstance(ctx, int) else ctx.n
    name = name.strip()
    if name in _FIXED:
        return _dedupe(_FIXED[name](n))
    for pattern, (builder, kmin) in _PARAMETRIC.items():
        m = re.fullmatch(pattern, name)
        if m:
            k = int(m.group(1))
            if not kmin <= k <= n:
                raise ValueError(f"k={k} out of range for {name!r} with n={n}")
            if k == 0:
                return _FIXED["a0"](n)
            return _dedupe(builder(n, k))
    raise KeyError(f"unknown subalgebra {name!r}")


def span_contains(gens: list[SpElement], x: SpElement) -> bool:
    e = EchelonBasis()
    for g in gens:
        e.add(g.coeffs)
    return e.contains(x.coeffs)


def spans_equal(xs: list[SpElement], ys: list[SpElement]) -> bool:
    return same_span([x.coeffs for x in xs], [y.coeffs for y in ys])


def is_closed(gens: list[BasisIndex]) -> bool:
    """Brackets of generators stay inside their span."""
    elems = [element(g) for g in gens]
    e = EchelonBasis()
    for x in elems:
        e.add(x.coeffs)
    return all(e.contains(bracket_structure(x, y).coeffs) for x in elems for y in elems)
