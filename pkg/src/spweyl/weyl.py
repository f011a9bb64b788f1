"""Normal-ordered arithmetic in the Weyl algebra A_n over Q.

A monomial is a pair of exponent tuples ``(alpha, beta)`` standing for
x^alpha d^beta with every x to the left of every d.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from spweyl.padics import INF, PrimeContext, as_rational, valuation


class WeylElement:
    __slots__ = ("n", "_t", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        t = {}
        for (al, be), v in (terms or {}).items():
            v = as_rational(v)
            if not v:
                continue
            key = (tuple(al), tuple(be))
            if len(key[0]) != n or len(key[1]) != n:
                raise ValueError(f"exponent length mismatch for n={n}: {key}")
            s = t.get(key, 0) + v
            if s:
                t[key] = s
            else:
                t.pop(key, None)
        self._t = t
        self._hash = None

    # constructors
    @classmethod
    def scalar(cls, n: int, value) -> "WeylElement":
        z = (0,) * n
        return cls(n, {(z, z): value})

    @classmethod
    def monomial(cls, alpha, beta, coeff=1) -> "WeylElement":
        return cls(len(alpha), {(tuple(alpha), tuple(beta)): coeff})

    @classmethod
    def x(cls, i: int, n: int) -> "WeylElement":
        al = tuple(int(k == i - 1) for k in range(n))
        return cls(n, {(al, (0,) * n): 1})

    @classmethod
    def d(cls, i: int, n: int) -> "WeylElement":
        be = tuple(int(k == i - 1) for k in range(n))
        return cls(n, {((0,) * n, be): 1})

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items(), key=lambda kv: monomial_order(kv[0]))

    def coefficient(self, alpha, beta) -> Fraction:
        return self._t.get((tuple(alpha), tuple(beta)), Fraction(0))

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == WeylElement.scalar(self.n, other)
        return isinstance(other, WeylElement) and self.n == other.n and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._t.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise ValueError("Weyl elements over different n")
            return other
        if isinstance(other, (int, Fraction)):
            return WeylElement.scalar(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._t)
        for k, v in other._t.items():
            out[k] = out.get(k, 0) + v
        return WeylElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.n, {k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            return WeylElement(self.n, {k: v * s for k, v in self._t.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return weyl_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = WeylElement.scalar(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def valuation(self, ctx):
        return weyl_valuation(self, ctx)

    def __repr__(self):
        from spweyl.expr import format_weyl

        return f"WeylElement({format_weyl(self)!r})"


def monomial_order(key):
    """Canonical order: by total degree, then lexicographically descending."""
    al, be = key
    return (sum(al) + sum(be), tuple(-e for e in al + be))


@lru_cache(maxsize=None)
def _mono_product(al, be, ga, de):
    """(x^al d^be)(x^ga d^de) as a tuple of ((alpha, beta), int) pairs."""
    ranges = [range(min(bi, gi) + 1) for bi, gi in zip(be, ga)]
    out = []
    for ks in product(*ranges):
        coef = 1
        for bi, gi, ki in zip(be, ga, ks):
            coef *= comb(bi, ki) * comb(gi, ki) * factorial(ki)
        alpha = tuple(x + y - k for x, y, k in zip(al, ga, ks))
        beta = tuple(x + y - k for x, y, k in zip(be, de, ks))
        out.append(((alpha, beta), coef))
    return tuple(out)


def weyl_multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    if u.n != v.n:
        raise ValueError("Weyl elements over different n")
    out = {}
    for (al, be), cu in u._t.items():
        for (ga, de), cv in v._t.items():
            c = cu * cv
            for key, k in _mono_product(al, be, ga, de):
                out[key] = out.get(key, 0) + c * k
    return WeylElement(u.n, out)


def weyl_commutator(u: WeylElement, v: WeylElement) -> WeylElement:
    return weyl_multiply(u, v) - weyl_multiply(v, u)


def weyl_valuation(w: WeylElement, ctx: PrimeContext | int):
    return min((valuation(v, ctx) for v in w._t.values()), default=INF)


def degree(w: WeylElement) -> int:
    """Largest |alpha| + |beta| in the support (-1 for zero)."""
    return max((sum(al) + sum(be) for al, be in w._t), default=-1)


def homogeneous_degrees(w: WeylElement) -> set[int]:
    """The set of |alpha| - |beta| over the support (the operator degrees)."""
    return {sum(al) - sum(be) for al, be in w._t}


def tau(i: int, w: WeylElement) -> WeylElement:
    """Fourier transform in the i-th variable: x_i -> d_i, d_i -> -x_i."""
    n = w.n
    if not 1 <= i <= n:
        raise IndexError(f"tau index {i} out of range for n={n}")
    k = i - 1
    out = WeylElement(n)
    for (al, be), coef in w._t.items():
        rest_al = al[:k] + (0,) + al[k + 1:]
        rest_be = be[:k] + (0,) + be[k + 1:]
        left = WeylElement.monomial(rest_al, rest_be, coef)
        # x_i^a d_i^b -> d_i^a (-x_i)^b, evaluated left to right
        di = WeylElement.d(i, n) ** al[k]
        xi = WeylElement.x(i, n) ** be[k]
        out = out + left * di * xi * (-1) ** be[k]
    return out


def tau_total(w: WeylElement) -> WeylElement:
    """tau_1 o ... o tau_n (tau_n applied first)."""
    for i in range(w.n, 0, -1):
        w = tau(i, w)
    return w
