"""PBW arithmetic in U(sp_2n), truncated exponentials e^{pg}, and finite
Iwasawa-algebra elements sum lambda_alpha (G - 1)^alpha.

Every truncation carries a certified lower bound (``tail_floor``) on the
valuation of everything that was discarded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from spweyl import symplectic as sp
from spweyl.metaplectic import rho_basis
from spweyl.padics import (INF, PrimeContext, as_rational, format_rational, parse_rational,
                           truncation_order, valuation)
from spweyl.symplectic import SpElement
from spweyl.weyl import WeylElement, weyl_valuation


class PrecisionError(ArithmeticError):
    """A requested valuation floor cannot be certified."""


class PBWElement:
    """Finite sum of ordered monomials g_1^e_1 ... g_d^e_d over the fixed basis order."""

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms=None):
        self.n = n
        d = 2 * n * n + n
        t = {}
        for e, v in (terms or {}).items():
            v = as_rational(v)
            if not v:
                continue
            e = tuple(e)
            if len(e) != d:
                raise ValueError(f"PBW exponent must have length {d}")
            s = t.get(e, 0) + v
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        self._t = t

    @classmethod
    def one(cls, n: int) -> "PBWElement":
        return cls(n, {(0,) * (2 * n * n + n): 1})

    @classmethod
    def from_sp(cls, x: SpElement, n: int) -> "PBWElement":
        pos = _positions(n)
        d = len(pos)
        out = {}
        for idx, v in x.items():
            e = [0] * d
            e[pos[idx]] = 1
            out[tuple(e)] = v
        return cls(n, out)

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        return isinstance(other, PBWElement) and self.n == other.n and self._t == other._t

    def __hash__(self):
        return hash((self.n, frozenset(self._t.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PBWElement.one(self.n) * other
        out = dict(self._t)
        for e, v in other._t.items():
            out[e] = out.get(e, 0) + v
        return PBWElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.n, {e: -v for e, v in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PBWElement(self.n, {e: v * other for e, v in self._t.items()})
        return pbw_multiply(self, other)

    def __rmul__(self, other):
        return self * other

    def degree(self) -> int:
        return max((sum(e) for e in self._t), default=-1)

    def valuation(self, ctx):
        return min((valuation(v, ctx) for v in self._t.values()), default=INF)

    def __repr__(self):
        return f"PBWElement({format_pbw(self)!r})"


@lru_cache(maxsize=None)
def _basis(n: int):
    return tuple(sp.basis(n))


@lru_cache(maxsize=None)
def _positions(n: int):
    return {idx: k for k, idx in enumerate(_basis(n))}


@lru_cache(maxsize=None)
def _basis_bracket_coords(n: int, i: int, j: int):
    """[g_i, g_j] as ((position, coefficient), ...)."""
    B = _basis(n)
    pos = _positions(n)
    br = sp.bracket_structure(sp.element(B[i]), sp.element(B[j]))
    return tuple((pos[idx], v) for idx, v in br.items())


@lru_cache(maxsize=None)
def _mono_times_gen(n: int, mono: tuple, j: int):
    """mono * g_j rewritten in PBW order, as a tuple of (exponent, coefficient)."""
    last = max((k for k, e in enumerate(mono) if e), default=-1)
    if last <= j:
        e = list(mono)
        e[j] += 1
        return ((tuple(e), Fraction(1)),)
    # mono = rest * g_last and g_last g_j = g_j g_last + [g_last, g_j]
    rest = list(mono)
    rest[last] -= 1
    rest = tuple(rest)
    acc = {}
    for m, cm in _mono_times_gen(n, rest, j):
        for m2, c2 in _mono_times_gen(n, m, last):
            acc[m2] = acc.get(m2, 0) + cm * c2
    for k, ck in _basis_bracket_coords(n, last, j):
        for m, cm in _mono_times_gen(n, rest, k):
            acc[m] = acc.get(m, 0) + ck * cm
    return tuple((m, v) for m, v in acc.items() if v)


def _mono_times_mono(n: int, left: tuple, right: tuple) -> dict:
    cur = {left: Fraction(1)}
    for j, e in enumerate(right):
        for _ in range(e):
            nxt = {}
            for m, cm in cur.items():
                for m2, c2 in _mono_times_gen(n, m, j):
                    nxt[m2] = nxt.get(m2, 0) + cm * c2
            cur = {m: v for m, v in nxt.items() if v}
    return cur


def pbw_multiply(u: PBWElement, v: PBWElement, ctx=None) -> PBWElement:
    if u.n != v.n:
        raise ValueError("PBW elements over different n")
    out = {}
    for e1, c1 in u._t.items():
        for e2, c2 in v._t.items():
            for m, cm in _mono_times_mono(u.n, e1, e2).items():
                out[m] = out.get(m, 0) + c1 * c2 * cm
    return PBWElement(u.n, out)


def pbw_power(u: PBWElement, k: int) -> PBWElement:
    out = PBWElement.one(u.n)
    for _ in range(k):
        out = pbw_multiply(out, u)
    return out


@lru_cache(maxsize=None)
def _rho_power(n: int, k: int, e: int) -> WeylElement:
    return rho_basis(_basis(n)[k], n) ** e


def rho_hat(u: PBWElement, ctx=None) -> WeylElement:
    """Algebra extension of rho along ordered monomials."""
    n = u.n
    out = WeylElement(n)
    for e, coef in u._t.items():
        w = WeylElement.scalar(n, coef)
        for k, ek in enumerate(e):
            if ek:
                w = w * _rho_power(n, k, ek)
        out = out + w
    return out


def format_pbw(u: PBWElement) -> str:
    from spweyl.expr import _join

    B = _basis(u.n)
    terms = []
    for e, v in u.items():
        mono = "*".join(B[k].text() + (f"^{ek}" if ek > 1 else "") for k, ek in enumerate(e) if ek)
        terms.append((v, mono))
    return _join(terms)


# -- truncated exponentials ---------------------------------------------------

@dataclass(frozen=True)
class TruncatedEnvelope:
    body: PBWElement
    tail_floor: float | int


@dataclass(frozen=True)
class TruncatedWeyl:
    body: WeylElement
    tail_floor: float | int


def _ctx(ctx) -> PrimeContext:
    return ctx if isinstance(ctx, PrimeContext) else PrimeContext(n=ctx)


def exp_p(g: SpElement, N: int, ctx: PrimeContext) -> TruncatedEnvelope:
    """sum_{k < K} p^k g^k / k! with everything discarded of valuation >= N."""
    ctx = _ctx(ctx)
    n, p = ctx.n, ctx.p
    g.check_range(n)
    for _, v in g.items():
        if valuation(v, p) < 0:
            raise ValueError("exp_p needs an integral Lie element")
    one = PBWElement.one(n)
    if not g:
        return TruncatedEnvelope(one, INF)
    K = truncation_order(N, p)
    base = PBWElement.from_sp(g, n)
    body, power = one, one
    for k in range(1, K):
        power = pbw_multiply(power, base)
        body = body + power * Fraction(p ** k, factorial(k))
    return TruncatedEnvelope(body, N)


def group_minus_one(g: SpElement, N: int, ctx: PrimeContext) -> TruncatedEnvelope:
    t = exp_p(g, N, ctx)
    body = t.body - PBWElement.one(t.body.n)
    if body.valuation(_ctx(ctx).p) < 1:
        raise PrecisionError("e^{pg} - 1 is not divisible by p")
    return TruncatedEnvelope(body, t.tail_floor)


@lru_cache(maxsize=None)
def _group_minus_one_image(g: SpElement, N: int, ctx: PrimeContext) -> WeylElement:
    t = group_minus_one(g, N, ctx)
    w = rho_hat(t.body)
    if weyl_valuation(w, ctx.p) < 1:
        raise PrecisionError("rho(e^{pg} - 1) is not divisible by p")
    return w


class IwasawaElement:
    """Finite sum of lambda_alpha (G_1 - 1)^a_1 ... (G_m - 1)^a_m, G_i = exp(p g_i)."""

    def __init__(self, generators, terms=None):
        self.generators = list(generators)
        m = len(self.generators)
        t = {}
        for al, v in (terms or {}).items():
            al = tuple(al)
            if len(al) != m or min(al, default=0) < 0:
                raise ValueError(f"bad multi-index {al} for {m} generators")
            v = as_rational(v)
            if v:
                t[al] = t.get(al, 0) + v
        self.terms = {k: v for k, v in t.items() if v}

    @classmethod
    def default_generators(cls, n: int) -> list[SpElement]:
        return [sp.element(idx) for idx in sp.basis(n)]

    @classmethod
    def monomial(cls, generators, alpha, coeff=1) -> "IwasawaElement":
        return cls(generators, {tuple(alpha): coeff})

    def __eq__(self, other):
        return (isinstance(other, IwasawaElement) and self.generators == other.generators
                and self.terms == other.terms)

    def to_json(self) -> dict:
        return {
            "generators": [sp.format_sp(g) for g in self.generators],
            "terms": [{"alpha": list(al), "coeff": format_rational(v)}
                      for al, v in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj, ctx) -> "IwasawaElement":
        from spweyl.expr import parse

        if isinstance(obj, str):
            obj = json.loads(obj)
        gens = [parse(s, "lie", ctx) for s in obj["generators"]]
        terms = {}
        for t in obj["terms"]:
            al = tuple(int(x) for x in t["alpha"])
            terms[al] = terms.get(al, 0) + parse_rational(str(t["coeff"]))
        return cls(gens, terms)


def iwasawa_to_weyl(zeta: IwasawaElement, N: int, ctx: PrimeContext) -> TruncatedWeyl:
    """Image of zeta under rho, correct up to valuation N.

    With every factor rho(G_i - 1) = B + T, v(B) >= 1 and v(T) >= N', a product
    of m factors is off by at most valuation N' + m - 1, so the working
    precision N' is chosen from the smallest v(lambda_alpha) + |alpha| - 1.
    """
    ctx = _ctx(ctx)
    n, p = ctx.n, ctx.p
    nonconst = [(al, v) for al, v in zeta.terms.items() if sum(al)]
    if nonconst:
        slack = min(valuation(v, p) + sum(al) - 1 for al, v in nonconst)
        inner = max(1, N - slack)
    else:
        inner = N
    images = [_group_minus_one_image(g, inner, ctx) for g in zeta.generators]
    body = WeylElement(n)
    floor = INF
    powers = {}
    for al, lam in zeta.terms.items():
        w = WeylElement.scalar(n, lam)
        for i, e in enumerate(al):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = images[i] ** e
                w = w * powers[key]
        body = body + w
        m = sum(al)
        if m and zeta.generators and any(zeta.generators[i] for i, e in enumerate(al) if e):
            floor = min(floor, valuation(lam, p) + inner + m - 1)
    if floor < N:
        raise PrecisionError(f"could only certify valuation {floor} < {N}")
    return TruncatedWeyl(body, floor)
