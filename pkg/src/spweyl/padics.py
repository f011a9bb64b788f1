"""Rational scalars with p-adic valuation and series truncation bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

INF = math.inf


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime ``p`` together with the rank ``n`` (matrices are 2n x 2n)."""

    p: int = 3
    n: int = 2
    d: int = field(init=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not _is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "d", 2 * self.n * self.n + self.n)


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def _vp_int(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def valuation(r, ctx: PrimeContext | int):
    """p-adic valuation of a rational; ``INF`` for zero."""
    p = ctx if isinstance(ctx, int) else ctx.p
    r = as_rational(r)
    if r == 0:
        return INF
    return _vp_int(abs(r.numerator), p) - _vp_int(r.denominator, p)


def digit_sum(k: int, p: int) -> int:
    s = 0
    while k:
        k, rem = divmod(k, p)
        s += rem
    return s


def factorial_valuation(k: int, ctx: PrimeContext | int) -> int:
    """v_p(k!) by Legendre's digit-sum formula."""
    p = ctx if isinstance(ctx, int) else ctx.p
    if k < 0:
        raise ValueError("k must be non-negative")
    return (k - digit_sum(k, p)) // (p - 1)


def legendre_count(k: int, p: int) -> int:
    total, q = 0, p
    while q <= k:
        total += k // q
        q *= p
    return total


def series_term_floor(k: int, ctx: PrimeContext | int) -> int:
    """Lower bound k - v_p(k!) for the valuation of p^k / k!."""
    return k - factorial_valuation(k, ctx)


def truncation_order(N: int, ctx: PrimeContext | int) -> int:
    """Smallest K with k - v_p(k!) >= N for every k >= K.

    Beyond ``ceil(N(p-1)/(p-2)) + 1`` the bound v_p(k!) <= (k-1)/(p-1) already
    forces the inequality, so a finite scan is exhaustive.
    """
    p = ctx if isinstance(ctx, int) else ctx.p
    if p < 3:
        raise ValueError("p must be odd")
    if N < 1:
        raise ValueError("N must be >= 1")
    ceiling = -(-N * (p - 1) // (p - 2)) + 1
    K = ceiling + 1
    for k in range(ceiling, -1, -1):
        if series_term_floor(k, p) >= N:
            K = k
        else:
            break
    return K


@dataclass(frozen=True)
class PrecisionBudget:
    N: int
    K_trunc: int

    @classmethod
    def for_floor(cls, N: int, ctx: PrimeContext | int) -> "PrecisionBudget":
        return cls(N, truncation_order(N, ctx))

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("precision floor must be >= 1")


def min_valuation(values, ctx):
    return min((valuation(v, ctx) for v in values), default=INF)


def format_rational(r) -> str:
    r = as_rational(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def rational_to_json(r) -> dict:
    r = as_rational(r)
    return {"num": str(r.numerator), "den": str(r.denominator)}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def valuation_to_json(v):
    return "inf" if v == INF else v
