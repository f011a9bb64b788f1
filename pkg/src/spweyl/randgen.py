"""Seeded random values for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from spweyl import symplectic as sp
from spweyl.modaction import LaurentPoly, Poly
from spweyl.symplectic import SpElement
from spweyl.weyl import WeylElement


def rational(rng: random.Random, size: int = 9) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def exponents(rng, length, deg, low=0):
    while True:
        e = [rng.randint(low, deg) for _ in range(length)]
        if sum(abs(x) for x in e) <= deg:
            return tuple(e)


def weyl(rng, n: int, deg: int, max_terms: int = 6) -> WeylElement:
    t = {}
    for _ in range(rng.randint(0, max_terms)):
        e = exponents(rng, 2 * n, deg)
        t[(e[:n], e[n:])] = rational(rng)
    return WeylElement(n, t)


def lie(rng, n: int, max_terms: int = 4, integral: bool = False) -> SpElement:
    B = sp.basis(n)
    t = {}
    for _ in range(rng.randint(0, max_terms)):
        t[rng.choice(B)] = rng.randint(-4, 4) if integral else rational(rng)
    return SpElement(t)


def poly(rng, n: int, deg: int, laurent: bool = False, max_terms: int = 6):
    cls = LaurentPoly if laurent else Poly
    t = {}
    for _ in range(rng.randint(0, max_terms)):
        t[exponents(rng, n, deg, -deg if laurent else 0)] = rational(rng)
    return cls(n, t)


def value(rng, sort: str, n: int):
    if sort == "lie":
        return lie(rng, n)
    if sort == "weyl":
        return weyl(rng, n, 4)
    return poly(rng, n, 4, laurent=sort == "laurent")
