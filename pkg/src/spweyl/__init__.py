"""Exact computations with sp_2n, the Weyl algebra and the metaplectic map.

The package works over Q with a fixed odd prime p; p-adic information is
carried through valuations of exact rationals.
"""

from spweyl.padics import INF, PrimeContext, valuation
from spweyl.symplectic import SpElement, a, b, c
from spweyl.weyl import WeylElement
from spweyl.metaplectic import rho, sigma, sigma_total
from spweyl.modaction import LaurentPoly, Poly, act

__all__ = [
    "INF",
    "PrimeContext",
    "valuation",
    "SpElement",
    "a",
    "b",
    "c",
    "WeylElement",
    "rho",
    "sigma",
    "sigma_total",
    "Poly",
    "LaurentPoly",
    "act",
]

__version__ = "0.1.0"
