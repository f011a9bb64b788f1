"""Polynomial and Laurent-polynomial modules over the Weyl algebra.

x_i acts by multiplication by X_i and d_i by the formal derivative in X_i,
which makes sense for negative exponents too. Infinite modules are only ever
seen through finite windows of monomials; anything that leaves a declared
window is an error unless projection is asked for explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from spweyl.linalg import integer_vector, nullspace, rank
from spweyl.padics import INF, as_rational, format_rational, valuation
from spweyl.weyl import WeylElement


class _Poly:
    laurent = False
    __slots__ = ("n", "_t", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        t = {}
        for g, v in (terms or {}).items():
            v = as_rational(v)
            if not v:
                continue
            g = tuple(g)
            if len(g) != n:
                raise ValueError(f"exponent {g} has wrong length for n={n}")
            if not self.laurent and min(g, default=0) < 0:
                raise ValueError(f"negative exponent {g} in a polynomial")
            s = t.get(g, 0) + v
            if s:
                t[g] = s
            else:
                t.pop(g, None)
        self._t = t
        self._hash = None

    @classmethod
    def monomial(cls, gamma, coeff=1):
        return cls(len(gamma), {tuple(gamma): coeff})

    @classmethod
    def scalar(cls, n: int, value):
        return cls(n, {(0,) * n: value})

    @classmethod
    def var(cls, i: int, n: int):
        return cls.monomial(tuple(int(k == i - 1) for k in range(n)))

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items(), key=lambda kv: poly_order(kv[0]))

    def coefficient(self, gamma) -> Fraction:
        return self._t.get(tuple(gamma), Fraction(0))

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == type(self).scalar(self.n, other)
        return (isinstance(other, _Poly) and self.laurent == other.laurent
                and self.n == other.n and self._t == other._t)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.laurent, self.n, frozenset(self._t.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, _Poly):
            if other.n != self.n:
                raise ValueError("polynomials over different n")
            if other.laurent and not self.laurent:
                return None
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).scalar(self.n, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._t)
        for g, v in o._t.items():
            out[g] = out.get(g, 0) + v
        return type(self)(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.n, {g: -v for g, v in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self)(self.n, {g: v * other for g, v in self._t.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for g, u in self._t.items():
            for h, v in o._t.items():
                k = tuple(x + y for x, y in zip(g, h))
                out[k] = out.get(k, 0) + u * v
        return type(self)(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.laurent or len(self._t) != 1:
                raise ValueError("negative powers need a Laurent monomial")
            (g, v), = self._t.items()
            return type(self)(self.n, {tuple(k * e for e in g): Fraction(1) / v ** -k})
        out = type(self).scalar(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        from spweyl.expr import format_poly

        return f"{type(self).__name__}({format_poly(self)!r})"


class Poly(_Poly):
    """Finite element of K[X_1..X_n]."""

    laurent = False
    __slots__ = ()


class LaurentPoly(_Poly):
    """Finite element of K[X_1^+-1..X_n^+-1]."""

    laurent = True
    __slots__ = ()

    @classmethod
    def from_poly(cls, f: Poly) -> "LaurentPoly":
        return cls(f.n, f.terms)


def poly_order(gamma):
    return (sum(abs(e) for e in gamma), tuple(-e for e in gamma))


def falling(g: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= g - t
    return out


def act_monomial(alpha, beta, gamma):
    """(x^alpha d^beta) . X^gamma as (coefficient, exponent)."""
    coef = 1
    for g, b in zip(gamma, beta):
        coef *= falling(g, b)
        if coef == 0:
            return 0, None
    return coef, tuple(g - b + a for g, b, a in zip(gamma, beta, alpha))


def act(w: WeylElement, f: _Poly) -> _Poly:
    if w.n != f.n:
        raise ValueError("operator and vector over different n")
    out = {}
    for (al, be), cw in w.terms.items():
        for g, cf in f.terms.items():
            k, e = act_monomial(al, be, g)
            if k:
                out[e] = out.get(e, 0) + cw * cf * k
    return type(f)(f.n, out)


def module_valuation(f: _Poly, ctx):
    return min((valuation(v, ctx) for v in f.terms.values()), default=INF)


def total_degree(f: _Poly) -> int:
    """Max of sum |gamma_i| over the support; -1 for zero."""
    return max((sum(abs(e) for e in g) for g in f.terms), default=-1)


def monomials_up_to(n: int, max_degree: int, min_degree: int = 0):
    """All exponent vectors in N_0^n with min_degree <= |gamma| <= max_degree."""
    out = [g for g in product(range(max_degree + 1), repeat=n)
           if min_degree <= sum(g) <= max_degree]
    return sorted(out, key=poly_order)


# -- action matrices ----------------------------------------------------------

class WindowEscape(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    """A set of exponent vectors given by a total degree cap and/or a predicate."""

    max_degree: int | None = None
    predicate: object = None
    allow_negative: bool = False

    def __contains__(self, gamma) -> bool:
        if not self.allow_negative and min(gamma, default=0) < 0:
            return False
        if self.max_degree is not None and sum(abs(e) for e in gamma) > self.max_degree:
            return False
        if self.predicate is not None and not self.predicate(gamma):
            return False
        return True


def as_window(window) -> Window | None:
    if window is None or isinstance(window, Window):
        return window
    if isinstance(window, int):
        return Window(max_degree=window)
    if callable(window):
        return Window(predicate=window, allow_negative=True)
    raise TypeError(f"cannot interpret {window!r} as a window")


@dataclass
class ActionMatrix:
    rows: list
    cols: list
    entries: list

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def to_text(self) -> str:
        """Coordinate format: header, sizes, then 1-based (row, col, value) triples."""
        lines = ["%%MatrixMarket matrix coordinate rational general"]
        nz = [(r, c, v) for r, row in enumerate(self.entries) for c, v in enumerate(row) if v]
        lines.append(f"{len(self.rows)} {len(self.cols)} {len(nz)}")
        lines += [f"{r + 1} {c + 1} {format_rational(v)}" for r, c, v in nz]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({
            "rows": [list(r) for r in self.rows],
            "cols": [str(c) for c in self.cols],
            "entries": [[format_rational(v) for v in row] for row in self.entries],
        })


def _images(ops, domain, window, strict, laurent):
    cls = LaurentPoly if laurent else Poly
    images, support = [], set()
    for oi, op in enumerate(ops):
        for m in domain:
            img = act(op, cls.monomial(m))
            keep = {}
            for g, v in img.terms.items():
                if window is not None and g not in window:
                    if strict:
                        raise WindowEscape(
                            f"operator #{oi} applied to X^{m} leaves the window at X^{g}")
                    continue
                keep[g] = v
            images.append(((oi, tuple(m)), keep))
            support.update(keep)
    return images, sorted(support, key=poly_order)


def action_matrix(ops, domain, window=None, strict: bool = True) -> ActionMatrix:
    """Column (op, m) holds the coefficients of op . X^m.

    Rows are the monomials of the window that actually occur. With
    ``strict=False`` rows outside the window are dropped (a projection, which
    can only lower the rank).
    """
    window = as_window(window)
    laurent = any(min(m, default=0) < 0 for m in domain)
    images, rows = _images(ops, domain, window, strict, laurent)
    index = {g: r for r, g in enumerate(rows)}
    entries = [[Fraction(0)] * len(images) for _ in rows]
    for col, (_, img) in enumerate(images):
        for g, v in img.items():
            entries[index[g]][col] = v
    return ActionMatrix(rows, [lbl for lbl, _ in images], entries)


def exact_rank(m) -> int:
    entries = m.entries if isinstance(m, ActionMatrix) else m
    return rank(entries)


def stacked_matrix(ops, probes, window=None, strict: bool = True) -> ActionMatrix:
    """One column per operator, stacking its images of every probe."""
    window = as_window(window)
    laurent = any(min(m, default=0) < 0 for m in probes)
    images, _ = _images(ops, probes, window, strict, laurent)
    rows = sorted({(tuple(m), g) for (_, m), img in images for g in img},
                  key=lambda r: (poly_order(r[0]), poly_order(r[1])))
    index = {r: k for k, r in enumerate(rows)}
    entries = [[Fraction(0)] * len(ops) for _ in rows]
    for (oi, m), img in images:
        for g, v in img.items():
            entries[index[(m, g)]][oi] = v
    return ActionMatrix(rows, list(range(len(ops))), entries)


def independence_check(ops, probes, window=None, strict: bool = True):
    """(True, None) if no non-zero combination of ``ops`` kills every probe.

    Otherwise (False, witness) with an integer kernel vector.
    """
    if not ops:
        return True, None
    m = stacked_matrix(ops, probes, window, strict)
    if not m.rows:
        return False, [1] + [0] * (len(ops) - 1)
    if exact_rank(m) == len(ops):
        return True, None
    kernel = nullspace(m.entries, len(ops))
    return False, integer_vector(kernel[0])


class InconsistentImages(ValueError):
    pass


def _lex_leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def coefficient_recovery(images: dict, n: int, max_x_degree: int | None = None,
                         max_d_degree: int | None = None) -> WeylElement:
    """Rebuild the Weyl element whose action on each X^gamma is ``images[gamma]``.

    The probe set must be closed downwards. Probes are handled in increasing
    lexicographic order; at probe gamma every d^beta with beta below gamma is
    already known and the remainder determines the d^gamma coefficients.

    Without bounds every assignment of polynomial images is realised, so
    inconsistency is only detectable against the optional degree bounds on
    x^alpha (|alpha|) and d^beta (|beta|).
    """
    probes = sorted(tuple(g) for g in images)
    pset = set(probes)
    for g in probes:
        for i, e in enumerate(g):
            if e and g[:i] + (e - 1,) + g[i + 1:] not in pset:
                raise ValueError(f"probe set is not closed downwards at {g}")
    lam = {}
    for g in probes:
        residual = dict(Poly(n, images[g].terms).terms)
        for (al, be), v in lam.items():
            if be != g and _lex_leq(be, g):
                k, e = act_monomial(al, be, g)
                if k:
                    residual[e] = residual.get(e, 0) - v * k
        scale = 1
        for e in g:
            scale *= falling(e, e)
        for al, v in residual.items():
            if not v:
                continue
            if (max_x_degree is not None and sum(al) > max_x_degree) or \
                    (max_d_degree is not None and sum(g) > max_d_degree):
                raise InconsistentImages(
                    f"the image of X^{g} needs x^{al} d^{g}, outside the degree bounds")
            lam[(al, g)] = Fraction(v) / scale
    zeta = WeylElement(n, lam)
    for g in probes:
        if act(zeta, Poly.monomial(g)) != Poly(n, images[g].terms):
            raise InconsistentImages(f"no Weyl element fits the image of X^{g}")
    return zeta

