"""The metaplectic map rho: sp_2n -> A_n and the automorphisms sigma_i."""

from __future__ import annotations

from fractions import Fraction

from spweyl import symplectic as sp
from spweyl.linalg import solve
from spweyl.padics import PrimeContext
from spweyl.reports import CheckReport
from spweyl.symplectic import BasisIndex, SpElement
from spweyl.weyl import WeylElement, tau, weyl_commutator


def _n(ctx) -> int:
    return ctx if isinstance(ctx, int) else ctx.n


def rho_basis(idx: BasisIndex, n: int) -> WeylElement:
    idx.check(n)
    i, j = idx.i, idx.j
    X, D = WeylElement.x, WeylElement.d
    if idx.family == "A":
        out = -(X(j, n) * D(i, n))
        if i == j:
            out = out - Fraction(1, 2)
        return out
    if idx.family == "B":
        return D(i, n) * D(j, n)
    return -(X(i, n) * X(j, n))


def rho(x: SpElement, ctx: PrimeContext | int) -> WeylElement:
    n = _n(ctx)
    out = WeylElement(n)
    for idx, coef in x.items():
        out = out + rho_basis(idx, n) * coef
    return out


def verify_homomorphism(ctx) -> list:
    """Basis pairs (u, v) with [rho u, rho v] != rho [u, v]; empty when rho is a Lie map."""
    n = _n(ctx)
    B = sp.basis(n)
    images = {u: rho_basis(u, n) for u in B}
    bad = []
    for u in B:
        for v in B:
            lhs = weyl_commutator(images[u], images[v])
            rhs = rho(sp.bracket_structure(sp.element(u), sp.element(v)), n)
            if lhs != rhs:
                bad.append((u.text(), v.text()))
    return bad


# -- sigma_i from the explicit case tables -----------------------------------

def _sigma_basis(i: int, idx: BasisIndex) -> SpElement:
    fam, j, k = idx.family, idx.i, idx.j
    if fam == "A":
        if j == i and k == i:
            return -sp.a(i, i)
        if j == i:
            return -sp.c(i, k)
        if k == i:
            return -sp.b(j, i)
        return sp.a(j, k)
    # b_jk, c_jk are symmetric in (j, k): the two mixed cases coincide
    if fam == "B":
        if j == i and k == i:
            return -sp.c(i, i)
        if j == i:
            return sp.a(k, i)
        if k == i:
            return sp.a(j, i)
        return sp.b(j, k)
    if j == i and k == i:
        return -sp.b(i, i)
    if j == i:
        return sp.a(i, k)
    if k == i:
        return sp.a(i, j)
    return sp.c(j, k)


def sigma(i: int, x: SpElement) -> SpElement:
    out = SpElement()
    for idx, coef in x.items():
        out = out + coef * _sigma_basis(i, idx)
    return out


def sigma_chain(indices, x: SpElement) -> SpElement:
    """sigma_{i1} o sigma_{i2} o ... applied to x (rightmost first)."""
    for i in reversed(list(indices)):
        x = sigma(i, x)
    return x


def sigma_total(x: SpElement, ctx: PrimeContext | int) -> SpElement:
    return sigma_chain(range(1, _n(ctx) + 1), x)


# -- sigma_i as the pullback of tau_i along rho -------------------------------

class NotInImage(ArithmeticError):
    pass


def rho_preimage(w: WeylElement, ctx) -> SpElement:
    """The unique x in sp_2n with rho(x) = w."""
    n = _n(ctx)
    B = sp.basis(n)
    images = [rho_basis(u, n) for u in B]
    keys = sorted({k for im in images for k in im.terms} | set(w.terms))
    matrix = [[im.coefficient(*k) for im in images] for k in keys]
    sol = solve(matrix, [w.coefficient(*k) for k in keys])
    if sol is None:
        raise NotInImage(f"{w!r} is not in rho(sp_2n)")
    return SpElement(dict(zip(B, sol)))


def sigma_pullback(i: int, x: SpElement, ctx) -> SpElement:
    n = _n(ctx)
    return rho_preimage(tau(i, rho(x, n)), n)


# -- subalgebra images -----------------------------------------------------------

def image_generators(name: str, ctx) -> list[WeylElement]:
    n = _n(ctx)
    return [rho_basis(g, n) for g in sp.subalgebra(name, n)]


# Generators of the rho-images, written as monomials up to a non-zero scalar,
# keyed by (n, k). Transcribed from the displayed tables for 2 <= k <= n.
IMAGE_TABLES = {
    (2, 2): {
        "c^k": ["x1^2", "x1*x2", "x2^2"],
        "c~^k": ["x1*x2", "x2^2"],
        "c^k_+": ["x1^2", "x1*d2", "d2^2"],
        "c~^k_+": ["x1*d2", "d2^2"],
        "c^k_-": ["d1^2", "x2*d1", "x2^2"],
        "c~^k_-": ["x2*d1", "x2^2"],
    },
    (3, 2): {
        "c^k": ["x1^2", "x1*x2", "x1*x3", "x2^2"],
        "c~^k": ["x1*x2", "x1*x3", "x2^2"],
        "c^k_+": ["x1^2", "x1*d2", "x1*d3", "d2^2"],
        "c~^k_+": ["x1*d2", "x1*d3", "d2^2"],
        "c^k_-": ["d1^2", "x2*d1", "x3*d1", "x2^2"],
        "c~^k_-": ["x2*d1", "x3*d1", "x2^2"],
    },
    (3, 3): {
        "c^k": ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"],
        "c~^k": ["x1*x3", "x2*x3", "x3^2"],
        "c^k_+": ["x1^2", "x1*x2", "x2^2", "x1*d3", "x2*d3", "d3^2"],
        "c~^k_+": ["x1*d3", "x2*d3", "d3^2"],
        "c^k_-": ["d1^2", "d1*d2", "d2^2", "x3*d1", "x3*d2", "x3^2"],
        "c~^k_-": ["x3*d1", "x3*d2", "x3^2"],
    },
}

_CHAINS = {
    "c^k_+": ("c^k", lambda n, k: range(k, n + 1)),
    "c^k_-": ("c^k", lambda n, k: range(1, k)),
    "c~^k_+": ("c~^k", lambda n, k: range(k, n + 1)),
    "c~^k_-": ("c~^k", lambda n, k: range(1, k)),
}


def _named(template: str, k: int) -> str:
    return template.replace("k", str(k))


def _monomial_set(elems: list[WeylElement]):
    keys = set()
    for w in elems:
        if len(w) != 1:
            return None
        keys.add(next(iter(w.terms)))
    return keys


def check_image_tables(ctx) -> CheckReport:
    from spweyl.expr import parse

    n = _n(ctx)
    witnesses, checked = [], 0
    for (tn, k), table in IMAGE_TABLES.items():
        if tn != n:
            continue
        for template, monos in table.items():
            got = _monomial_set(image_generators(_named(template, k), n))
            want = {next(iter(parse(m, "weyl", n).terms)) for m in monos}
            checked += 1
            if got != want:
                witnesses.append({"k": k, "subalgebra": _named(template, k)})
    return CheckReport("image_tables", not witnesses, witnesses,
                       {"n": n, "tables_checked": checked})


def verify_automorphic_images(ctx) -> CheckReport:
    """sigma-chain images of c^k, c~^k span the catalogued c^k_+-, c~^k_+- ."""
    n = _n(ctx)
    witnesses, checked = [], 0
    for k in range(1, n + 1):
        for target, (source, chain) in _CHAINS.items():
            src = [sp.element(g) for g in sp.subalgebra(_named(source, k), n)]
            image = [sigma_chain(list(chain(n, k)), x) for x in src]
            expected = [sp.element(g) for g in sp.subalgebra(_named(target, k), n)]
            checked += 1
            if not sp.spans_equal(image, expected):
                witnesses.append({"k": k, "subalgebra": _named(target, k),
                                  "image": [sp.format_sp(x) for x in image]})
    return CheckReport("automorphic_images", not witnesses, witnesses,
                       {"n": n, "spans_checked": checked})


def check_sigma_tables(ctx) -> CheckReport:
    """Case tables agree with the tau-pullback, and rho o sigma_i = tau_i o rho."""
    n = _n(ctx)
    witnesses = []
    for i in range(1, n + 1):
        for idx in sp.basis(n):
            x = sp.element(idx)
            s = sigma(i, x)
            if s != sigma_pullback(i, x, n):
                witnesses.append({"i": i, "x": idx.text(), "problem": "pullback"})
            if rho(s, n) != tau(i, rho(x, n)):
                witnesses.append({"i": i, "x": idx.text(), "problem": "square"})
    return CheckReport("sigma_tables", not witnesses, witnesses,
                       {"n": n, "elements": n * len(sp.basis(n))})
