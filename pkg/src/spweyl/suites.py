"""Named groups of checks run by ``spweyl verify``."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from spweyl import randgen
from spweyl import symplectic as sp
from spweyl.envelope import IwasawaElement, exp_p, iwasawa_to_weyl, rho_hat
from spweyl.expr import SORTS, format_value, parse
from spweyl.metaplectic import image_generators
from spweyl.modaction import Poly, act, coefficient_recovery, monomials_up_to
from spweyl.padics import PrimeContext, valuation
from spweyl.reports import CheckReport
from spweyl.verify import (ExperimentConfig, adjoint_matrices, burnside_irreducibility,
                           check_exponent_maps, faithfulness_experiment,
                           local_finiteness_check, multiplication_map_check,
                           table_suite)
from spweyl.weyl import weyl_valuation


def _timed(fn, *args):
    t0 = time.perf_counter()
    r = fn(*args)
    r.seconds = time.perf_counter() - t0
    return r


def expansion_check(ctx: PrimeContext, precision: int) -> CheckReport:
    """(C_12 - 1) . X_1X_2 starts -p X_1^2X_2^2 + p^2/2 X_1^3X_2^3."""
    p = ctx.p
    zeta = IwasawaElement.monomial([sp.c(1, 2)], [1])
    tw = iwasawa_to_weyl(zeta, precision, ctx)
    mono = (1, 1) + (0,) * (ctx.n - 2)
    img = act(tw.body, Poly.monomial(mono))
    lead = sorted(img.terms.items(), key=lambda kv: sum(kv[0]))[:2]
    want = [((2, 2) + (0,) * (ctx.n - 2), -p), ((3, 3) + (0,) * (ctx.n - 2), Fraction(p * p, 2))]
    got = list(lead)
    ok = got == want and [valuation(v, p) for _, v in got] == [1, 2]
    details = {"leading": [[list(g), str(v), valuation(v, p)] for g, v in got],
               "tail_floor": tw.tail_floor}
    return CheckReport("cor_expansion", ok, [] if ok else [details], details)


def recovery_check(ctx, seed: int, count: int = 100, deg: int = 4) -> CheckReport:
    rng = random.Random(seed)
    n = ctx.n
    probes = monomials_up_to(n, deg)
    bad = []
    for k in range(count):
        z = randgen.weyl(rng, n, deg)
        images = {g: act(z, Poly.monomial(g)) for g in probes}
        if coefficient_recovery(images, n) != z:
            bad.append({"index": k, "element": format_value(z)})
    return CheckReport("recovery_roundtrip", not bad, bad[:5], {"count": count, "seed": seed})


def precision_check(ctx, seed: int, count: int = 50) -> CheckReport:
    """Recompute at N + 5 and compare every term of valuation below N."""
    rng = random.Random(seed)
    n, p = ctx.n, ctx.p
    bad = []
    B = sp.basis(n)
    for k in range(count):
        N = rng.randint(1, 4)
        if k % 2 == 0:
            g = sp.SpElement({rng.choice(B): rng.randint(-3, 3) for _ in range(2)})
            lo, hi = exp_p(g, N, ctx), exp_p(g, N + 5, ctx)
            diffs = [(lo.body - hi.body).valuation(p),
                     weyl_valuation(rho_hat(lo.body) - rho_hat(hi.body), p)]
            label = format_value(g)
        else:
            gens = [sp.element(rng.choice(B)) for _ in range(2)]
            terms = {(rng.randint(0, 2), rng.randint(0, 1)): randgen.rational(rng)
                     for _ in range(2)}
            zeta = IwasawaElement(gens, terms)
            lo, hi = iwasawa_to_weyl(zeta, N, ctx), iwasawa_to_weyl(zeta, N + 5, ctx)
            diffs = [weyl_valuation(lo.body - hi.body, p)]
            label = str(zeta.to_json())
        if min(diffs) < N:
            bad.append({"index": k, "instance": label, "N": N, "difference": min(diffs)})
    return CheckReport("precision_soundness", not bad, bad[:5], {"count": count, "seed": seed})


def parser_check(ctx, seed: int, count: int = 500) -> CheckReport:
    rng = random.Random(seed)
    bad = []
    for k in range(count):
        sort = SORTS[k % len(SORTS)]
        v = randgen.value(rng, sort, ctx.n)
        text = format_value(v)
        if parse(text, sort, ctx) != v:
            bad.append({"sort": sort, "text": text})
    return CheckReport("parser_roundtrip", not bad, bad[:5], {"count": count, "seed": seed})


def faithfulness_suite(ctx, precision: int, cap: int, window: int) -> list[CheckReport]:
    configs = [
        ExperimentConfig(ctx=ctx, n_part="a0", iwasawa_degree_cap=cap,
                         probe_degree=min(6, window), precision=precision),
        ExperimentConfig(ctx=ctx, n_part="c", iwasawa_degree_cap=cap,
                         probe_degree=window, precision=precision),
        ExperimentConfig(ctx=ctx, n_part="g", iwasawa_degree_cap=min(cap, 1),
                         probe_degree=window, precision=precision),
    ]
    return [faithfulness_experiment(c) for c in configs]


def multiplication_suite(ctx, precision: int, cap: int) -> list[CheckReport]:
    return [multiplication_map_check(ExperimentConfig(
        ctx=ctx, n_part=name, iwasawa_degree_cap=cap, pbw_degree_cap=2, precision=precision))
        for name in ("c^1", "c")]


def local_suite(ctx) -> list[CheckReport]:
    n = ctx.n
    seed = Poly.monomial((1, 1) + (0,) * (n - 2))
    out = []
    r = local_finiteness_check(image_generators("a0", n), [], seed, 1, 3)
    r.name = "local_finiteness[a0]"
    out.append(r)
    slice_dim = len(monomials_up_to(n, 2, 2))
    r = local_finiteness_check(image_generators("a", n), [], seed, slice_dim, 10)
    r.name = "local_finiteness[a]"
    out.append(r)
    return out


SUITES = ("tables", "exponents", "expansion", "faithfulness", "multiplication",
          "burnside", "local", "recovery", "precision", "parser")


def run_suite(name: str, ctx: PrimeContext, *, precision: int = 6, cap: int = 2,
              window: int = 12, seed: int = 0) -> list[CheckReport]:
    if name == "all":
        out = []
        for s in SUITES:
            out += run_suite(s, ctx, precision=precision, cap=cap, window=window, seed=seed)
        return out
    if name == "tables":
        return table_suite(ctx)
    if name == "exponents":
        return [_timed(check_exponent_maps, ctx.n)]
    if name == "expansion":
        return [_timed(expansion_check, ctx, precision)]
    if name == "faithfulness":
        return faithfulness_suite(ctx, precision, cap, window)
    if name == "multiplication":
        return multiplication_suite(ctx, precision, cap)
    if name == "burnside":
        r = _timed(burnside_irreducibility, adjoint_matrices("a", "c", ctx.n))
        r.name = "burnside[a on c]"
        return [r]
    if name == "local":
        return local_suite(ctx)
    if name == "recovery":
        return [_timed(recovery_check, ctx, seed)]
    if name == "precision":
        return [_timed(precision_check, ctx, seed)]
    if name == "parser":
        return [_timed(parser_check, ctx, seed)]
    raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
