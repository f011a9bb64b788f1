"""Decidable finite checks for the injectivity statements about rho.

Passing experiments corroborate the corresponding statements at the stated
caps; they prove nothing about the completed algebras.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from spweyl import symplectic as sp
from spweyl.envelope import IwasawaElement, PBWElement, iwasawa_to_weyl, rho_hat
from spweyl.linalg import (EchelonBasis, integer_vector, matmul_list, nullspace,
                           padic_minor_valuation, rank)
from spweyl.metaplectic import (check_image_tables, check_sigma_tables, sigma,
                                verify_automorphic_images, verify_homomorphism)
from spweyl.modaction import (act, as_window, monomials_up_to,
                              stacked_matrix)
from spweyl.padics import INF, PrimeContext, valuation, valuation_to_json
from spweyl.reports import CheckReport

GAP_NOTE = ("finite shadow: independence of a capped operator family is weaker "
            "than faithfulness of the completed algebra")


# -- exponent maps ------------------------------------------------------------

def _check_index_set(I, n: int):
    I = [tuple(t) for t in I]
    if len(set(I)) != len(I):
        raise ValueError("repeated index pair")
    seen = set(I)
    for i, j in I:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"index pair {(i, j)} out of range for n={n}")
        if i != j and (j, i) in seen:
            raise ValueError(f"both {(i, j)} and {(j, i)} present")
    return I


def exponent_map(I, ctx) -> list[list[int]]:
    """n x |I| integer matrix of alpha -> sum alpha_ij (e_i + e_j)."""
    n = ctx if isinstance(ctx, int) else ctx.n
    I = _check_index_set(I, n)
    return [[int(k == i) + int(k == j) for (i, j) in I] for k in range(1, n + 1)]


def exponent_map_injective(I, ctx) -> bool:
    """Injective on N_0^I iff full column rank over Q."""
    m = exponent_map(I, ctx)
    return rank([[Fraction(x) for x in row] for row in m]) == len(list(I))


def exponent_collision(I, ctx):
    """Two distinct alpha, beta in N_0^I with equal image, or None."""
    m = exponent_map(I, ctx)
    k = len(list(I))
    if k == 0:
        return None
    ker = nullspace([[Fraction(x) for x in row] for row in m], k)
    if not ker:
        return None
    v = integer_vector(ker[0])
    alpha = [max(x, 0) for x in v]
    beta = [max(-x, 0) for x in v]
    return alpha, beta


def apply_exponent_map(I, alpha, ctx):
    m = exponent_map(I, ctx)
    return [sum(r * a for r, a in zip(row, alpha)) for row in m]


def brute_force_collision(I, ctx, box: int = 4):
    """Search {0..box}^|I| for two multi-indices with the same image."""
    seen = {}
    for alpha in itertools.product(range(box + 1), repeat=len(list(I))):
        img = tuple(apply_exponent_map(I, alpha, ctx))
        if img in seen:
            return seen[img], alpha
        seen[img] = alpha
    return None


# -- experiment configuration -------------------------------------------------

@dataclass
class ExperimentConfig:
    ctx: PrimeContext = field(default_factory=PrimeContext)
    n_part: str = "c"
    h_part: str | None = None
    iwasawa_degree_cap: int = 2
    pbw_degree_cap: int = 0
    probe_degree: int = 12
    window: int | None = None
    precision: int = 6
    seeds: list = field(default_factory=list)

    def __post_init__(self):
        if self.iwasawa_degree_cap < 0 or self.pbw_degree_cap < 0 or self.probe_degree < 0:
            raise ValueError("caps must be non-negative")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        if self.window is not None:
            for s in self.seeds:
                if sum(abs(e) for e in s) > self.window:
                    raise ValueError(f"seed {s} lies outside the window")

    def to_json(self) -> dict:
        return {
            "n": self.ctx.n, "p": self.ctx.p, "n_part": self.n_part, "h_part": self.h_part,
            "iwasawa_degree_cap": self.iwasawa_degree_cap,
            "pbw_degree_cap": self.pbw_degree_cap, "probe_degree": self.probe_degree,
            "window": self.window, "precision": self.precision,
            "seeds": [list(s) for s in self.seeds],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentConfig":
        obj = dict(obj)
        ctx = PrimeContext(p=int(obj.pop("p", 3)), n=int(obj.pop("n", 2)))
        seeds = [tuple(s) for s in obj.pop("seeds", [])]
        known = {f for f in cls.__dataclass_fields__} - {"ctx", "seeds"}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(ctx=ctx, seeds=seeds, **obj)


def multi_indices(m: int, cap: int):
    out = [al for al in itertools.product(range(cap + 1), repeat=m) if sum(al) <= cap]
    return sorted(out, key=lambda al: (sum(al), tuple(-x for x in al)))


# -- certified rank -----------------------------------------------------------

def certified_rank_report(columns, floors, probes, p: int, window=None):
    """Decide whether operators known only up to valuation floors are independent.

    ``columns`` are Weyl elements, ``floors[j]`` bounds the valuation of the
    discarded part of column j. Images of integral probes are stacked; each
    column is divided by p^s_j (s_j its least valuation), and the least
    valuation delta of the maximal minors is compared with the smallest
    perturbation floor_j - s_j. delta below that bound means no admissible
    perturbation can drop the rank.
    """
    m = stacked_matrix(columns, probes, window, strict=window is None)
    entries = m.entries
    ncols = len(columns)
    shifts = []
    for j in range(ncols):
        s = min((valuation(row[j], p) for row in entries if row[j]), default=INF)
        shifts.append(s)
    q_rank = rank(entries) if entries else 0
    margin = min((f - s for f, s in zip(floors, shifts)), default=INF)
    delta = INF
    if all(s != INF for s in shifts):
        scaled = [[x * Fraction(p) ** (-shifts[j]) if x else x for j, x in enumerate(row)]
                  for row in entries]
        delta = padic_minor_valuation(scaled, p)
    certified = q_rank == ncols and delta != INF and delta < margin
    return {
        "columns": ncols,
        "rows": len(entries),
        "exact_rank": q_rank,
        "minor_valuation": valuation_to_json(delta),
        "perturbation_floor": valuation_to_json(margin),
        "certified": certified,
        "matrix": m,
    }


def _generators(name: str, n: int):
    return [sp.element(idx) for idx in sp.subalgebra(name, n)]


def _kernel_witness(m, ncols):
    ker = nullspace(m.entries, ncols) if m.entries else [[1] + [0] * (ncols - 1)]
    return [str(x) for x in integer_vector(ker[0])]


def faithfulness_experiment(cfg: ExperimentConfig) -> CheckReport:
    """Independence of rho((G-1)^alpha), |alpha| <= cap, on the probe monomials."""
    t0 = time.perf_counter()
    ctx, n, p = cfg.ctx, cfg.ctx.n, cfg.ctx.p
    gens = _generators(cfg.n_part, n)
    ops, floors, labels = [], [], []
    for al in multi_indices(len(gens), cfg.iwasawa_degree_cap):
        tw = iwasawa_to_weyl(IwasawaElement.monomial(gens, al), cfg.precision, ctx)
        ops.append(tw.body)
        floors.append(tw.tail_floor)
        labels.append(list(al))
    probes = [tuple(s) for s in cfg.seeds] or monomials_up_to(n, cfg.probe_degree)
    window = as_window(cfg.window)
    res = certified_rank_report(ops, floors, probes, p, window)
    mat = res.pop("matrix")
    details = {**res, "generators": cfg.n_part, "cap": cfg.iwasawa_degree_cap,
               "probes": len(probes), "probe_degree": cfg.probe_degree,
               "precision": cfg.precision, "n": n, "p": p,
               "verdict": "corroborates" if res["certified"] else "inconclusive",
               "note": GAP_NOTE}
    witnesses = []
    if not res["certified"]:
        if res["exact_rank"] < len(ops):
            witnesses.append({"kernel": _kernel_witness(mat, len(ops)),
                              "alphas": labels})
        else:
            witnesses.append({"uncertified": "minor valuation not below the precision floor"})
    return CheckReport(f"faithfulness[{cfg.n_part}]", res["certified"], witnesses, details,
                       time.perf_counter() - t0)


def independent_images(words: list[PBWElement]):
    """Subset of ``words`` whose rho-images form a basis of their span."""
    e = EchelonBasis()
    keep = []
    for u in words:
        w = rho_hat(u)
        if e.add(w.terms):
            keep.append((u, w))
    return keep


def pbw_monomials(gens, n: int, cap: int) -> list[PBWElement]:
    pos = {}
    base = sp.basis(n)
    index = {idx: k for k, idx in enumerate(base)}
    for g in gens:
        (idx, _), = g.items()
        pos[len(pos)] = index[idx]
    out = []
    for al in multi_indices(len(gens), cap):
        e = [0] * len(base)
        for k, a in enumerate(al):
            e[pos[k]] += a
        out.append(PBWElement(n, {tuple(e): 1}))
    return out


def multiplication_map_check(cfg: ExperimentConfig) -> CheckReport:
    """Finite shadow of injectivity of KN (x) rho(U(n)) -> rho(completed U(n)).

    Operators (N-1)^alpha * rho(u) for |alpha| <= iwasawa cap and u running over
    a basis of the image of PBW monomials of degree <= pbw cap, applied to
    the seeds; projection onto the window when one is given.
    """
    t0 = time.perf_counter()
    ctx, n, p = cfg.ctx, cfg.ctx.n, cfg.ctx.p
    gens = _generators(cfg.n_part, n)
    us = independent_images(pbw_monomials(gens, n, cfg.pbw_degree_cap))
    ops, floors = [], []
    for al in multi_indices(len(gens), cfg.iwasawa_degree_cap):
        tw = iwasawa_to_weyl(IwasawaElement.monomial(gens, al), cfg.precision, ctx)
        for _, w in us:
            ops.append(tw.body * w)
            floors.append(tw.tail_floor + _weyl_val(w, p))
    seeds = [tuple(s) for s in cfg.seeds] or [(0,) * n]
    window = as_window(cfg.window)
    res = certified_rank_report(ops, floors, seeds, p, window)
    mat = res.pop("matrix")
    passed = res["exact_rank"] == len(ops)
    witnesses = [] if passed else [{"kernel": _kernel_witness(mat, len(ops))}]
    details = {**res, "n_part": cfg.n_part, "image_basis": len(us),
               "iwasawa_cap": cfg.iwasawa_degree_cap, "pbw_cap": cfg.pbw_degree_cap,
               "window": cfg.window, "seeds": [list(s) for s in seeds], "note": GAP_NOTE}
    return CheckReport(f"multiplication_map[{cfg.n_part}]", passed, witnesses, details,
                       time.perf_counter() - t0)


def _weyl_val(w, p):
    return min((valuation(v, p) for v in w.terms.values()), default=INF)


# -- local finiteness ---------------------------------------------------------

def local_finiteness_check(h_ops, filtration_ops, seed, dim_cap: int,
                           iter_cap: int) -> CheckReport:
    """Close span{seed} under the operators; pass if it stabilises within the caps."""
    ops = list(h_ops) + list(filtration_ops)
    basis = EchelonBasis()
    basis.add(seed.terms)
    frontier = [seed]
    for rnd in range(iter_cap + 1):
        if not frontier:
            return CheckReport("local_finiteness", True, [],
                               {"dimension": len(basis), "rounds": rnd})
        if rnd == iter_cap:
            break
        new = []
        for v in frontier:
            for op in ops:
                w = act(op, v)
                if basis.add(w.terms):
                    new.append(w)
                    if len(basis) > dim_cap:
                        from spweyl.expr import format_poly

                        return CheckReport("local_finiteness", False,
                                           [{"escaping": format_poly(w)}],
                                           {"dimension": len(basis), "rounds": rnd + 1})
        frontier = new
    from spweyl.expr import format_poly

    return CheckReport("local_finiteness", False,
                       [{"unsettled": [format_poly(v) for v in frontier[:3]]}],
                       {"dimension": len(basis), "rounds": iter_cap})


# -- irreducibility -----------------------------------------------------------

def _flat(mat):
    return {(r, c): v for r, row in enumerate(mat) for c, v in enumerate(row) if v}


def burnside_irreducibility(action) -> CheckReport:
    """Dimension of the associative algebra generated by the matrices (and 1).

    Equal to d^2 exactly when the action is absolutely irreducible; a smaller
    value is reported as 'not absolutely irreducible', which says nothing
    about irreducibility over Q_p.
    """
    mats = [[[Fraction(x) for x in row] for row in m] for m in action]
    if not mats:
        raise ValueError("need at least one matrix")
    d = len(mats[0])
    if any(len(m) != d or any(len(r) != d for r in m) for m in mats):
        raise ValueError("matrices must be square of one size")
    ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    basis = EchelonBasis()
    frontier = []
    for m in [ident] + mats:
        if basis.add(_flat(m)):
            frontier.append(m)
    while frontier:
        new = []
        for x in frontier:
            for g in mats:
                y = matmul_list(g, x)
                if basis.add(_flat(y)):
                    new.append(y)
        frontier = new
    dim = len(basis)
    ok = dim == d * d
    details = {"d": d, "algebra_dimension": dim,
               "verdict": "absolutely irreducible" if ok else "not absolutely irreducible"}
    return CheckReport("burnside", ok, [] if ok else [{"algebra_dimension": dim}], details)


def adjoint_matrices(acting: str, module: str, ctx) -> list:
    """Matrices of ad(x), x in ``acting``, on the span of ``module``."""
    n = ctx if isinstance(ctx, int) else ctx.n
    mod = sp.subalgebra(module, n)
    pos = {idx: k for k, idx in enumerate(mod)}
    out = []
    for x in sp.subalgebra(acting, n):
        mat = [[Fraction(0)] * len(mod) for _ in mod]
        for col, y in enumerate(mod):
            br = sp.bracket_structure(sp.element(x), sp.element(y))
            for idx, v in br.items():
                if idx not in pos:
                    raise ValueError(f"{module} is not stable under ad({x.text()})")
                mat[pos[idx]][col] = v
        out.append(mat)
    return out


# -- golden tables and cross-implementation checks ---------------------------

def _pairs(n):
    B = sp.basis(n)
    return [(u, v) for u in B for v in B]


def check_bracket_agreement(n: int) -> CheckReport:
    bad = [(u.text(), v.text()) for u, v in _pairs(n)
           if sp.bracket_structure(sp.element(u), sp.element(v))
           != sp.bracket_matrix(sp.element(u), sp.element(v), n)]
    return CheckReport("bracket_agreement", not bad, bad[:10],
                       {"n": n, "pairs": len(_pairs(n))})


def check_antisymmetry(n: int) -> CheckReport:
    bad = [(u.text(), v.text()) for u, v in _pairs(n)
           if sp.bracket(sp.element(u), sp.element(v)) + sp.bracket(sp.element(v), sp.element(u))]
    return CheckReport("antisymmetry", not bad, bad[:10], {"n": n})


def check_jacobi(n: int) -> CheckReport:
    B = [sp.element(u) for u in sp.basis(n)]
    br = sp.bracket
    cache = {}

    def bb(x, y):
        key = (x, y)
        if key not in cache:
            cache[key] = br(x, y)
        return cache[key]

    bad = []
    for x, y, z in itertools.product(B, repeat=3):
        if bb(x, bb(y, z)) + bb(y, bb(z, x)) + bb(z, bb(x, y)):
            bad.append([sp.format_sp(t) for t in (x, y, z)])
    return CheckReport("jacobi", not bad, bad[:10], {"n": n, "triples": len(B) ** 3})


def check_abelian(n: int) -> CheckReport:
    bad = []
    for fam in ("b", "c"):
        gens = [sp.element(i) for i in sp.subalgebra(fam, n)]
        bad += [[sp.format_sp(x), sp.format_sp(y)] for x in gens for y in gens
                if sp.bracket(x, y)]
    return CheckReport("b_c_abelian", not bad, bad[:10], {"n": n})


def catalogued_names(n: int) -> list[str]:
    names = []
    for template in sp.SUBALGEBRA_NAMES:
        if "k" not in template:
            names.append(template)
            continue
        for k in range(0, n + 1):
            name = template.replace("k", str(k))
            try:
                sp.subalgebra(name, n)
            except ValueError:
                continue
            names.append(name)
    return names


def check_subalgebra_closure(n: int) -> CheckReport:
    bad = [name for name in catalogued_names(n) if not sp.is_closed(sp.subalgebra(name, n))]
    return CheckReport("subalgebra_closure", not bad, bad, {"n": n,
                                                            "subalgebras": len(catalogued_names(n))})


def check_homomorphism(n: int) -> CheckReport:
    bad = verify_homomorphism(n)
    return CheckReport("homomorphism", not bad, bad[:10], {"n": n, "pairs": len(_pairs(n))})


def check_sigma_automorphism(n: int) -> CheckReport:
    """sigma_i preserves brackets and sigma_i^4 = id on the basis."""
    bad = []
    B = [sp.element(u) for u in sp.basis(n)]
    for i in range(1, n + 1):
        for x in B:
            y = x
            for _ in range(4):
                y = sigma(i, y)
            if y != x:
                bad.append({"i": i, "x": sp.format_sp(x), "problem": "order"})
            for z in B:
                if sigma(i, sp.bracket(x, z)) != sp.bracket(sigma(i, x), sigma(i, z)):
                    bad.append({"i": i, "x": sp.format_sp(x), "y": sp.format_sp(z),
                                "problem": "bracket"})
    return CheckReport("sigma_automorphism", not bad, bad[:10], {"n": n})


def check_exponent_maps(n: int, box: int = 4) -> CheckReport:
    witnesses = []
    row1 = [(1, j) for j in range(1, n + 1)]
    families = [row1] + [[(i, k) for i in range(1, n + 1)] for k in range(1, n + 1)]
    for I in families:
        if not exponent_map_injective(I, n):
            witnesses.append({"I": I, "problem": "expected injective"})
    bad_I = [(1, 1), (2, 2), (1, 2)]
    col = exponent_collision(bad_I, n)
    if exponent_map_injective(bad_I, n) or col is None or \
            apply_exponent_map(bad_I, col[0], n) != apply_exponent_map(bad_I, col[1], n):
        witnesses.append({"I": bad_I, "problem": "expected a collision"})
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    compared = 0
    for size in range(0, 5):
        for I in itertools.combinations(pairs, size):
            for orient in itertools.product((False, True), repeat=size):
                J = [(j, i) if o else (i, j) for (i, j), o in zip(I, orient)]
                if any(o and i == j for (i, j), o in zip(I, orient)):
                    continue
                compared += 1
                if exponent_map_injective(J, n) != (brute_force_collision(J, n, box) is None):
                    witnesses.append({"I": J, "problem": "brute force disagrees"})
    return CheckReport("exponent_maps", not witnesses, witnesses[:10],
                       {"n": n, "index_sets_compared": compared,
                        "collision": {"alpha": col[0], "beta": col[1]} if col else None})


def table_suite(ctx) -> list[CheckReport]:
    n = ctx if isinstance(ctx, int) else ctx.n
    if n not in (2, 3):
        raise ValueError("the table suite is defined for n in {2, 3}")
    checks = [check_bracket_agreement, check_antisymmetry, check_abelian,
              check_subalgebra_closure, check_homomorphism, check_sigma_tables,
              check_sigma_automorphism, verify_automorphic_images, check_image_tables]
    if n == 2:
        checks.insert(2, check_jacobi)
    out = []
    for chk in checks:
        t0 = time.perf_counter()
        r = chk(n)
        r.seconds = time.perf_counter() - t0
        out.append(r)
    return out
