"""Acceptance criteria 1-12.

All comparisons are exact (rational arithmetic, zero tolerance). Time budgets
are pinned per criterion in BUDGET_SECONDS. Each criterion records one
PASS/FAIL line, printed at the end of the pytest session; running this file
directly prints the same lines.
"""

import itertools
import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from spweyl import symplectic as sp
from spweyl.envelope import IwasawaElement, iwasawa_to_weyl
from spweyl.metaplectic import (check_image_tables, check_sigma_tables,
                                verify_automorphic_images, verify_homomorphism)
from spweyl.modaction import Poly, act
from spweyl.padics import PrimeContext, valuation
from spweyl.suites import parser_check, precision_check, recovery_check
from spweyl.verify import (ExperimentConfig, adjoint_matrices, burnside_irreducibility,
                           check_exponent_maps, faithfulness_experiment)

TOLERANCE = "exact (zero tolerance)"
BUDGET_SECONDS = {1: 1, 2: 5, 3: 5, 4: 60, 5: 60, 6: 60, 7: 60, 8: 600, 9: 60,
                  10: 60, 11: 300, 12: 120}
SEEDS = {10: 0, 11: 0, 12: 0}
RESULTS: dict[int, str] = {}


def record(k: int, title: str, ok: bool, seconds: float, detail: str = "") -> bool:
    within = seconds < BUDGET_SECONDS[k]
    status = "PASS" if ok and within else "FAIL"
    RESULTS[k] = (f"criterion {k:2d} {status}  {title}: {detail} "
                  f"[{TOLERANCE}; {seconds:.2f}s of {BUDGET_SECONDS[k]}s budget]")
    return ok and within


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def c1():
    def run():
        bad = 0
        for n in (2, 3):
            B = [sp.element(i) for i in sp.basis(n)]
            bad += sum(sp.bracket_structure(x, y) != sp.bracket_matrix(x, y, n)
                       for x, y in itertools.product(B, B))
        return bad
    bad, t = timed(run)
    return record(1, "bracket agreement n=2,3 (100 + 441 pairs)", bad == 0, t,
                  f"{bad} disagreements")


def c2():
    bad, t = timed(lambda: verify_homomorphism(2) + verify_homomorphism(3))
    return record(2, "rho homomorphism n=2,3", not bad, t, f"{len(bad)} violations")


def c3():
    def run():
        B = [sp.element(i) for i in sp.basis(2)]
        br = sp.bracket_structure
        return sum(bool(br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y)))
                   for x, y, z in itertools.product(B, B, B))
    bad, t = timed(run)
    return record(3, "Jacobi identity n=2 (1000 triples)", bad == 0, t, f"{bad} failures")


def c4():
    reps, t = timed(lambda: [check_sigma_tables(n) for n in (2, 3)])
    ok = all(r.passed for r in reps)
    return record(4, "sigma tables = rho-pullback and rho.sigma_i = tau_i.rho, n=2,3", ok, t,
                  "; ".join(f"{r.name}:{'ok' if r.passed else r.witnesses[:1]}" for r in reps))


def c5():
    reps, t = timed(lambda: [verify_automorphic_images(3), check_image_tables(2),
                             check_image_tables(3)])
    ok = all(r.passed for r in reps)
    return record(5, "automorphic span equalities n=3 k=1..3, golden image tables", ok, t,
                  ", ".join(f"{r.name}={'pass' if r.passed else 'fail'}" for r in reps))


def c6():
    r, t = timed(lambda: check_exponent_maps(3, box=4))
    col = r.details.get("collision")
    return record(6, "exponent maps: families injective, collision, brute force |I|<=4",
                  r.passed, t, f"{r.details['index_sets_compared']} index sets, collision {col}")


def c7():
    ctx = PrimeContext(3, 2)

    def run():
        tw = iwasawa_to_weyl(IwasawaElement.monomial([sp.c(1, 2)], [1]), 6, ctx)
        img = act(tw.body, Poly.monomial((1, 1)))
        return sorted(img.terms.items(), key=lambda kv: sum(kv[0]))[:2], tw.tail_floor
    (lead, floor), t = timed(run)
    want = [((2, 2), Fraction(-3)), ((3, 3), Fraction(9, 2))]
    vals = [valuation(v, 3) for _, v in lead]
    ok = lead == want and vals == [1, 2] and floor >= 6
    return record(7, "(C12-1).X1X2 at p=3, N=6", ok, t,
                  f"terms {[(g, str(v)) for g, v in lead]}, valuations {vals}")


def c8():
    ctx = PrimeContext(3, 2)
    cfgs = [
        ExperimentConfig(ctx=ctx, n_part="a0", iwasawa_degree_cap=2, probe_degree=6, precision=6),
        ExperimentConfig(ctx=ctx, n_part="c", iwasawa_degree_cap=2, probe_degree=12, precision=6),
        ExperimentConfig(ctx=ctx, n_part="g", iwasawa_degree_cap=1, probe_degree=12, precision=6),
    ]
    reps, t = timed(lambda: [faithfulness_experiment(c) for c in cfgs])
    full = all(r.details["exact_rank"] == r.details["columns"] for r in reps)
    certified = all(r.passed for r in reps)
    return record(8, "faithfulness KA_0 / KC / KG at n=2, p=3, N=6", full and certified, t,
                  ", ".join(f"{r.name} rank {r.details['exact_rank']}/{r.details['columns']}"
                            f" {'certified' if r.passed else 'uncertified'}" for r in reps))


def c9():
    reps, t = timed(lambda: [burnside_irreducibility(adjoint_matrices("a", "c", n))
                             for n in (2, 3)])
    dims = [r.details["algebra_dimension"] for r in reps]
    return record(9, "Burnside dimension of a acting on c", dims == [9, 36], t,
                  f"dimensions {dims} (want [9, 36])")


def c10():
    r, t = timed(lambda: recovery_check(PrimeContext(3, 2), SEEDS[10], count=100, deg=4))
    return record(10, "coefficient recovery roundtrip, 100 elements, deg<=4", r.passed, t,
                  f"seed {SEEDS[10]}, {len(r.witnesses)} failures")


def c11():
    r, t = timed(lambda: precision_check(PrimeContext(3, 2), SEEDS[11], count=50))
    return record(11, "precision soundness N vs N+5, 50 instances", r.passed, t,
                  f"seed {SEEDS[11]}, {len(r.witnesses)} disagreements")


def _cli(argv):
    return subprocess.run([sys.executable, "-m", "spweyl", *argv], capture_output=True,
                          check=False).stdout


def c12():
    def run():
        r = parser_check(PrimeContext(3, 2), SEEDS[12], count=500)
        runs = [["verify", "--suite", "parser", "--json"],
                ["expand", json.dumps({"generators": ["c(1,2)"],
                                       "terms": [{"alpha": [2], "coeff": "1/3"}]})],
                ["rank", json.dumps({"n_part": "a0", "probe_degree": 4}), "--json"]]
        same = all(_cli(a) == _cli(a) != b"" for a in runs)
        return r, same
    (r, same), t = timed(run)
    return record(12, "parser roundtrip 500 values / CLI byte-identical reruns",
                  r.passed and same, t,
                  f"{len(r.witnesses)} roundtrip failures, cli deterministic={same}")


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12]


@pytest.mark.parametrize("k", range(1, 13))
def test_criterion(k):
    ok = CRITERIA[k - 1]()
    assert ok, RESULTS[k]


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        failed += not fn()
        print(RESULTS[k], flush=True)
    sys.exit(1 if failed else 0)
