"""Command-line entry point: ``spweyl <command> ...``.

Every flag can also be set through an environment variable named
``SPWEYL_<FLAG>`` (for example ``SPWEYL_N=3``); an explicit flag wins.

Expressions use '*' for products and '^' for powers; '^' binds tighter than
unary minus, so ``-x1^2`` means -(x1^2).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import sys
from fractions import Fraction

from spweyl import symplectic as sp
from spweyl.envelope import (IwasawaElement, PBWElement, exp_p, format_pbw,
                             iwasawa_to_weyl, pbw_multiply)
from spweyl.expr import SORTS, ParseError, SortError, format_value, parse
from spweyl.metaplectic import rho, sigma
from spweyl.modaction import act
from spweyl.padics import PrimeContext, format_rational
from spweyl.suites import SUITES, run_suite
from spweyl.verify import ExperimentConfig, faithfulness_experiment, multiplication_map_check
from spweyl.weyl import tau

ENV_PREFIX = "SPWEYL_"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env(name: str, default, conv=str):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    try:
        return conv(raw)
    except ValueError:
        raise UsageError(f"bad value {raw!r} for {ENV_PREFIX}{name.upper()}") from None


def _common() -> argparse.ArgumentParser:
    par = argparse.ArgumentParser(add_help=False)
    g = par.add_argument_group("context")
    g.add_argument("--n", type=int, default=_env("n", 2, int), help="rank n (default 2)")
    g.add_argument("--p", type=int, default=_env("p", 3, int), help="odd prime p (default 3)")
    g.add_argument("--precision", type=int, default=_env("precision", 6, int),
                   help="p-adic precision N (default 6)")
    g.add_argument("--cap", type=int, default=_env("cap", 2, int),
                   help="Iwasawa degree cap (default 2)")
    g.add_argument("--window", type=int, default=_env("window", 12, int),
                   help="probe degree window (default 12)")
    g.add_argument("--seed", type=int, default=_env("seed", 0, int),
                   help="seed for randomized checks (default 0)")
    g.add_argument("--format", choices=("text", "json"), default=_env("format", "text"))
    g.add_argument("--json", action="store_const", const="json", dest="format",
                   help="shorthand for --format json")
    g.add_argument("--timing", action="store_true",
                   default=_env("timing", False, lambda s: s not in ("", "0", "false")),
                   help="add per-check seconds to JSON reports")
    return par


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = argparse.ArgumentParser(
        prog="spweyl", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    s = add("bracket", "Lie bracket of two sp_2n elements")
    s.add_argument("e1")
    s.add_argument("e2")
    s = add("rho", "image of a Lie element in the Weyl algebra")
    s.add_argument("e")
    s = add("mul", "product in a sort (lie: product in the enveloping algebra)")
    s.add_argument("sort", choices=SORTS)
    s.add_argument("e1")
    s.add_argument("e2")
    s = add("act", "apply a Weyl element to a (Laurent) polynomial")
    s.add_argument("w")
    s.add_argument("f")
    s = add("tau", "Fourier automorphism tau_i of the Weyl algebra")
    s.add_argument("i", type=int)
    s.add_argument("e")
    s = add("sigma", "automorphism sigma_i of sp_2n")
    s.add_argument("i", type=int)
    s.add_argument("e")
    s = add("exp", "truncated e^{pg} in the enveloping algebra")
    s.add_argument("e")
    s = add("expand", "Weyl image of an Iwasawa element given as JSON (or @file)")
    s.add_argument("iwasawa")
    s = add("verify", "run a verification suite")
    s.add_argument("--suite", default=_env("suite", "all"),
                   choices=SUITES + ("all",))
    s = add("check", "run a verification suite and print a JSON report")
    s.add_argument("suite", choices=SUITES + ("all",))
    s = add("rank", "certified rank experiment from a JSON config (or @file)")
    s.add_argument("config")
    return top


def _load_json(arg: str):
    try:
        if arg.startswith("@"):
            with open(arg[1:], encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(arg)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON: {exc}") from None


def jsonable(obj):
    """Recursively convert values to plain JSON (rationals as text, inf as "inf")."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf"
        return obj
    return obj


def _floor(v):
    return "inf" if v == math.inf else int(v)


def _value(cmd: str, sort: str, text: str, **extra) -> tuple[int, dict, str]:
    payload = {"command": cmd, "sort": sort, "result": text, **extra}
    line = text
    if extra.get("tail_floor", "inf") != "inf":
        line = f"{text}  + O(p^{extra['tail_floor']})"
    return EXIT_OK, payload, line


def _reports(cmd: str, reports, args, extra=None) -> tuple[int, dict, str]:
    ok = all(r.passed for r in reports)
    payload = {"command": cmd, "all_pass": ok,
               "checks": [r.to_json(timing=args.timing) for r in reports]}
    payload.update(extra or {})
    lines = [r.line() for r in reports]
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return (EXIT_OK if ok else EXIT_FAIL), payload, "\n".join(lines)


def _dispatch(args) -> tuple[int, dict, str]:
    try:
        ctx = PrimeContext(p=args.p, n=args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.precision < 1:
        raise UsageError("--precision must be >= 1")
    if args.cap < 0 or args.window < 0:
        raise UsageError("--cap and --window must be non-negative")
    cmd = args.command

    if cmd == "bracket":
        x, y = parse(args.e1, "lie", ctx), parse(args.e2, "lie", ctx)
        return _value(cmd, "lie", format_value(sp.bracket_structure(x, y)))
    if cmd == "rho":
        return _value(cmd, "weyl", format_value(rho(parse(args.e, "lie", ctx), ctx)))
    if cmd == "mul":
        u, v = parse(args.e1, args.sort, ctx), parse(args.e2, args.sort, ctx)
        if args.sort == "lie":
            prod = pbw_multiply(PBWElement.from_sp(u, ctx.n), PBWElement.from_sp(v, ctx.n))
            return _value(cmd, "envelope", format_pbw(prod))
        return _value(cmd, args.sort, format_value(u * v))
    if cmd == "act":
        w = parse(args.w, "weyl", ctx)
        f = parse(args.f, "laurent", ctx)
        out = act(w, f)
        sort = "laurent" if any(e < 0 for g in out.terms for e in g) else "poly"
        return _value(cmd, sort, format_value(out))
    if cmd in ("tau", "sigma"):
        if not 1 <= args.i <= ctx.n:
            raise UsageError(f"index i must lie in 1..{ctx.n}")
        if cmd == "tau":
            return _value(cmd, "weyl", format_value(tau(args.i, parse(args.e, "weyl", ctx))))
        return _value(cmd, "lie", format_value(sigma(args.i, parse(args.e, "lie", ctx))))
    if cmd == "exp":
        t = exp_p(parse(args.e, "lie", ctx), args.precision, ctx)
        return _value(cmd, "envelope", format_pbw(t.body), precision=args.precision,
                      tail_floor=_floor(t.tail_floor))
    if cmd == "expand":
        try:
            zeta = IwasawaElement.from_json(_load_json(args.iwasawa), ctx)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed Iwasawa element: {exc}") from None
        t = iwasawa_to_weyl(zeta, args.precision, ctx)
        return _value(cmd, "weyl", format_value(t.body), precision=args.precision,
                      tail_floor=_floor(t.tail_floor))
    if cmd in ("verify", "check"):
        reports = run_suite(args.suite, ctx, precision=args.precision, cap=args.cap,
                            window=args.window, seed=args.seed)
        conf = {"n": ctx.n, "p": ctx.p, "precision": args.precision, "cap": args.cap,
                "window": args.window, "seed": args.seed}
        return _reports(cmd, reports, args, {"suite": args.suite, "config": conf})
    if cmd == "rank":
        obj = _load_json(args.config)
        if not isinstance(obj, dict):
            raise UsageError("rank config must be a JSON object")
        obj = dict(obj)
        kind = obj.pop("check", "faithfulness")
        try:
            cfg = ExperimentConfig.from_json(obj)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad config: {exc}") from None
        if kind == "faithfulness":
            report = faithfulness_experiment(cfg)
        elif kind == "multiplication":
            report = multiplication_map_check(cfg)
        else:
            raise UsageError(f"unknown check {kind!r}; use faithfulness or multiplication")
        return _reports(cmd, [report], args, {"config": cfg.to_json()})
    raise UsageError(f"unknown command {cmd!r}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        parser = build_parser()
    except UsageError as exc:
        print(f"spweyl: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, payload, text = _dispatch(args)
    except ParseError as exc:
        print(f"spweyl: parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except (SortError, UsageError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"spweyl: {msg}", file=stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"spweyl: {exc}", file=stderr)
        return EXIT_USAGE
    if args.format == "json":
        stdout.write(json.dumps(jsonable(payload), sort_keys=True, indent=2) + "\n")
    else:
        stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
