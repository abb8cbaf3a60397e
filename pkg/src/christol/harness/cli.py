"""Command-line interface.

Exit codes: 0 success, 1 property violation, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from ..automaton import build, deserialize, minimize, run, serialize
from ..bounds import theorem1_bound
from ..errors import BudgetExceededError, ChristolError
from ..furstenberg import series_prefix, validate
from ..gf import GF
from ..orbits import lambda_0_uni, lambda_r0, orbit
from ..polyalg import factor
from .conjectures import conjecture1, conjecture2, divisors, sweep
from .emit import emit_search, histogram_csv, reports_to_json, search_csv, search_to_json
from .parser import parse_bipoly, parse_uni
from .search import search
from .verify import flip_transition, verify_all

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _write(args, text: str):
    if args.out:
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_series(args, F) -> int:
    inp = validate(parse_bipoly(args.poly, F))
    pre = series_prefix(inp, args.n or 32)
    _write(args, " ".join(str(c) for c in pre.coeffs))
    return EXIT_OK


def cmd_build(args, F) -> int:
    a = build(validate(parse_bipoly(args.poly, F)), max_states=args.max_states)
    if args.minimize:
        a = minimize(a)
    if args.out:
        Path(args.out).write_text(serialize(a) + "\n")
    print(f"states={len(a)}")
    return EXIT_OK


def cmd_run(args, F) -> int:
    if args.automaton:
        a = deserialize(Path(args.automaton).read_text())
    elif args.poly:
        a = build(validate(parse_bipoly(args.poly, F)))
    else:
        raise ValueError("run needs --automaton or --poly")
    if args.n is None:
        raise ValueError("run needs --n")
    print(run(a, args.n).value)
    return EXIT_OK


def _print_orbit(rep):
    print(f"t={rep.transient} period={rep.period} size={rep.size}")


def cmd_orbit(args, F) -> int:
    inp = validate(parse_bipoly(args.poly, F))
    _print_orbit(orbit(inp.S0, lambda S: lambda_r0(S, inp.Q, 0), store=False))
    return EXIT_OK


def cmd_uniorbit(args, F) -> int:
    R = parse_uni(args.r, F)
    S = parse_uni(args.s, F)
    _print_orbit(orbit(S, lambda T: lambda_0_uni(T, R), store=False))
    return EXIT_OK


def cmd_bound(args, F) -> int:
    b = theorem1_bound(F.q, args.h, args.d)
    doc = {
        "q": b.q, "h": b.h, "d": b.d, "main": b.main, "orbit_term": b.orbit_term,
        "log_terms": b.log_terms, "total": b.total, "without_main": b.without_main,
        "ratio": float(b.ratio), "trivial": b.trivial,
    }
    if args.format == "json":
        _write(args, json.dumps(doc, indent=2))
    else:
        _write(args, " ".join(f"{k}={v}" for k, v in doc.items()))
    return EXIT_OK


def cmd_search(args, F) -> int:
    try:
        res = search(F, args.h, args.d, jobs=args.jobs, budget=args.budget)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(search_to_json(exc.partial))
        return EXIT_BUDGET
    if args.out:
        for p in emit_search(res, args.format, args.out):
            print(f"wrote {p}", file=sys.stderr)
    elif args.format == "json":
        print(search_to_json(res))
    else:
        print(search_csv([res]), end="")
        print(histogram_csv(res.histogram), end="")
    return EXIT_OK


def cmd_verify(args, F) -> int:
    tamper = flip_transition if args.tamper else None
    rep = verify_all(F, args.h, args.d, N=args.n or 512, tamper=tamper)
    for name, count in rep.violations.items():
        print(f"{name}: {'ok' if not count else f'{count} violations'}")
    print(f"candidates={rep.candidates} max_minimized={rep.max_minimized} "
          f"bound={rep.bound_total}")
    if not rep.ok:
        dump = json.dumps(rep.counterexamples, indent=2)
        if args.out:
            Path(args.out).write_text(dump + "\n")
        else:
            print(dump)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_conjecture(args, F) -> int:
    if args.r:
        R = parse_uni(args.r, F)
        ms = [args.m] if args.m else None
        if ms is None:
            ms = divisors(math.lcm(*factor(R).degrees)) if R.code(0) else []
        reports = [conjecture1(R, m) for m in ms] + [conjecture2(R)]
        _write(args, reports_to_json(reports))
        return EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATION
    res = sweep(F, args.max_deg)
    print(f"q={res.q} max_deg={res.max_deg} polys={res.polys} "
          f"conjecture1_checks={res.conjecture1_checks} "
          f"conjecture2_checks={res.conjecture2_checks} "
          f"counterexamples={len(res.counterexamples)}")
    if res.counterexamples:
        _write(args, reports_to_json(res.counterexamples))
        return EXIT_VIOLATION
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="field characteristic")
    common.add_argument("--e", type=int, default=1, help="extension degree")
    common.add_argument("--n", type=int, default=None, help="length or index")
    common.add_argument("--out", default=None, help="output file")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--jobs", type=int, default=1)

    ap = argparse.ArgumentParser(prog="christol", description="Automata for algebraic series over finite fields.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("series", parents=[common], help="series coefficients")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("build", parents=[common], help="build the automaton")
    p.add_argument("--poly", required=True)
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--max-states", type=int, default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("run", parents=[common], help="evaluate the automaton at --n")
    p.add_argument("--automaton", default=None)
    p.add_argument("--poly", default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("orbit", parents=[common], help="orbit of S0 under lambda_{0,0}")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("uniorbit", parents=[common], help="orbit of S under lambda_0")
    p.add_argument("--r", required=True)
    p.add_argument("--s", required=True)
    p.set_defaults(func=cmd_uniorbit)

    for name, func, hlp in (("bound", cmd_bound, "size bound"),
                            ("search", cmd_search, "exhaustive search of a cell"),
                            ("verify", cmd_verify, "property checks over a cell")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--h", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.set_defaults(func=func)
        if name == "search":
            p.add_argument("--budget", type=int, default=None,
                           help="maximum number of coefficient tuples to visit")
        if name == "verify":
            p.add_argument("--tamper", action="store_true", help="inject a transition fault")

    p = sub.add_parser("conjecture", parents=[common], help="fixed-space experiments")
    p.add_argument("--r", default=None, help="single R; default sweeps all small R")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--max-deg", type=int, default=4)
    p.set_defaults(func=cmd_conjecture)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        F = GF(args.p, args.e)
        return args.func(args, F)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ChristolError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
