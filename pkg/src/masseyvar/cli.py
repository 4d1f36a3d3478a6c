"""Command line interface; every command prints one JSON report."""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Optional, Sequence

from . import ffield, groupcoh, torsor
from .arith import UnfactoredError
from .groups import FiniteGroup, GroupTableError
from .masseyq import (
    SquareClassTriple,
    decide_massey_q,
    integral_search_demo,
    massey_defined_local,
)
from .places import Place

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_DISAGREE = 0, 1, 2, 3


class CliError(Exception):
    pass


def _triple(args) -> SquareClassTriple:
    try:
        return SquareClassTriple.from_values(args.a, args.b, args.c)
    except UnfactoredError as exc:
        raise CliError(f"could not factor input: {exc}") from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from exc


def _inputs(args, t: SquareClassTriple) -> dict:
    return {"given": [x.strip() for x in (args.a, args.b, args.c)], "square_classes": list(t.as_tuple())}


def cmd_decide(args) -> tuple[dict, int]:
    t = _triple(args)
    height = None if args.no_certificate else args.height
    v = decide_massey_q(t, height, max_points=args.max_points, time_budget=args.time_budget)
    body = {"inputs": _inputs(args, t), "verdict": v.to_dict()}
    return body, EXIT_OK if v.vanishes else EXIT_NO


def cmd_local(args) -> tuple[dict, int]:
    t = _triple(args)
    try:
        place = Place.parse(args.place)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    lv = massey_defined_local(t, place)
    return {"inputs": _inputs(args, t), "verdict": lv.to_dict()}, EXIT_OK if lv.solvable else EXIT_NO


def cmd_ff_sweep(args) -> tuple[dict, int]:
    try:
        F = ffield.FqField.of_order(args.q)
        report = ffield.sweep(F)
    except (ValueError, ffield.FieldSizeError) as exc:
        raise CliError(f"unsupported q = {args.q}: {exc}") from exc
    return {"verdict": report.to_dict()}, EXIT_OK if report.passed else EXIT_NO


def _bitstring(s: str, n: int) -> list[int]:
    if len(s) != n or set(s) - {"0", "1"}:
        raise CliError(f"character {s!r} must be a bit string of length {n}")
    return [int(ch) for ch in s]


def cmd_massey_group(args) -> tuple[dict, int]:
    try:
        G = FiniteGroup.load(args.groupfile)
    except (OSError, GroupTableError) as exc:
        raise CliError(f"cannot load group: {exc}") from exc
    a, b, c = (_bitstring(s, G.order) for s in (args.a_bits, args.b_bits, args.c_bits))
    try:
        res = groupcoh.triple_massey(G, a, b, c)
        verdict = {"group": G.name, "order": G.order, "massey": res.to_dict()}
        agree = True
        if args.brute_force:
            brute = groupcoh.brute_force_massey(G, a, b, c)
            verdict["brute_force"] = brute.to_dict()
            agree &= brute.status == res.status
            if res.defined:
                coset = groupcoh.coset_classes(G, res)
                verdict["coset_law"] = coset == brute.values
                agree &= coset == brute.values
        if args.dwyer:
            lift = groupcoh.u4_lift_exists(G, a, b, c)
            verdict["u4_lift"] = lift
            agree &= (lift is not None) == (res.status == groupcoh.CONTAINS_ZERO)
    except groupcoh.CochainError as exc:
        raise CliError(str(exc)) from exc
    if args.brute_force or args.dwyer:
        verdict["agreement"] = agree
    if not agree:
        code = EXIT_DISAGREE
    else:
        code = EXIT_OK if res.status == groupcoh.CONTAINS_ZERO else EXIT_NO
    return {"verdict": verdict}, code


def cmd_verify_torsor(args) -> tuple[dict, int]:
    try:
        results = torsor.run_checks(mutate=args.mutate, only=args.only)
    except KeyError as exc:
        raise CliError(str(exc.args[0])) from exc
    body = {"verdict": {"mutated": args.mutate, "checks": results, "all_pass": all(results.values())}}
    return body, EXIT_OK if all(results.values()) else EXIT_NO


def cmd_integral_search(args) -> tuple[dict, int]:
    t = _triple(args)
    try:
        primes = [int(p) for p in args.primes.split(",") if p]
        report = integral_search_demo(t, primes, args.height, max_points=args.max_points)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    return {"inputs": _inputs(args, t), "verdict": report.to_dict()}, EXIT_OK if report.found else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="masseyvar",
        description="Triple Massey products <a,b,c> mod 2 and the variety b x^2 = N(y).",
    )
    parser.add_argument("--no-timing", action="store_true", help="omit the timing block")
    sub = parser.add_subparsers(dest="command", required=True)

    def triple_args(p):
        for name in ("a", "b", "c"):
            p.add_argument(name, help="nonzero rational, e.g. -3 or 5/7")

    p = sub.add_parser("decide", help="decide vanishing over Q and search for a rational point")
    triple_args(p)
    p.add_argument("--height", type=int, default=200, help="certificate search height (default 200)")
    p.add_argument("--no-certificate", action="store_true")
    p.add_argument("--max-points", type=int, default=None, help="deterministic search budget")
    p.add_argument("--time-budget", type=float, default=None, help="seconds; may cut the search short")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("local", help="Hilbert symbols and local solvability at one place")
    triple_args(p)
    p.add_argument("--place", required=True, help="'inf' or a prime")
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("ff-sweep", help="exhaustive norm-image and point checks over F_q")
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_ff_sweep)

    p = sub.add_parser("massey-group", help="triple Massey product for a finite group")
    p.add_argument("groupfile")
    p.add_argument("a_bits")
    p.add_argument("b_bits")
    p.add_argument("c_bits")
    p.add_argument("--brute-force", action="store_true", help="cross-check over all defining systems")
    p.add_argument("--dwyer", action="store_true", help="cross-check with a homomorphism to U_4")
    p.set_defaults(func=cmd_massey_group)

    p = sub.add_parser("verify-torsor", help="exact polynomial and representation checks")
    p.add_argument("--mutate", action="store_true", help="run the deliberately broken variants")
    p.add_argument("--only", choices=list(torsor.CHECKS), default=None)
    p.set_defaults(func=cmd_verify_torsor)

    p = sub.add_parser("integral-search", help="bounded search for points over Z[1/S] (never conclusive)")
    triple_args(p)
    p.add_argument("--primes", required=True, help="comma separated primes in S")
    p.add_argument("--height", type=int, default=20)
    p.add_argument("--max-points", type=int, default=None)
    p.set_defaults(func=cmd_integral_search)
    return parser


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


_NEG_FRACTION = re.compile(r"^-\d+/\d+$")


def run(argv: Optional[Sequence[str]] = None) -> tuple[dict, int]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    # argparse takes "-4/9" for an option; a leading space keeps it positional and Fraction ignores it
    args = parser.parse_args([" " + x if _NEG_FRACTION.match(x) else x for x in argv])
    command = [x for x in argv if x != "--no-timing"]
    start = time.perf_counter()
    try:
        body, code = args.func(args)
    except CliError as exc:
        body, code = {"error": str(exc)}, EXIT_ERROR
    report = {"command": command, **body}
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        report, code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_ERROR if exc.code else EXIT_OK
    print(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
