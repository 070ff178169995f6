"""Command line front end.

Subcommands::

    ringelhall hall-table --quiver a2.q --max-dim 2,2 --out t.json
    ringelhall mult --algebra SF --table t.json --lhs "s[[0,1]]" --rhs "s[[1,0]]"
    ringelhall mult --algebra B --chi "1,-1;0,1" --lhs "b{[1,0]}" --rhs "b{[0,1]}"
    ringelhall verify --suite serre --quiver a2.q

Exit codes: 0 on success, 1 on a failed check or a computation error, 2 on a
usage or parse error.  ``verify`` writes one JSON record per line to
standard output; the wall time goes to standard error so reruns with the
same seed are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .grammar import GrammarError, parse_element
from .hallalg import TableBoundError, cf_mult
from .hallnum import (CHECK_PRIME, DEFAULT_PRIMES, HallTable, NotPolynomialCount,
                      build_hall_table)
from .quantumhall import sf_mult
from .quiver import EulerForm, QuiverError
from .repfield import RepError
from .suites import SUITES, default_bound, resolve_quiver, run_suite, table_for
from .twistedalg import GraphCapExceeded, a_mult, b_mult, c_mult

__all__ = ["main", "build_parser", "parse_int_list", "parse_matrix"]


class UsageError(Exception):
    """Bad flags or malformed flag values (exit 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma separated integers, got {text!r}") from exc


def parse_matrix(text: str) -> EulerForm:
    """Row-major matrix such as ``"1,-1;0,1"``; entries may be fractions like ``1/2``."""
    try:
        rows = [[Fraction(x.strip()) for x in row.split(",")] for row in text.split(";")]
        return EulerForm.from_matrix(rows)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad matrix {text!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ringelhall", description="Hall algebras of quiver representations")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    h = sub.add_parser("hall-table", help="count, interpolate and export a Hall table")
    h.add_argument("--quiver", required=True)
    h.add_argument("--max-dim", required=True)
    h.add_argument("--max-total", type=int)
    h.add_argument("--primes", default=",".join(map(str, DEFAULT_PRIMES)))
    h.add_argument("--check-prime", type=int, default=CHECK_PRIME)
    h.add_argument("--out", required=True)

    m = sub.add_parser("mult", help="multiply two elements")
    m.add_argument("--algebra", required=True, choices=["CF", "SF", "A", "B", "C"])
    src = m.add_mutually_exclusive_group()
    src.add_argument("--table")
    src.add_argument("--chi")
    m.add_argument("--lhs", required=True)
    m.add_argument("--rhs", required=True)
    m.add_argument("--mode", default="sum", choices=["sum", "graph"])

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--quiver")
    v.add_argument("--table")
    v.add_argument("--max-dim")
    v.add_argument("--max-total", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=20)
    return p


def _err(msg: str):
    print(f"ringelhall: {msg}", file=sys.stderr)


def cmd_hall_table(args) -> int:
    q = resolve_quiver(args.quiver)
    dmax = parse_int_list(args.max_dim)
    if len(dmax) != q.n:
        raise UsageError(f"--max-dim has {len(dmax)} entries, the quiver has {q.n} vertices")
    T = build_hall_table(q, dmax, primes=parse_int_list(args.primes),
                         check_prime=args.check_prime or None, max_total=args.max_total)
    T.save(args.out)
    print(json.dumps({"out": args.out, "classes": len(T.classes),
                      "indecomposables": [[list(d) for d in lab] for lab in T.indecomposables]}))
    return 0


def cmd_mult(args) -> int:
    alg = args.algebra
    if alg in ("CF", "SF"):
        if not args.table:
            raise UsageError(f"algebra {alg} needs --table")
        T = HallTable.load(args.table)
        x, y = parse_element(args.lhs, alg), parse_element(args.rhs, alg)
        out = cf_mult(x, y, T) if alg == "CF" else sf_mult(x, y, T)
    else:
        if not args.chi:
            raise UsageError(f"algebra {alg} needs --chi")
        F = parse_matrix(args.chi)
        x, y = parse_element(args.lhs, alg), parse_element(args.rhs, alg)
        for e in (x, y):
            for k in e.terms:
                vecs = [k] if alg == "A" else list(k)
                if any(len(v) != F.n for v in vecs):
                    raise UsageError(f"dimension vectors must have length {F.n}")
        if alg == "A":
            out = a_mult(x, y, F)
        elif alg == "B":
            out = b_mult(x, y, F, args.mode)
        else:
            out = c_mult(x, y, F)
    print(out)
    return 0


def _table_for_verify(args):
    if args.table:
        return HallTable.load(args.table)
    q = resolve_quiver(args.quiver or "a2.q")
    dmax, max_total = default_bound(q, args.suite)
    if args.max_dim:
        dmax = parse_int_list(args.max_dim)
        max_total = args.max_total
    elif args.max_total is not None:
        max_total = args.max_total
    return table_for(q, tuple(dmax), max_total)


def cmd_verify(args) -> int:
    start = time.perf_counter()
    kind, _ = SUITES[args.suite]
    T = _table_for_verify(args) if kind == "table" else None
    recs = run_suite(args.suite, T=T, seed=args.seed, trials=args.trials)
    failed = [r for r in recs if r["status"] == "fail"]
    for r in recs:
        print(json.dumps(dict({"suite": args.suite}, **r), default=str))
    summary = {"suite": args.suite, "summary": True, "seed": args.seed, "trials": args.trials,
               "checks": len(recs), "failed": len(failed),
               "skipped": sum(r["status"] == "skipped" for r in recs),
               "status": "fail" if failed else "pass"}
    if failed:
        summary["first_failure"] = failed[0]["check"]
    print(json.dumps(summary, default=str))
    _err(f"suite {args.suite}: {time.perf_counter() - start:.2f}s wall time")
    return 1 if failed else 0


COMMANDS = {"hall-table": cmd_hall_table, "mult": cmd_mult, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.cmd is None:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        return COMMANDS[args.cmd](args)
    except (UsageError, GrammarError) as exc:
        _err(str(exc))
        return 2
    except FileNotFoundError as exc:
        _err(str(exc))
        return 2
    except (QuiverError, RepError, NotPolynomialCount, TableBoundError, GraphCapExceeded,
            ArithmeticError, KeyError, ValueError) as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
