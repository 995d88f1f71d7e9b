"""Command line entry point: ``python -m mopiso <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constructive import isolate_theorem1, isolate_theorem2
from .gen import FAMILY_NAMES, FamilySpec, build_family, enumerate_mops
from .harness import (
    CHECKS,
    CampaignConfig,
    InstanceFileError,
    Source,
    default_workers,
    dump_instance,
    random_corpus,
    read_instances,
    verify_corpus,
)
from .solvers import dominating_by_coloring, gamma_exact, iota_exact, is_isolating_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(lines, out):
    if out is None:
        for line in lines:
            print(line)
        return
    with open(out, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")


def cmd_enumerate(args) -> int:
    _emit((dump_instance(m) for m in enumerate_mops(args.n)), args.out)
    return EXIT_OK


def cmd_random(args) -> int:
    if args.n < 3 or args.count < 0 or args.seed < 0:
        raise ValueError("need n >= 3, count >= 0 and a non-negative seed")
    _emit((dump_instance(m) for m in random_corpus(args.n, args.count, args.seed)), args.out)
    return EXIT_OK


def cmd_family(args) -> int:
    m = build_family(FamilySpec(args.name, args.param))
    _emit([dump_instance(m)], args.out)
    return EXIT_OK


def _upper_bound_set(m, k: int):
    # constructive sets: a dominating set isolates K_{1,1}; the two
    # K_{1,2} constructions need n >= 5
    if k == 0:
        return dominating_by_coloring(m)
    if m.n < 5:
        return iota_exact(m, 1).members
    return min((isolate_theorem1(m)[0].members, isolate_theorem2(m)[0].members), key=lambda s: (len(s), sorted(s)))


def cmd_solve(args) -> int:
    for m in read_instances(args.inp):
        if args.exact:
            found = iota_exact(m, args.k, args.cap)
            members = None if found is None else found.to_json()
        else:
            members = sorted(_upper_bound_set(m, args.k))
        row = {
            "n": m.n,
            "k": args.k,
            "exact": args.exact,
            "size": None if members is None else len(members),
            "set": members,
        }
        if args.exact and args.gamma:
            g = gamma_exact(m, args.cap)
            row["gamma"] = None if g is None else len(g)
        print(json.dumps(row, sort_keys=True))
    return EXIT_OK


def cmd_construct(args) -> int:
    fn = isolate_theorem1 if args.method == "theorem1" else isolate_theorem2
    status = EXIT_OK
    for m in read_instances(args.inp):
        S, trace = fn(m)
        ok = is_isolating_set(m, S.members, 1)
        row = {"n": m.n, "method": args.method, "size": len(S), "set": S.to_json(), "valid": ok}
        if args.trace:
            row["trace"] = trace.to_json()
        print(json.dumps(row, sort_keys=True))
        if not ok:
            status = EXIT_FAIL
    return status


def cmd_verify(args) -> int:
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    workers = 1 if args.single_thread else (args.workers or default_workers())
    cfg = CampaignConfig(
        source=Source.parse(args.source),
        checks=checks,
        exact=args.exact,
        size_cap=args.cap,
        exact_limit=args.exact_limit,
        output=args.report,
        workers=workers,
    )
    report = verify_corpus(cfg)
    for line in report.summary_lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mopiso", description="Isolating sets of maximal outerplanar graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enumerate", help="write every mop of order n as JSONL")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("random", help="write seeded uniform random mops as JSONL")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("family", help="write one member of a named family")
    s.add_argument("--name", choices=FAMILY_NAMES, required=True)
    s.add_argument("--param", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("solve", help="exact minimum isolating sets")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--k", type=int, choices=(0, 1), required=True)
    s.add_argument("--exact", action="store_true", help="minimum sets by exhaustive search (default: constructive upper bound)")
    s.add_argument("--cap", type=int, help="largest set size to try")
    s.add_argument("--gamma", action="store_true", help="with --exact, also report the domination number")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("construct", help="build a K_{1,2}-isolating set")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--method", choices=("theorem1", "theorem2"), required=True)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="run a verification campaign")
    s.add_argument("--source", required=True, help="enumerate:LO-HI | random:n=..,count=..,seed=.. | family:NAME=P,... | file:PATH")
    s.add_argument("--checks", default=",".join(CHECKS), help=f"comma list from {','.join(CHECKS)}")
    s.add_argument("--exact", action="store_true", help="also run the exact solvers")
    s.add_argument("--cap", type=int, help="largest set size tried by the exact solvers")
    s.add_argument("--exact-limit", type=int, help="largest order solved exactly (random default 20)")
    s.add_argument("--report", required=True)
    s.add_argument("--workers", type=int, help="worker processes (default: CPU count)")
    s.add_argument("--single-thread", action="store_true", help="run in-process, one instance at a time")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFileError, OSError, ValueError) as exc:
        print(f"mopiso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
