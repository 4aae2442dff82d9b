"""Command-line front end.

Subcommands
    analyze    predicates, sumset size, best dilation and diagnostics of a set
    witness    find a subset summing to a target residue
    construct  emit a named set family in set-file format
    maxzsf     exact maximum zero-sum-free cardinality
    maxinc     exact maximum incomplete cardinality
    scan       theorem-verification campaign over a prime range
    pairs      the complementary pairing (i, n+1-i) of a set in [1, n]

Exit codes: 0 all checks passed, 1 violations found (reports are still
written), 2 usage or capability errors.
"""

from __future__ import annotations

import argparse
import sys

from ._version import __version__
from .analysis import (
    DILATION_SCAN_LIMIT,
    best_dilation,
    diagnostic_expectations,
    extremal_diagnostics,
    incomplete_diagnostics,
)
from .constructions import build_family, core_pairs
from .core import Modulus, ZpSet, is_prime, read_set_file
from .errors import CapabilityError
from .harness import THEOREM_IDS, emit_report, verify_theorem
from .search import DEFAULT_NODE_BUDGET, max_incomplete, max_zero_sum_free
from .sumsets import is_complete, is_zero_sum_free, subset_sums, witness


def _load_set(args) -> ZpSet:
    return read_set_file(args.set, Modulus(args.p))


def _cmd_analyze(args) -> int:
    a = _load_set(args)
    p = int(a.modulus)
    sums = subset_sums(a)
    zsf = is_zero_sum_free(a)
    complete = is_complete(a)
    print(f"p: {p}")
    print(f"elements: {' '.join(str(x) for x in a)}")
    print(f"signed: {' '.join(str(x) for x in a.signed())}")
    print(f"sumset_size: {len(sums)}")
    print(f"zero_sum_free: {zsf}")
    print(f"complete: {complete}")
    objective = "zsf" if zsf else "incomplete"
    rep = best_dilation(a, objective, scan_limit=args.dilation_limit, jobs=args.jobs)
    print(f"best_dilation[{objective}]: b={rep.b} total_norm={rep.stats.total_norm} "
          f"e1={rep.e1} e2={rep.e2}")
    if zsf:
        diag = extremal_diagnostics(a)
        print(f"diagnostics: n={diag.n} t={diag.t} s={diag.s} h={diag.h} D={diag.d_value} "
              f"lambda={diag.lam:.4f}")
        for key, value in diagnostic_expectations(diag).items():
            print(f"expect[{key}]: {value}")
    if not complete:
        idiag = incomplete_diagnostics(a)
        print(f"incomplete_split: n={idiag.n} t1={idiag.t1} "
              f"a2_pos={len(idiag.a2_pos)} a2_neg={len(idiag.a2_neg)}")
    return 0


def _cmd_witness(args) -> int:
    a = _load_set(args)
    w = witness(a, args.target)
    if w is None:
        print(f"target {args.target} unreachable")
        return 1
    print(f"target {args.target} = " + " + ".join(str(x) for x in w.subset))
    return 0


def _cmd_construct(args) -> int:
    fam = build_family(args.family, Modulus(args.p))
    lines = [f"# family {args.family} mod {args.p}"]
    lines += [str(x) for x in fam]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _fmt_result(kind: str, r) -> None:
    print(f"{kind} p={int(r.p)}: max_size={r.max_size} extremal_count={r.extremal_count} "
          f"exhaustive={r.exhaustive} nodes={r.nodes_explored}")
    for rep in r.representatives:
        print("  witness: " + " ".join(str(x) for x in rep))


def _cmd_maxzsf(args) -> int:
    r = max_zero_sum_free(Modulus(args.p), node_budget=args.node_budget, jobs=args.jobs)
    _fmt_result("maxzsf", r)
    return 0


def _cmd_maxinc(args) -> int:
    r = max_incomplete(Modulus(args.p), node_budget=args.node_budget, jobs=args.jobs)
    _fmt_result("maxinc", r)
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _cmd_scan(args) -> int:
    lo, hi = _parse_range(args.p)
    report = verify_theorem(
        args.theorem,
        lo,
        hi,
        jobs=args.jobs,
        node_budget=args.node_budget,
        timestamp=not args.no_timestamp,
    )
    text = emit_report(report, args.format, args.out)
    if args.out:
        print(f"wrote {args.out}: {report.n_pass} pass / {report.n_fail} fail")
    else:
        sys.stdout.write(text)
    return 0 if report.all_passed else 1


def _cmd_pairs(args) -> int:
    n = args.n
    if args.set is not None and args.p is not None:
        a = read_set_file(args.set, Modulus(args.p))
    else:
        p = n + 2
        while not is_prime(p):
            p += 1
        a = ZpSet.of(range(1, n + 1), Modulus(p))
    pairing = core_pairs(a, n)
    print(f"n: {n}")
    print(f"pairs: {len(pairing.pairs)}")
    for u, v in pairing.pairs:
        print(f"  {u} + {v} = {n + 1}")
    print(f"core_size: {len(pairing.core_elements)}")
    print(f"core_total: {pairing.total}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="zpsums",
        description="Subset sums, zero-sum-free sets and incomplete sets in Z_p.",
    )
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def add_p(sp, required=True):
        sp.add_argument("--p", type=int, required=required, help="prime modulus")

    def add_common(sp):
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        sp.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET,
                        help="search node budget (default 10^9)")

    sp = sub.add_parser("analyze", help="predicates, sumset size, dilation, diagnostics")
    add_p(sp)
    sp.add_argument("--set", required=True, help="set file (one signed residue per line)")
    sp.add_argument("--dilation-limit", type=int, default=DILATION_SCAN_LIMIT,
                    help="largest p for the exhaustive dilation scan")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("witness", help="subset summing to --target")
    add_p(sp)
    sp.add_argument("--set", required=True, help="set file")
    sp.add_argument("--target", type=int, required=True, help="target residue")
    sp.set_defaults(func=_cmd_witness)

    sp = sub.add_parser("construct", help="emit a named set family")
    add_p(sp)
    sp.add_argument("--family", required=True,
                    choices=("extremal-zsf", "exceptional", "small-incomplete"))
    sp.add_argument("--out", help="output file (default stdout)")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("maxzsf", help="maximum zero-sum-free cardinality")
    add_p(sp)
    add_common(sp)
    sp.set_defaults(func=_cmd_maxzsf)

    sp = sub.add_parser("maxinc", help="maximum incomplete cardinality")
    add_p(sp)
    add_common(sp)
    sp.set_defaults(func=_cmd_maxinc)

    sp = sub.add_parser("scan", help="verification campaign over a prime range")
    sp.add_argument("--theorem", required=True, choices=THEOREM_IDS)
    sp.add_argument("--p", required=True, help="prime range A:B (or a single prime)")
    add_common(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out", help="report file (default stdout)")
    sp.add_argument("--no-timestamp", action="store_true",
                    help="omit the timestamp for byte-reproducible output")
    sp.set_defaults(func=_cmd_scan)

    sp = sub.add_parser("pairs", help="complementary pairing (i, n+1-i)")
    sp.add_argument("--n", type=int, required=True, help="interval endpoint")
    add_p(sp, required=False)
    sp.add_argument("--set", help="set file (defaults to {1..n})")
    sp.set_defaults(func=_cmd_pairs)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
