"""Command-line interface.

Exit codes: 0 success / realizable, 1 not realizable or verification failed,
2 malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence, TextIO

from .canonical import RealizationResult, algorithm_real
from .closure import RealizabilityVerdict, plus_closure
from .dag import Dag, RealizationReport, extract_leq, extract_strict, verify_realizes, verify_strictly_realizes
from .errors import LcaError
from .incomparability import realize_pair
from .io import read_constraints, read_dag, serialize_constraints, serialize_dag, to_dot, write_text
from .relation import LeafSet, Pair, Relation

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _fmt(ls: LeafSet, p: Pair, q: Pair) -> str:
    return f"{ls.pair_str(p)} < {ls.pair_str(q)}"


def _report_verdict(v: RealizabilityVerdict, ls: LeafSet, out: TextIO, strict: bool) -> None:
    print(f"realizable: {'yes' if v.realizable else 'no'}", file=out)
    if strict:
        print(f"strictly realizable: {'yes' if v.strict else 'no'}", file=out)
    for p, q in v.x1_violations:
        print(f"X1 violation: {_fmt(ls, p, q)} in R+", file=out)
    for p, q in v.x2_violations:
        print(f"X2 violation: {_fmt(ls, p, q)} in tc(R) but {_fmt(ls, q, p)} in R+", file=out)
    if strict and v.asymmetry_witness is not None:
        p, q = v.asymmetry_witness
        print(f"asymmetry witness: {_fmt(ls, p, q)} and {_fmt(ls, q, p)} in tc(R)", file=out)


def _tooltips(result: RealizationResult) -> dict[str, str]:
    part = result.partition
    return {part.label(cid): part.tooltip(cid) for cid in range(len(part))}


def _select(result: RealizationResult, which: str) -> Dag:
    return {"dag": result.dag, "reduced": result.reduced, "network": result.network}[which]


def cmd_closure(args, out: TextIO) -> int:
    r = read_constraints(args.file).relation
    out.write(serialize_constraints(plus_closure(r).closure))
    return EXIT_OK


def cmd_check(args, out: TextIO) -> int:
    r = read_constraints(args.file).relation
    result = algorithm_real(r)
    _report_verdict(result.verdict, r.leaf_set, out, args.strict)
    ok = result.verdict.strict if args.strict else result.verdict.realizable
    return EXIT_OK if ok else EXIT_FAIL


def cmd_realize(args, out: TextIO) -> int:
    r = read_constraints(args.file).relation
    result = algorithm_real(r)
    if not result.realizable:
        _report_verdict(result.verdict, r.leaf_set, sys.stderr, False)
        return EXIT_FAIL
    g = _select(result, args.output)
    out.write(serialize_dag(g))
    if args.dot:
        write_text(args.dot, to_dot(g, _tooltips(result)))
    return EXIT_OK


def _common_leaves(a: Relation, b: Relation) -> tuple[Relation, Relation]:
    ls = a.leaf_set.union(b.leaf_set)
    return a.relabeled(ls), b.relabeled(ls)


def cmd_realize_pair(args, out: TextIO) -> int:
    r = read_constraints(args.file).relation
    s = read_constraints(args.incomparable, reject_reflexive=True).relation
    r, s = _common_leaves(r, s)
    verdict = realize_pair(r, s)
    ls = r.leaf_set
    if not verdict.realizable:
        err = sys.stderr
        if verdict.failed_condition == "a":
            print("condition (a) fails: R_S is not realizable", file=err)
            _report_verdict(verdict.realization.verdict, ls, err, False)
        else:
            print("condition (b) fails: some incomparability constraint is forced comparable", file=err)
            for p, q in verdict.comparable:
                print(f"comparable: {_fmt(ls, p, q)} in R_S+", file=err)
        return EXIT_FAIL
    out.write(serialize_dag(verdict.network))
    if args.dot:
        write_text(args.dot, to_dot(verdict.network, _tooltips(verdict.realization)))
    return EXIT_OK


def cmd_extract(args, out: TextIO) -> int:
    g = read_dag(args.dagfile)
    rel = extract_strict(g) if args.strict else extract_leq(g)
    out.write(serialize_constraints(rel))
    return EXIT_OK


def _print_report(rep: RealizationReport, ls: LeafSet, out: TextIO) -> None:
    print("ok" if rep.ok else "FAILED", file=out)
    for p in rep.undefined_lcas:
        print(f"undefined lca: {ls.pair_str(p)}", file=out)
    for name, failures in (("I0", rep.i0_failures), ("I1", rep.i1_failures), ("I2", rep.i2_failures)):
        for (p, q), observed in failures:
            print(f"{name} failure: {_fmt(ls, p, q)} (lca observed {observed})", file=out)


def cmd_verify(args, out: TextIO) -> int:
    g = read_dag(args.dagfile)
    r = read_constraints(args.file).relation
    missing = set(r.leaf_set.labels) - set(g.leaf_set.labels)
    if missing:
        raise LcaError(f"{args.file}: leaves not in the DAG: {' '.join(sorted(missing))}")
    r = r.relabeled(g.leaf_set)
    rep = verify_strictly_realizes(g, r) if args.strict else verify_realizes(g, r)
    _print_report(rep, g.leaf_set, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcadag",
        description="Decide and construct DAG realizations of LCA constraints 'A B < X Y'.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="print the closure R+ of a constraint file")
    p.add_argument("file")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("check", help="decide realizability")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="decide strict realizability instead")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("realize", help="build the canonical DAG or network")
    p.add_argument("file")
    p.add_argument("--output", choices=["dag", "reduced", "network"], default="network")
    p.add_argument("--dot", metavar="PATH", help="also write Graphviz DOT to PATH")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("realize-pair", help="realize order constraints with incomparability constraints")
    p.add_argument("file")
    p.add_argument("--incomparable", metavar="SFILE", required=True,
                   help="constraint file whose lines 'A B < X Y' mean {A,B} and {X,Y} are incomparable")
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(func=cmd_realize_pair)

    p = sub.add_parser("extract", help="print the LCA order of a DAG as constraints")
    p.add_argument("dagfile")
    p.add_argument("--strict", action="store_true", help="only strictly ordered LCAs")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="check that a DAG realizes a constraint file")
    p.add_argument("dagfile")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="check strict realization")
    p.set_defaults(func=cmd_verify)
    return parser


def _error(msg: str) -> None:
    err = sys.stderr
    if err.isatty() and not os.environ.get("NO_COLOR"):
        print(f"\x1b[31merror:\x1b[0m {msg}", file=err)
    else:
        print(f"error: {msg}", file=err)


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out or sys.stdout)
    except LcaError as exc:
        _error(str(exc))
        return EXIT_ERROR
    except OSError as exc:
        _error(f"{exc.filename}: {exc.strerror}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
