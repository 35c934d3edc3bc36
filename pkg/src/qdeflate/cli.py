"""``qdeflate`` command line.

Exit codes: 0 success, 1 a check or verification failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .classical import LinearCode, classical_dimension, deflate_classical, min_distance_classical
from .counting import count_punc_short, count_stabilizers, format_count
from .deflate import DeflationReport, deflate, puncture, shorten
from .errors import QDeflateError, UndefinedDistance
from .reproduce import verify_example1
from .stabfile import (
    StabParseError,
    format_classical_row,
    load_text,
    parse_classical_row,
    parse_row,
    parse_stab,
    read_generator,
)
from .stabilizer import StabilizerCode, is_pure, min_distance, new_stabilizer
from .search import search_deflations


class UsageError(Exception):
    pass


def _positions(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad position list {text!r}; use e.g. 1,2") from None


def _load(path: str) -> StabilizerCode:
    S, _ = parse_stab(load_text(path))
    return S


def _emit(obj: Any) -> None:
    print(json.dumps(obj, indent=2))


def _prefix_code(S: StabilizerCode, t: int, args: argparse.Namespace) -> StabilizerCode:
    if args.prefix:
        Sp = _load(args.prefix)
        if Sp.field != S.field:
            raise UsageError("prefix code file uses a different field")
        return Sp
    vecs = [parse_row(S.field, t, row) for row in args.prefix_row or []]
    return new_stabilizer(S.field, t, vecs)


def _report(rep: DeflationReport, as_json: bool) -> int:
    if as_json:
        _emit(rep.to_dict())
    else:
        out = rep.measured if rep.measured is not None else f"raw subspace of F_p-dimension {rep.space.dim}"
        print(f"{rep.input} -> {out} on positions {list(rep.positions)}")
        if rep.prediction is not None:
            pred = rep.prediction
            print(
                f"theorem1={pred.theorem1_applicable} theorem2={pred.theorem2_applicable} "
                f"predicted_k={pred.predicted_k} predicted_d>={pred.predicted_d_lower_bound} "
                f"t<d={pred.t_below_d}"
            )
        for note in rep.notes:
            print(f"note: {note}")
    holds = rep.prediction_holds()
    return 0 if holds in (None, True) else 1


def cmd_validate(args: argparse.Namespace) -> int:
    S, completion = parse_stab(load_text(args.file))
    params = S.parameters(with_distance=args.distance, budget=args.budget)
    if args.json:
        _emit({"parameters": str(params), "n": S.n, "k": S.k, "completion_rows": len(completion)})
    else:
        print(f"valid {params}" + (", completion verified" if completion else ""))
    return 0


def cmd_distance(args: argparse.Namespace) -> int:
    S = _load(args.file)
    d = min_distance(S, args.budget)
    if args.json:
        _emit({"n": S.n, "k": S.k, "d": d, "pure": is_pure(S, d, args.budget)})
    else:
        print(d)
    return 0


def cmd_deflate(args: argparse.Namespace) -> int:
    S = _load(args.file)
    I = _positions(args.positions)
    Sp = _prefix_code(S, len(I), args)
    return _report(deflate(S, Sp, I, budget=args.budget), args.json)


def cmd_shorten(args: argparse.Namespace) -> int:
    S = _load(args.file)
    return _report(shorten(S, _positions(args.positions), budget=args.budget), args.json)


def cmd_puncture(args: argparse.Namespace) -> int:
    S = _load(args.file)
    I = _positions(args.positions)
    if len(args.local) != len(I):
        raise UsageError(f"need one --local per position ({len(I)}), got {len(args.local)}")
    spans = [[parse_row(S.field, 1, v) for v in group.split(";")] for group in args.local]
    return _report(puncture(S, I, spans, budget=args.budget), args.json)


def cmd_search(args: argparse.Namespace) -> int:
    S = _load(args.file)
    mode = "criterion_filter" if args.criterion_only else "exhaustive"
    res = search_deflations(
        S, _positions(args.positions), args.kprime, mode, jobs=args.jobs, budget=args.budget, limit=args.limit
    )
    for cand in res.ranked:
        print(json.dumps(cand.to_dict()))
    print(json.dumps({"summary": res.stats()}), file=sys.stderr)
    return 1 if res.soundness_violations else 0


def cmd_count(args: argparse.Namespace) -> int:
    rs = _positions(args.r_values)
    rows = {
        "Punc. and short.": [count_punc_short(args.p, r, args.t, args.kprime) for r in rs],
        "Deflation": [count_stabilizers(args.p, r, args.t, args.kprime) for r in rs],
    }
    if args.json:
        _emit({"p": args.p, "t": args.t, "kprime": args.kprime, "r": rs, **{k: [str(v) for v in vals] for k, vals in rows.items()}})
        return 0
    print(f"p={args.p}, t={args.t}, k'={args.kprime}   columns: " + " | ".join(f"r={r}" for r in rs))
    for name, vals in rows.items():
        cells = [str(v) if args.exact else format_count(v) for v in vals]
        print(f"{name:<17}" + " | ".join(cells))
    return 0


def cmd_classical(args: argparse.Namespace) -> int:
    F, n, rows = read_generator(load_text(args.file))
    C = LinearCode.from_generator(F, n, rows)
    I = _positions(args.positions)
    t = len(I)
    if args.prefix_full:
        Cp = LinearCode.full(F, t)
    else:
        Cp = LinearCode.from_generator(F, t, [parse_classical_row(F, t, row) for row in args.prefix_row or []])
    D = deflate_classical(C, Cp, I)
    dim = classical_dimension(C, Cp, I)
    try:
        d_out: int | None = min_distance_classical(D, args.budget)
    except UndefinedDistance:
        d_out = None
    out = {
        "input": f"[{C.n},{C.k}]_{F.q}",
        "prefix": f"[{Cp.n},{Cp.k}]_{F.q}",
        "output": f"[{D.n},{D.k}" + (f",{d_out}" if d_out is not None else "") + f"]_{F.q}",
        "formula_dimension": dim.value,
        "collapsed": dim.collapsed,
        "information_set": dim.information_set,
        "rows": [format_classical_row(r) for r in D.generator()],
    }
    if args.json:
        _emit(out)
    else:
        print(f"{out['input']} -> {out['output']} (formula dim {dim.value}, collapsed {dim.collapsed}, information set: {dim.information_set})")
    return 0 if dim.deflated == D.k else 1


def cmd_verify_example1(args: argparse.Namespace) -> int:
    res = verify_example1()
    if args.json:
        _emit({"ok": res.ok, "outcomes": res.outcomes, "failures": res.failures})
    else:
        for name, label in res.outcomes.items():
            print(f"  {name:<10} -> {label}")
        for f in res.failures:
            print(f"FAIL: {f}")
        if res.ok:
            print("6 prefixes → [[6,2,1]], span{(11|11)} → [[6,2,2]]")
    return 0 if res.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdeflate", description="Deflation of quantum stabilizer codes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="enumeration budget (default 2^26 or $QDEFLATE_BUDGET)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a .stab file")
    p.add_argument("file")
    p.add_argument("--distance", action="store_true", help="also compute d")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("distance", parents=[common], help="minimum distance of a code")
    p.add_argument("file")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("deflate", parents=[common], help="deflate with a prefix code")
    p.add_argument("file")
    p.add_argument("--positions", required=True, help="1-based list, e.g. 1,2")
    p.add_argument("--prefix", help=".stab file holding the prefix code")
    p.add_argument("--prefix-row", action="append", help="prefix generator row, e.g. 11|11 (repeatable)")
    p.set_defaults(func=cmd_deflate)

    p = sub.add_parser("shorten", parents=[common], help="shorten on positions")
    p.add_argument("file")
    p.add_argument("--positions", required=True)
    p.set_defaults(func=cmd_shorten)

    p = sub.add_parser("puncture", parents=[common], help="puncture on positions")
    p.add_argument("file")
    p.add_argument("--positions", required=True)
    p.add_argument(
        "--local", action="append", default=[], help="local span for one position, r rows joined by ';' (repeat per position)"
    )
    p.set_defaults(func=cmd_puncture)

    p = sub.add_parser("search", parents=[common], help="search all [[t,k']] prefix codes")
    p.add_argument("file")
    p.add_argument("--positions", required=True)
    p.add_argument("--kprime", type=int, required=True)
    p.add_argument("--criterion-only", action="store_true", help="deflate only candidates passing the criterion")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--limit", type=int, default=None, help="stop after this many candidates")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("count", parents=[common], help="count prefix-code choices")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--kprime", type=int, required=True)
    p.add_argument("--r-values", default="1,2,3")
    p.add_argument("--exact", action="store_true", help="never abbreviate large counts")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("classical", parents=[common], help="deflate a classical linear code")
    p.add_argument("file")
    p.add_argument("--positions", required=True)
    p.add_argument("--prefix-row", action="append", help="generator row of C' (repeatable); none means C' = {0}")
    p.add_argument("--prefix-full", action="store_true", help="use C' = F_q^t")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("verify-example1", parents=[common], help="rerun the [[8,1,2]]_2 deflation example")
    p.set_defaults(func=cmd_verify_example1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StabParseError, FileNotFoundError) as exc:
        print(f"qdeflate: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"qdeflate: error: {exc}", file=sys.stderr)
        return 2
    except (QDeflateError, AssertionError) as exc:
        print(f"qdeflate: failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
