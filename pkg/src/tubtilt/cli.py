"""Command-line front end.

Tilting objects are passed either as JSON files or as expressions of
the object language (`Tcan`, `Tcan(x1+c)`, `mu(Tcan, 0)`, ...);
anything that names an existing file is read as JSON.  Output is
canonical JSON on stdout, diagnostics go to stderr as JSON, and exit
codes are 0 (success), 1 (verification or domain failure), 2 (usage).

Charts are cached in memory per run; set TUBTILT_CACHE to a directory
to persist them between runs (entries are re-verified on load), or
pass --no-cache to ignore the directory entirely.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import serialize
from .connect import (
    SearchBudget,
    connect_pair,
    connect_to_canonical,
    explore_graph,
    random_walk,
    verify_path,
)
from .errors import NonTubularWeights, TubTiltError, ValidationError
from .exprs import eval_object, eval_tilting, parse_expr
from .k0 import K0Context, build_context
from .slopes import Slope
from .tilting import TiltingObject, is_tilting, mutate, purge_torsion
from .tubes import chart_for
from .verify import SUITE_ORDER, run_suite
from .weights import make_weights


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tubtilt",
        description="Exact tilting-mutation engine for tubular weighted projective lines",
    )
    parser.add_argument(
        "--weights",
        help="comma-separated weight sequence, e.g. 2,2,2,2 (defaults to the "
        "weights stored in an input file when one is given)",
    )
    parser.add_argument(
        "--no-cache", action="store_true", help="ignore the TUBTILT_CACHE directory"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("info", help="print context, basis order and Euler matrix")

    p = sub.add_parser("check", help="validate a tilting object")
    p.add_argument("tilting", help="JSON file or expression")

    p = sub.add_parser("mutate", help="mutate a tilting object at one summand")
    p.add_argument("tilting", help="JSON file or expression")
    p.add_argument("--at", required=True, help="summand index or object expression")

    p = sub.add_parser("walk", help="random mutation walk from the canonical bundle")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bundle-only", action="store_true")

    p = sub.add_parser("connect", help="mutation path to another tilting bundle")
    p.add_argument("tilting", help="JSON file or expression")
    p.add_argument("--to", default="canonical", help="'canonical', a file, or an expression")
    p.add_argument("--max-nodes", type=int, default=SearchBudget().max_nodes)

    p = sub.add_parser("purge", help="mutate away all torsion summands")
    p.add_argument("tilting", help="JSON file or expression")

    p = sub.add_parser("chart", help="print the tube chart at a slope")
    p.add_argument("--slope", required=True, help="slope literal: inf, m, or a/b")

    p = sub.add_parser("graph", help="explore a neighborhood and export DOT")
    p.add_argument("--slope-window", required=True, help="LO..HI slope window")
    p.add_argument("--max-nodes", type=int, required=True)
    p.add_argument("--dot", required=True, help="output DOT file")
    p.add_argument("--from", dest="start", default="Tcan", help="start tilting")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", choices=SUITE_ORDER + ["all"])
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    return parser


def _context(args) -> K0Context:
    if args.weights is None:
        raise ValidationError("--weights is required for this command")
    ctx = build_context(make_weights(int(x) for x in args.weights.split(",")))
    _load_cache(ctx, args)
    return ctx


def _cache_dir(args) -> str | None:
    if getattr(args, "no_cache", False):
        return None
    return os.environ.get("TUBTILT_CACHE") or None


def _load_cache(ctx: K0Context, args) -> None:
    directory = _cache_dir(args)
    if directory:
        serialize.load_chart_cache(ctx, directory)


def _save_cache(ctx: K0Context | None, args) -> None:
    directory = _cache_dir(args)
    if directory and ctx is not None:
        serialize.save_chart_cache(ctx, directory)


def _load_tilting(args, spec: str) -> tuple[K0Context, TiltingObject]:
    """A JSON file when `spec` names one, otherwise an expression."""
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        ctx = None
        if args.weights is not None:
            ctx = build_context(make_weights(int(x) for x in args.weights.split(",")))
        ctx, t = serialize.tilting_from_dict(data, ctx)
        _load_cache(ctx, args)
        return ctx, t
    ctx = _context(args)
    return ctx, eval_tilting(ctx, parse_expr(spec))


def export_dot(ctx: K0Context, nodes, edges) -> str:
    """Deterministic DOT text; node labels are sorted slope multisets."""
    lines = ["graph tilting {"]
    for i, t in enumerate(nodes):
        label = ",".join(str(s.slope) for s in t.summands)
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in edges:
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_info(args) -> int:
    ctx = _context(args)
    w = ctx.weights
    print(f"weights: {','.join(str(p) for p in w.weights)}")
    print(f"p: {w.p}")
    print(f"n: {w.n}")
    print(f"genus: {w.genus}")
    print(f"basis: {' '.join(ctx.basis_labels)}")
    print("euler:")
    for row in ctx.euler:
        print("  " + " ".join(f"{v:3d}" for v in row))
    _save_cache(ctx, args)
    return 0


def _cmd_check(args) -> int:
    ctx, t = _load_tilting(args, args.tilting)
    ok = is_tilting(ctx, t)
    print(serialize.dumps({"tilting": ok, "summands": len(t.summands)}))
    _save_cache(ctx, args)
    return 0 if ok else 1


def _cmd_mutate(args) -> int:
    ctx, t = _load_tilting(args, args.tilting)
    try:
        k = int(args.at)
    except ValueError:
        obj = eval_object(ctx, parse_expr(args.at))
        k = t.index_of(obj)
    if not 0 <= k < ctx.n:
        raise ValidationError(f"index {k} out of range 0..{ctx.n - 1}")
    t2, ev = mutate(ctx, t, k)
    print(
        serialize.dumps(
            {
                "tilting": serialize.tilting_to_dict(ctx, t2),
                "event": serialize.event_to_dict(ev),
            }
        )
    )
    _save_cache(ctx, args)
    return 0


def _cmd_walk(args) -> int:
    ctx = _context(args)
    path = random_walk(ctx, args.steps, args.seed, args.bundle_only)
    print(serialize.dumps(serialize.path_to_dict(ctx, path)))
    _save_cache(ctx, args)
    return 0


def _cmd_connect(args) -> int:
    ctx, t = _load_tilting(args, args.tilting)
    budget = SearchBudget(max_nodes=args.max_nodes)
    if args.to == "canonical":
        path = connect_to_canonical(ctx, t, budget)
    else:
        ctx2, t2 = _load_tilting(args, args.to)
        if ctx2.weights != ctx.weights:
            raise ValidationError("both tiltings must share the weight sequence")
        path = connect_pair(ctx, t, t2, budget)
    if not verify_path(ctx, path):
        raise TubTiltError("constructed path failed verification")
    print(serialize.dumps(serialize.path_to_dict(ctx, path)))
    _save_cache(ctx, args)
    return 0


def _cmd_purge(args) -> int:
    ctx, t = _load_tilting(args, args.tilting)
    t2, events = purge_torsion(ctx, t)
    print(
        serialize.dumps(
            {
                "tilting": serialize.tilting_to_dict(ctx, t2),
                "events": [serialize.event_to_dict(ev) for ev in events],
            }
        )
    )
    _save_cache(ctx, args)
    return 0


def _cmd_chart(args) -> int:
    ctx = _context(args)
    chart = chart_for(ctx, Slope.parse(args.slope))
    print(serialize.dumps(serialize.chart_to_dict(ctx, chart)))
    _save_cache(ctx, args)
    return 0


def _cmd_graph(args) -> int:
    ctx, start = _load_tilting(args, args.start)
    window = args.slope_window
    if ".." not in window:
        raise ValidationError("slope window must look like LO..HI")
    lo_s, hi_s = window.split("..", 1)
    lo, hi = Slope.parse(lo_s), Slope.parse(hi_s)
    nodes, edges = explore_graph(ctx, start, lo, hi, args.max_nodes)
    with open(args.dot, "w", encoding="utf-8") as fh:
        fh.write(export_dot(ctx, nodes, edges))
    print(serialize.dumps({"nodes": len(nodes), "edges": len(edges), "dot": args.dot}))
    _save_cache(ctx, args)
    return 0


def _cmd_verify(args) -> int:
    kwargs = {}
    if args.trials is not None:
        kwargs["trials"] = args.trials
    if args.seed is not None:
        kwargs["seed"] = args.seed
    ok = run_suite(args.suite, **kwargs)
    return 0 if ok else 1


_COMMANDS = {
    "info": _cmd_info,
    "check": _cmd_check,
    "mutate": _cmd_mutate,
    "walk": _cmd_walk,
    "connect": _cmd_connect,
    "purge": _cmd_purge,
    "chart": _cmd_chart,
    "graph": _cmd_graph,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except NonTubularWeights as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2
    except TubTiltError as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
