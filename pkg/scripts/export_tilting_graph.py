#!/usr/bin/env python3
"""Explore a neighborhood of the canonical tilting bundle and write DOT.

Example:

    python scripts/export_tilting_graph.py --weights 2,2,2,2 \
        --window 0..2 --max-nodes 40 --out tcan_neighborhood.dot
"""

import argparse

from tubtilt.cli import export_dot
from tubtilt.connect import explore_graph
from tubtilt.slopes import Slope
from tubtilt.tilting import t_can
from tubtilt.verify import context_for


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--weights", default="2,2,2,2")
    ap.add_argument("--window", default="0..2", help="LO..HI slope window")
    ap.add_argument("--max-nodes", type=int, default=40)
    ap.add_argument("--out", default="tilting_graph.dot")
    args = ap.parse_args()

    ctx = context_for(tuple(int(x) for x in args.weights.split(",")))
    lo_s, hi_s = args.window.split("..", 1)
    nodes, edges = explore_graph(
        ctx, t_can(ctx), Slope.parse(lo_s), Slope.parse(hi_s), args.max_nodes
    )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(export_dot(ctx, nodes, edges))
    print(f"{len(nodes)} nodes, {len(edges)} edges -> {args.out}")


if __name__ == "__main__":
    main()
