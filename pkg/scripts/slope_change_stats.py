#!/usr/bin/env python3
"""Sample mutation events and tabulate how summand slopes move.

For each tubular weight type this script walks the mutation graph from
the canonical tilting bundle, classifies each sampled event (APR at a
first object, co-APR at a last object, extremal, generic) and reports
how often the replacement slope rose, fell or stayed put, together
with the extreme slopes seen.  Every number is exact; the distribution
is the empirical side of the slope-bound statements checked in the
test suite.
"""

import argparse
import random
from collections import Counter
from fractions import Fraction

from tubtilt.connect import random_walk
from tubtilt.tilting import first_objects, last_objects, mutate, slope_range
from tubtilt.verify import context_for
from tubtilt.weights import TUBULAR_TYPES


def classify(ctx, node, k):
    kinds = []
    if k in first_objects(ctx, node):
        kinds.append("APR")
    if k in last_objects(ctx, node):
        kinds.append("co-APR")
    lo, hi = slope_range(ctx, node)
    s = node.summands[k].slope
    if s == lo:
        kinds.append("minimal")
    if s == hi:
        kinds.append("maximal")
    return kinds or ["generic"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--events", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for ws in TUBULAR_TYPES:
        ctx = context_for(ws)
        rng = random.Random(args.seed)
        moved = Counter()
        kinds = Counter()
        lo_seen, hi_seen = Fraction(0), Fraction(0)
        for i in range(args.events):
            walk = random_walk(ctx, rng.randrange(1, 8), seed=rng.randrange(1 << 30))
            node = walk.end
            k = rng.randrange(ctx.n)
            _, ev = mutate(ctx, node, k)
            for kind in classify(ctx, node, k):
                kinds[kind] += 1
            if ev.added.slope == ev.removed.slope:
                moved["same"] += 1
            elif ev.removed.slope < ev.added.slope:
                moved["up"] += 1
            else:
                moved["down"] += 1
            for s in (ev.added.slope, ev.removed.slope):
                if not s.is_infinite:
                    f = s.fraction()
                    lo_seen, hi_seen = min(lo_seen, f), max(hi_seen, f)
        print(f"weights {ws}: {args.events} events")
        print(f"  slope moves: {dict(moved)}")
        print(f"  event kinds: {dict(kinds)}")
        print(f"  finite slopes seen in [{lo_seen}, {hi_seen}]")


if __name__ == "__main__":
    main()
