"""Constructive connectivity of tilting bundles.

Every tilting bundle is joined to the canonical one by a verified chain
of bundle-mutations.  The route mirrors the structure of the
connectedness proof: normalize a shared quasi-simple summand to be the
unique minimal one, slide within the stratum of tilting bundles
containing it, descend slope denominators through Farey companions
until the slope range captures an integer, then walk the twist chain of
canonical bundles down to the untwisted one.

All searches are deterministic: candidate orders are canonical and
tie-breaks use serialized object order.  Budgets bound node counts and
optionally wall time; exhausting one raises BudgetExhausted.
"""

from __future__ import annotations

import heapq
import logging
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    BasisMismatch,
    BudgetExhausted,
    CompanionNotFound,
    InternalConsistencyError,
    PreconditionError,
)
from .intmat import is_primitive
from .k0 import K0Class, K0Context, line_bundle_class, rank_of
from .slopes import INF, Slope
from .tilting import (
    MutationEvent,
    TiltingObject,
    find_full_period_quasi_simple,
    is_bundle,
    is_tilting,
    make_tilting,
    mutate,
    only_minimal,
    only_maximal,
    purge_torsion,
    slope_range,
    t_can,
)
from .tubes import ExcObject, chart_for, ext_dim, hom_dim, line_bundle_obj, tau_inv_obj
from .weights import LElement, l_add, l_neg, l_scale, x_gen

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FareyStep:
    """Certificate bc - ad = 1 with 0 < c <= d < b and c <= a."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        ok = (
            0 < self.a < self.b
            and gcd(self.a, self.b) == 1
            and self.b * self.c - self.a * self.d == 1
            and 0 < self.c <= self.d < self.b
            and self.c <= self.a
        )
        if not ok:
            raise ValueError(f"invalid Farey step {self}")


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 400_000
    max_slope_denominator: int = 64
    max_seconds: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_nodes <= 0 or self.max_slope_denominator <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = SearchBudget()


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = (
            time.monotonic() + budget.max_seconds if budget.max_seconds else None
        )

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.nodes > self.budget.max_nodes:
            raise BudgetExhausted(f"node budget {self.budget.max_nodes} exhausted")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhausted("time budget exhausted")


@dataclass
class MutationPath:
    """A verified walk in the tilting graph; consecutive nodes differ in
    exactly one summand."""

    nodes: list[TiltingObject]
    events: list[MutationEvent]
    bundle_only: bool

    @staticmethod
    def single(t: TiltingObject) -> "MutationPath":
        return MutationPath([t], [], is_bundle(t))

    @property
    def end(self) -> TiltingObject:
        return self.nodes[-1]

    def extend(self, t2: TiltingObject, ev: MutationEvent) -> None:
        self.nodes.append(t2)
        self.events.append(ev)
        if not is_bundle(t2):
            self.bundle_only = False

    def concat(self, other: "MutationPath") -> "MutationPath":
        if self.end.class_key() != other.nodes[0].class_key():
            raise ValueError("paths do not share an endpoint")
        return MutationPath(
            self.nodes + other.nodes[1:],
            self.events + other.events,
            self.bundle_only and other.bundle_only,
        )

    def reversed(self) -> "MutationPath":
        nodes = list(reversed(self.nodes))
        events: list[MutationEvent] = []
        for i in range(len(self.events) - 1, -1, -1):
            ev = self.events[i]
            src = self.nodes[i + 1]
            events.append(
                MutationEvent(
                    index=src.index_of(ev.added),
                    removed=ev.added,
                    added=ev.removed,
                    direction="R" if ev.direction == "L" else "L",
                    approx_class=ev.approx_class,
                )
            )
        return MutationPath(nodes, events, self.bundle_only)


def verify_path(ctx: K0Context, path: MutationPath) -> bool:
    """Re-check every node and edge; returns False with a log diagnostic."""
    if not path.nodes:
        logger.warning("path has no nodes")
        return False
    if len(path.events) != len(path.nodes) - 1:
        logger.warning("event count does not match node count")
        return False
    for i, node in enumerate(path.nodes):
        try:
            if not is_tilting(ctx, node):
                logger.warning("node %d is not tilting", i)
                return False
        except BasisMismatch:
            logger.warning("node %d failed the basis cross-check", i)
            return False
    for i, ev in enumerate(path.events):
        prev, nxt = path.nodes[i], path.nodes[i + 1]
        pv = set(prev.class_key())
        nv = set(nxt.class_key())
        if len(pv - nv) != 1 or len(nv - pv) != 1:
            logger.warning("nodes %d -> %d differ in more than one summand", i, i + 1)
            return False
        if {ev.removed.cls.vec} != pv - nv or {ev.added.cls.vec} != nv - pv:
            logger.warning("event %d does not match the node difference", i)
            return False
        if prev.summands[ev.index].cls.vec != ev.removed.cls.vec:
            logger.warning("event %d records a wrong index", i)
            return False
        if (ev.removed.cls + ev.added.cls).vec != ev.approx_class.vec:
            logger.warning("event %d violates exchange additivity", i)
            return False
    if path.bundle_only != all(is_bundle(t) for t in path.nodes):
        logger.warning("bundle flag is inaccurate")
        return False
    return True


# -- Farey descent -----------------------------------------------------------


def extend_abcd(a: int, b: int) -> FareyStep:
    """The constructive (c, d) with bc - ad = 1, 0 < c <= d < b, c <= a."""
    if not (0 < a < b) or gcd(a, b) != 1:
        raise PreconditionError("need 0 < a < b with gcd(a, b) = 1")
    if a == 1:
        c0, d0 = 1, b - 1
    else:
        c0 = pow(b % a, -1, a)
        d0 = (b * c0 - 1) // a
    d = d0 % b
    if d == 0:
        d = b
    c = c0 + ((d - d0) // b) * a
    return FareyStep(a, b, c, d)


# -- random walks (test and CLI fodder) ---------------------------------------


def random_walk(
    ctx: K0Context, steps: int, seed: int, bundle_only: bool = False
) -> MutationPath:
    """Seeded mutation walk from the canonical tilting bundle."""
    rng = random.Random(seed)
    path = MutationPath.single(t_can(ctx))
    for _ in range(steps):
        order = rng.sample(range(ctx.n), ctx.n)
        for k in order:
            t2, ev = mutate(ctx, path.end, k)
            if bundle_only and not is_bundle(t2):
                continue
            path.extend(t2, ev)
            break
        else:
            raise InternalConsistencyError("no admissible mutation found")
    return path


# -- companions ----------------------------------------------------------------


def find_companion(ctx: K0Context, x: ExcObject, q_target: Slope) -> ExcObject:
    """A full-period quasi-simple at q_target forming a rigid pair with x."""
    if x.len != 1:
        raise PreconditionError("companion search needs a quasi-simple object")
    return _rigid_partner_at(ctx, x, q_target, full_period=True)


def _rigid_partner_at(
    ctx: K0Context, x: ExcObject, q: Slope, full_period: bool
) -> ExcObject:
    chart = chart_for(ctx, q)
    for orb_idx, orbit in enumerate(chart.orbits):
        if full_period and len(orbit) != ctx.p:
            continue
        for pos, cls in enumerate(orbit):
            y = ExcObject(cls, q, orb_idx, pos, 1)
            if y.cls.vec == x.cls.vec:
                continue
            if ext_dim(ctx, x, y) == 0 and ext_dim(ctx, y, x) == 0:
                return y
    raise CompanionNotFound(f"no rigid companion at slope {q}")


def _rigid_partner_beyond(ctx: K0Context, x: ExcObject, above: bool) -> ExcObject:
    """A quasi-simple rigid partner at a slope strictly beyond x's slope."""
    m = x.slope.floor()
    if above:
        candidates = [Slope(m + 1, 1), x.slope.mediant(Slope(m + 1, 1)), Slope(m + 2, 1)]
    else:
        below = m if Slope(m, 1) < x.slope else m - 1
        candidates = [Slope(below, 1), x.slope.mediant(Slope(below, 1)), Slope(below - 1, 1)]
    for q in candidates:
        try:
            return _rigid_partner_at(ctx, x, q, full_period=False)
        except CompanionNotFound:
            continue
    raise CompanionNotFound(
        f"no rigid partner {'above' if above else 'below'} slope {x.slope}"
    )


# -- completion ----------------------------------------------------------------


def _slope_ceil(s: Slope) -> int:
    return -((-s.num) // s.den)


def _pool_slopes(ctx: K0Context, seed: list[ExcObject], round_: int, budget: SearchBudget) -> list[Slope]:
    finite = sorted(s.slope for s in seed if not s.slope.is_infinite)
    lo = finite[0].floor() - (round_ + 1) // 2
    hi = _slope_ceil(finite[-1]) + (round_ + 2) // 2
    if hi == lo:
        hi += 1
    den_cap = min(2 + round_, budget.max_slope_denominator)
    slopes: set[Slope] = {s.slope for s in seed}
    for b in range(1, den_cap + 1):
        for num in range(lo * b, hi * b + 1):
            slopes.add(Slope(num, b))
    ordered = sorted(
        (s for s in slopes if not s.is_infinite), key=lambda s: (s.den, s.fraction())
    )
    ordered.append(INF)
    return ordered


def _chart_windows(ctx: K0Context, q: Slope) -> list[ExcObject]:
    chart = chart_for(ctx, q)
    out = []
    for t, orbit in enumerate(chart.orbits):
        r = len(orbit)
        for socle in range(r):
            vec = [0] * ctx.n
            for length in range(1, r):
                for idx, xx in enumerate(orbit[(socle + length - 1) % r].vec):
                    vec[idx] += xx
                out.append(ExcObject(K0Class(tuple(vec)), q, t, socle, length))
    return out


def completion_containing(
    ctx: K0Context, seed: list[ExcObject], budget: SearchBudget = DEFAULT_BUDGET
) -> TiltingObject:
    """A tilting bundle containing the seed objects as summands.

    Greedy exact search: candidates are chart windows at slopes ordered
    by Stern-Brocot proximity to the seed slopes (torsion last), pruned
    by pairwise ext-orthogonality and by primitivity of the partial
    class lattice; the pool widens on failure.  Any torsion summands of
    the found tilting object are mutated away afterwards, which never
    touches the seed.
    """
    seed = list(seed)
    if not seed:
        raise PreconditionError("empty seed")
    for i, x in enumerate(seed):
        if x.slope.is_infinite or rank_of(ctx, x.cls) < 1:
            raise PreconditionError("seed objects must be bundles")
        for y in seed[i + 1 :]:
            if ext_dim(ctx, x, y) != 0 or ext_dim(ctx, y, x) != 0:
                raise PreconditionError("seed objects must be ext-orthogonal")
    clock = _Clock(budget)
    seed_vecs = {x.cls.vec for x in seed}
    for round_ in range(10):
        pool = [
            o
            for q in _pool_slopes(ctx, seed, round_, budget)
            for o in _chart_windows(ctx, q)
            if o.cls.vec not in seed_vecs
        ]
        found = _complete_dfs(ctx, seed, pool, clock)
        if found is not None:
            if not is_bundle(found):
                found, _ = purge_torsion(ctx, found)
            if not seed_vecs <= set(found.class_key()):
                raise InternalConsistencyError("completion lost a seed summand")
            return found
    raise BudgetExhausted("completion rounds exhausted")


def _complete_dfs(
    ctx: K0Context, seed: list[ExcObject], pool: list[ExcObject], clock: _Clock
) -> TiltingObject | None:
    n = ctx.n
    base_vecs = [x.cls.vec for x in seed]
    if not is_primitive(base_vecs):
        return None
    cands0 = [
        o
        for o in pool
        if all(ext_dim(ctx, o, s) == 0 and ext_dim(ctx, s, o) == 0 for s in seed)
    ]

    def rec(cands: list[ExcObject], cur: list[ExcObject]) -> TiltingObject | None:
        if len(cur) == n:
            t = make_tilting(ctx, cur)
            if not is_tilting(ctx, t):
                raise InternalConsistencyError("completion produced a non-tilting set")
            return t
        if len(cur) + len(cands) < n:
            return None
        for idx, o in enumerate(cands):
            clock.tick()
            vecs = [x.cls.vec for x in cur] + [o.cls.vec]
            if not is_primitive(vecs):
                continue
            nxt = [
                o2
                for o2 in cands[idx + 1 :]
                if ext_dim(ctx, o, o2) == 0 and ext_dim(ctx, o2, o) == 0
            ]
            got = rec(nxt, cur + [o])
            if got is not None:
                return got
        return None

    return rec(cands0, list(seed))


# -- stratum search ------------------------------------------------------------


def _neighbors(
    ctx: K0Context,
    t: TiltingObject,
    fixed_vec: tuple[int, ...] | None,
    clock: _Clock,
):
    for k, s in enumerate(t.summands):
        if fixed_vec is not None and s.cls.vec == fixed_vec:
            continue
        clock.tick()
        t2, ev = mutate(ctx, t, k)
        if not is_bundle(t2):
            continue
        yield t2, ev


def _reconstruct(
    parents: dict, start_key, end_key, states: dict
) -> MutationPath:
    chain = []
    key = end_key
    while key != start_key:
        prev_key, ev = parents[key]
        chain.append((states[key], ev))
        key = prev_key
    path = MutationPath.single(states[start_key])
    for node, ev in reversed(chain):
        path.extend(node, ev)
    return path


def _astar_fixed(
    ctx: K0Context,
    a: TiltingObject,
    b: TiltingObject,
    fixed_vec: tuple[int, ...] | None,
    clock: _Clock,
) -> MutationPath:
    """Guided bundle path a -> b avoiding mutation at fixed_vec.

    A* with the admissible heuristic |summands of a node not in b|;
    every mutation changes exactly one summand, so the heuristic is
    consistent.  Ties prefer deeper nodes, which walks straight through
    heuristic plateaus when a greedy exchange path exists.
    """
    goal_key = b.class_key()
    if a.class_key() == goal_key:
        return MutationPath.single(a)
    target = set(goal_key)

    def h(t: TiltingObject) -> int:
        return sum(1 for v in t.class_key() if v not in target)

    start_key = a.class_key()
    states = {start_key: a}
    parents: dict = {}
    gscore = {start_key: 0}
    counter = 0
    heap = [(h(a), 0, counter, start_key)]
    while heap:
        _, _, _, key = heapq.heappop(heap)
        t = states[key]
        g = gscore[key]
        for t2, ev in _neighbors(ctx, t, fixed_vec, clock):
            k2 = t2.class_key()
            if gscore.get(k2, 1 << 60) <= g + 1:
                continue
            gscore[k2] = g + 1
            states[k2] = t2
            parents[k2] = (key, ev)
            if k2 == goal_key:
                return _reconstruct(parents, start_key, k2, states)
            counter += 1
            heapq.heappush(heap, (g + 1 + h(t2), -(g + 1), counter, k2))
    raise BudgetExhausted("stratum search frontier emptied unexpectedly")


def _flip(ev: MutationEvent, src: TiltingObject) -> MutationEvent:
    """The same exchange read in the opposite direction, indexed in src."""
    return MutationEvent(
        index=src.index_of(ev.added),
        removed=ev.added,
        added=ev.removed,
        direction="R" if ev.direction == "L" else "L",
        approx_class=ev.approx_class,
    )


def _bidir_fixed(
    ctx: K0Context,
    a: TiltingObject,
    b: TiltingObject,
    fixed_vec: tuple[int, ...] | None,
    clock: _Clock,
) -> MutationPath:
    """Bidirectional breadth search a -> b avoiding mutation at fixed_vec.

    Frontiers alternate from whichever side is smaller; any meeting key
    yields a valid (not necessarily minimal) path.
    """
    ka, kb = a.class_key(), b.class_key()
    if ka == kb:
        return MutationPath.single(a)
    states = {ka: a, kb: b}
    # parent maps point one step toward the respective root
    par_a: dict = {ka: None}
    par_b: dict = {kb: None}
    front_a, front_b = [ka], [kb]

    def assemble(meet) -> MutationPath:
        fwd = []
        key = meet
        while par_a[key] is not None:
            prev_key, ev = par_a[key]
            fwd.append((states[key], ev))
            key = prev_key
        path = MutationPath.single(a)
        for node, ev in reversed(fwd):
            path.extend(node, ev)
        key = meet
        while par_b[key] is not None:
            nxt_key, ev = par_b[key]
            # ev mutates states[nxt_key] -> states[key]; flip it
            path.extend(states[nxt_key], _flip(ev, states[key]))
            key = nxt_key
        return path

    while front_a and front_b:
        if len(front_a) <= len(front_b):
            front, par, other = front_a, par_a, par_b
            forward = True
        else:
            front, par, other = front_b, par_b, par_a
            forward = False
        nxt: list = []
        for key in front:
            node = states[key]
            for t2, ev in _neighbors(ctx, node, fixed_vec, clock):
                k2 = t2.class_key()
                if k2 in par:
                    continue
                states[k2] = t2
                par[k2] = (key, ev)
                if k2 in other:
                    return assemble(k2)
                nxt.append(k2)
        if forward:
            front_a = nxt
        else:
            front_b = nxt
    raise BudgetExhausted("bidirectional search frontier emptied unexpectedly")


def make_only_minimal(
    ctx: K0Context, t: TiltingObject, k: int, budget: SearchBudget = DEFAULT_BUDGET
) -> MutationPath:
    """Bundle path making summand k's object the unique minimal summand."""
    return _make_only_extremal(ctx, t, k, budget, minimal=True)


def make_only_maximal(
    ctx: K0Context, t: TiltingObject, k: int, budget: SearchBudget = DEFAULT_BUDGET
) -> MutationPath:
    """Bundle path making summand k's object the unique maximal summand."""
    return _make_only_extremal(ctx, t, k, budget, minimal=False)


def _make_only_extremal(
    ctx: K0Context, t: TiltingObject, k: int, budget: SearchBudget, minimal: bool
) -> MutationPath:
    if not is_bundle(t):
        raise PreconditionError("input must be a tilting bundle")
    x = t.summands[k]
    if x.len != 1:
        raise PreconditionError("the protected summand must be quasi-simple")
    return _normalize_extremal(ctx, t, x, _Clock(budget), budget, minimal)


def _normalize_extremal(
    ctx: K0Context,
    t: TiltingObject,
    x: ExcObject,
    clock: _Clock,
    budget: SearchBudget,
    minimal: bool,
) -> MutationPath:
    lo, hi = slope_range(ctx, t)
    easy = (x.slope < hi) if minimal else (lo < x.slope)
    if easy:
        # guided mutation raises (resp. lowers) the blocking summands and
        # stays inside a finite region, so a capped attempt usually lands
        quick = _Clock(
            SearchBudget(
                max_nodes=min(20_000, budget.max_nodes),
                max_slope_denominator=budget.max_slope_denominator,
                max_seconds=budget.max_seconds,
                seed=budget.seed,
            )
        )
        try:
            return _extremal_search(ctx, t, x, quick, minimal)
        except BudgetExhausted:
            pass
    # The protected summand sits on the extreme slope tier (or the quick
    # attempt stalled): route through a tilting bundle where its slope is
    # strictly interior, then normalize from there.
    y = _rigid_partner_beyond(ctx, x, above=minimal)
    t2 = completion_containing(ctx, [x, y], budget)
    p1 = _bidir_fixed(ctx, t, t2, x.cls.vec, clock)
    p2 = _extremal_search(ctx, t2, x, clock, minimal)
    return p1.concat(p2)


def _extremal_score(ctx: K0Context, t: TiltingObject, x: ExcObject, minimal: bool):
    xf = x.slope.fraction()
    blockers = 0
    deficit = Fraction(0)
    for s in t.summands:
        if s.cls.vec == x.cls.vec:
            continue
        sf = s.slope.fraction()
        bad = sf <= xf if minimal else sf >= xf
        if bad:
            blockers += 1
            deficit += abs(xf - sf) + 1
    return (blockers, deficit)


def _extremal_search(
    ctx: K0Context,
    t: TiltingObject,
    x: ExcObject,
    clock: _Clock,
    minimal: bool,
) -> MutationPath:
    """Best-first search on (blocker count, slope deficit).

    Greedy progress matches guided APR/co-APR mutation; because the
    frontier keeps every expanded alternative, stagnation degrades into
    a plain breadth-style sweep instead of looping.
    """
    goal = only_minimal if minimal else only_maximal

    def is_goal(node: TiltingObject) -> bool:
        g = goal(ctx, node)
        return g is not None and node.summands[g].cls.vec == x.cls.vec

    if is_goal(t):
        return MutationPath.single(t)
    start_key = t.class_key()
    states = {start_key: t}
    parents: dict = {}
    seen = {start_key}
    counter = 0
    heap = [(_extremal_score(ctx, t, x, minimal), 0, counter, start_key)]
    while heap:
        score, depth, _, key = heapq.heappop(heap)
        node = states[key]
        for t2, ev in _neighbors(ctx, node, x.cls.vec, clock):
            k2 = t2.class_key()
            if k2 in seen:
                continue
            seen.add(k2)
            states[k2] = t2
            parents[k2] = (key, ev)
            if is_goal(t2):
                return _reconstruct(parents, start_key, k2, states)
            counter += 1
            heapq.heappush(
                heap,
                (_extremal_score(ctx, t2, x, minimal), depth + 1, counter, k2),
            )
    raise BudgetExhausted("extremal normalization frontier emptied")


def connect_shared(
    ctx: K0Context,
    t: TiltingObject,
    t2: TiltingObject,
    shared: ExcObject,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> MutationPath:
    """Bundle path t -> t2 through nodes all containing `shared`.

    Tries a direct guided search first; if that exhausts its slice of
    the budget, both ends are normalized so the shared object is the
    unique minimal summand and the remainder is searched in the
    normalized stratum.
    """
    if shared.len != 1:
        raise PreconditionError("shared summand must be quasi-simple")
    for node in (t, t2):
        if shared.cls.vec not in set(node.class_key()):
            raise PreconditionError("shared object is not a summand of both ends")
        if not is_bundle(node):
            raise PreconditionError("both ends must be tilting bundles")
    if t.class_key() == t2.class_key():
        return MutationPath.single(t)

    quick = SearchBudget(
        max_nodes=min(4000, budget.max_nodes),
        max_slope_denominator=budget.max_slope_denominator,
        max_seconds=budget.max_seconds,
        seed=budget.seed,
    )
    try:
        return _astar_fixed(ctx, t, t2, shared.cls.vec, _Clock(quick))
    except BudgetExhausted:
        pass

    # meet-in-the-middle inside the stratum of bundles containing `shared`
    half = SearchBudget(
        max_nodes=max(1, budget.max_nodes // 2),
        max_slope_denominator=budget.max_slope_denominator,
        max_seconds=budget.max_seconds,
        seed=budget.seed,
    )
    try:
        return _bidir_fixed(ctx, t, t2, shared.cls.vec, _Clock(half))
    except BudgetExhausted:
        pass

    # last resort: normalize both ends so the shared object is the unique
    # minimal summand, then bridge the normalized stratum
    clock = _Clock(budget)
    pa = _normalize_extremal(ctx, t, shared, clock, budget, minimal=True)
    pb = _normalize_extremal(ctx, t2, shared, clock, budget, minimal=True)
    mid = _bidir_fixed(ctx, pa.end, pb.end, shared.cls.vec, clock)
    return pa.concat(mid).concat(pb.reversed())


# -- slope-range manipulation ---------------------------------------------------


def _range_integer(ctx: K0Context, t: TiltingObject) -> int | None:
    lo, hi = slope_range(ctx, t)
    m = _slope_ceil(lo)
    return m if Slope.from_int(m) <= hi else None


def integerize(
    ctx: K0Context, t: TiltingObject, budget: SearchBudget = DEFAULT_BUDGET
) -> MutationPath:
    """Farey descent until the slope range contains an integer.

    Starting from a full-period quasi-simple summand of slope m + a/b,
    companions at the mediant-descent slopes m + c/d have strictly
    smaller denominators, and consecutive companions are rigid pairs,
    so routing through completions reaches slope m + 1 in finitely many
    steps.
    """
    if not is_bundle(t):
        raise PreconditionError("input must be a tilting bundle")
    if _range_integer(ctx, t) is not None:
        raise PreconditionError("slope range already contains an integer")
    k = find_full_period_quasi_simple(ctx, t)
    x = t.summands[k]
    m = x.slope.floor()
    a, b = x.slope.frac()
    path = MutationPath.single(t)
    while a != b:
        step = extend_abcd(a, b)
        target = Slope(m * step.d + step.c, step.d)
        y = find_companion(ctx, x, target)
        t_next = completion_containing(ctx, [x, y], budget)
        path = path.concat(connect_shared(ctx, path.end, t_next, x, budget))
        x = y
        a, b = step.c, step.d
    return path


# -- the canonical route ---------------------------------------------------------


def _line_bundle_element(ctx: K0Context, obj: ExcObject) -> LElement:
    """Recover the twist element of a line-bundle summand from its class."""
    w = ctx.weights
    vec = obj.cls.vec
    if vec[ctx.idx_o] != 1:
        raise PreconditionError("not a line bundle class")
    coeffs = []
    for i, p_i in enumerate(w.weights):
        block = [vec[ctx.simple_index(i, j)] for j in range(1, p_i)]
        a_i = 0
        while a_i < len(block) and block[a_i] == 1:
            a_i += 1
        if any(block[a_i:]):
            raise PreconditionError("not a line bundle class")
        coeffs.append(a_i)
    elt = LElement(w, tuple(coeffs), vec[ctx.idx_f])
    if line_bundle_class(ctx, elt).vec != vec:
        raise PreconditionError("not a line bundle class")
    return elt


def _twist_chain(
    ctx: K0Context, start_elt: LElement, budget: SearchBudget
) -> MutationPath:
    """Path from the canonical bundle twisted by start_elt down to T_can.

    Adjacent twisted canonicals share a line bundle, so each step is a
    shared-summand connection; steps lower the coefficients of the
    twist element toward zero and terminate.
    """
    w = ctx.weights
    e = start_elt
    path = MutationPath.single(t_can(ctx, e))
    while e:
        if e.c < 0:
            e2 = l_add(e, x_gen(w, w.t - 1))
            shared_elt = e2
        elif any(e.coeffs):
            i = max(i for i, a in enumerate(e.coeffs) if a > 0)
            e2 = l_add(e, l_neg(x_gen(w, i)))
            shared_elt = e
        else:
            e2 = l_add(e, l_neg(x_gen(w, w.t - 1)))
            shared_elt = e
        shared = line_bundle_obj(ctx, shared_elt)
        path = path.concat(
            connect_shared(ctx, path.end, t_can(ctx, e2), shared, budget)
        )
        e = e2
    return path


def connect_to_canonical(
    ctx: K0Context, t: TiltingObject, budget: SearchBudget = DEFAULT_BUDGET
) -> MutationPath:
    """Verified bundle path from t to the canonical tilting bundle."""
    if not is_bundle(t):
        raise PreconditionError("input must be a tilting bundle")
    tc = t_can(ctx)
    if t.class_key() == tc.class_key():
        return MutationPath.single(t)

    path = MutationPath.single(t)
    if _range_integer(ctx, t) is None:
        path = integerize(ctx, t, budget)
    cur = path.end

    line = next(
        (s for s in cur.summands if s.len == 1 and rank_of(ctx, s.cls) == 1), None
    )
    if line is None:
        m = _range_integer(ctx, cur)
        if m is None:
            raise InternalConsistencyError("integerize left no integer in range")
        lobj = line_bundle_obj(ctx, l_scale(x_gen(ctx.weights, ctx.weights.t - 1), m))
        if all(ext_dim(ctx, s, lobj) == 0 for s in cur.summands):
            pick_high = True
        elif all(hom_dim(ctx, s, lobj) == 0 for s in cur.summands):
            # Ext vanishes against the inverse translate instead.
            lobj = tau_inv_obj(ctx, lobj)
            pick_high = False
        else:
            raise InternalConsistencyError("line-bundle dichotomy failed")
        x = _dichotomy_partner(ctx, cur, lobj, pick_high)
        t2 = completion_containing(ctx, [x, lobj], budget)
        path = path.concat(connect_shared(ctx, cur, t2, x, budget))
        cur = path.end
        line = lobj

    elt = _line_bundle_element(ctx, line)
    path = path.concat(connect_shared(ctx, cur, t_can(ctx, elt), line, budget))
    path = path.concat(_twist_chain(ctx, elt, budget))
    if not verify_path(ctx, path):
        raise InternalConsistencyError("constructed path failed verification")
    return path


def _dichotomy_partner(
    ctx: K0Context, t: TiltingObject, lobj: ExcObject, pick_high: bool
) -> ExcObject:
    """Quasi-simple summand forming a rigid pair with the chosen line bundle."""
    for s in t.summands:
        if s.len != 1:
            continue
        if pick_high and s.slope < lobj.slope:
            continue
        if not pick_high and s.slope > lobj.slope:
            continue
        if ext_dim(ctx, s, lobj) == 0 and ext_dim(ctx, lobj, s) == 0:
            return s
    raise InternalConsistencyError("no rigid partner for the line bundle")


def connect_pair(
    ctx: K0Context,
    t: TiltingObject,
    t2: TiltingObject,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> MutationPath:
    """Path between two tilting bundles, composed through the canonical one."""
    p1 = connect_to_canonical(ctx, t, budget)
    p2 = connect_to_canonical(ctx, t2, budget)
    return p1.concat(p2.reversed())


# -- neighborhood exploration (graph/DOT export) ----------------------------------


def explore_graph(
    ctx: K0Context,
    start: TiltingObject,
    lo: Slope,
    hi: Slope,
    max_nodes: int,
) -> tuple[list[TiltingObject], list[tuple[int, int]]]:
    """BFS over mutations keeping nodes whose slopes stay in [lo, hi]."""
    keys = {start.class_key(): 0}
    nodes = [start]
    edges: set[tuple[int, int]] = set()
    queue = [start]
    qi = 0
    while qi < len(queue):
        node = queue[qi]
        qi += 1
        i = keys[node.class_key()]
        for k in range(ctx.n):
            t2, _ = mutate(ctx, node, k)
            if any(not lo <= s.slope <= hi for s in t2.summands):
                continue
            key2 = t2.class_key()
            j = keys.get(key2)
            if j is None:
                if len(nodes) >= max_nodes:
                    continue
                j = len(nodes)
                keys[key2] = j
                nodes.append(t2)
                queue.append(t2)
            edges.add((min(i, j), max(i, j)))
    return nodes, sorted(edges)
