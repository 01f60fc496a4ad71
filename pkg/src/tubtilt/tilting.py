"""Tilting objects and the mutation engine.

A tilting object is recorded as its n pairwise ext-orthogonal
exceptional summands; the classes then automatically form a lattice
basis, which is cross-checked.  Mutation exchanges one summand for the
unique other complement of the remaining almost complete tilting
object; the complement is found by a bounded search over approximation
multiplicities, which is exhaustive because the middle term of the
exchange sequence is a minimal approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BasisMismatch,
    ComplementNotFound,
    ComplementNotUnique,
    DuplicateSummands,
    InternalConsistencyError,
    NoFullPeriodSummand,
    NotExceptionalHere,
    NotFirstObject,
    NotLastObject,
    NotSheafLike,
    PreconditionError,
    WrongSummandCount,
)
from .intmat import dot
from .intmat import det as int_det
from .k0 import K0Class, K0Context, rank_of
from .slopes import Slope
from .tubes import (
    ExcObject,
    exc_from_class,
    ext_dim,
    hom_dim,
    line_bundle_obj,
    orbit_rank,
    wing_contains,
)
from .weights import LElement, WeightData, c_gen, l_add, l_zero, x_gen


@dataclass(frozen=True)
class TiltingObject:
    summands: tuple[ExcObject, ...]

    def index_of(self, obj: ExcObject) -> int:
        for i, s in enumerate(self.summands):
            if s.cls.vec == obj.cls.vec:
                return i
        raise ValueError("object is not a summand")

    def class_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(s.cls.vec for s in self.summands)


@dataclass(frozen=True)
class MutationEvent:
    index: int
    removed: ExcObject
    added: ExcObject
    direction: str  # "L": 0 -> removed -> B -> added -> 0; "R": the reverse
    approx_class: K0Class


def make_tilting(ctx: K0Context, objs: Iterable[ExcObject]) -> TiltingObject:
    """Structural constructor: right count, no duplicates, canonical order."""
    lst = list(objs)
    if len(lst) != ctx.n:
        raise WrongSummandCount(f"expected {ctx.n} summands, got {len(lst)}")
    seen = set()
    for o in lst:
        if o.cls.vec in seen:
            raise DuplicateSummands(f"duplicate summand class {o.cls.vec}")
        seen.add(o.cls.vec)
    lst.sort(key=lambda o: o.sort_key())
    return TiltingObject(tuple(lst))


def is_tilting(ctx: K0Context, objs: Sequence[ExcObject] | TiltingObject) -> bool:
    """Rigid with n pairwise distinct summands; basis determinant checked.

    Returns False on the countable failures; raises BasisMismatch when
    an ext-orthogonal n-set fails the determinant cross-check, since
    that would contradict the operational definition of tilting.
    """
    lst = list(objs.summands if isinstance(objs, TiltingObject) else objs)
    if len(lst) != ctx.n:
        return False
    if len({o.cls.vec for o in lst}) != ctx.n:
        return False
    for x in lst:
        for y in lst:
            if ext_dim(ctx, x, y) != 0:
                return False
    d = int_det(tuple(o.cls.vec for o in lst))
    if abs(d) != 1:
        raise BasisMismatch(f"ext-orthogonal n-set has determinant {d}")
    return True


def is_bundle(t: TiltingObject) -> bool:
    return all(not s.slope.is_infinite for s in t.summands)


# -- canonical tilting bundle -----------------------------------------------


def canonical_interval(w: WeightData) -> list[LElement]:
    """The elements 0 <= x <= c: zero, j x_i (1 <= j < p_i), and c."""
    out = [l_zero(w)]
    for i, p_i in enumerate(w.weights):
        e = l_zero(w)
        for _ in range(1, p_i):
            e = l_add(e, x_gen(w, i))
            out.append(e)
    out.append(c_gen(w))
    return out


def t_can(ctx: K0Context, twist: LElement | None = None) -> TiltingObject:
    """The canonical tilting bundle, optionally twisted."""
    w = ctx.weights
    base = canonical_interval(w)
    if twist is not None:
        base = [l_add(x, twist) for x in base]
    return make_tilting(ctx, (line_bundle_obj(ctx, x) for x in base))


# -- hom structure among summands -------------------------------------------


def first_objects(ctx: K0Context, t: TiltingObject) -> tuple[int, ...]:
    """Indices receiving no nonzero map from any other summand."""
    out = []
    for k, tk in enumerate(t.summands):
        if all(
            hom_dim(ctx, ti, tk) == 0 for i, ti in enumerate(t.summands) if i != k
        ):
            out.append(k)
    return tuple(out)


def last_objects(ctx: K0Context, t: TiltingObject) -> tuple[int, ...]:
    """Indices emitting no nonzero map to any other summand."""
    out = []
    for k, tk in enumerate(t.summands):
        if all(
            hom_dim(ctx, tk, ti) == 0 for i, ti in enumerate(t.summands) if i != k
        ):
            out.append(k)
    return tuple(out)


def slope_range(ctx: K0Context, t: TiltingObject) -> tuple[Slope, Slope]:
    slopes = [s.slope for s in t.summands]
    return min(slopes), max(slopes)


def only_minimal(ctx: K0Context, t: TiltingObject) -> int | None:
    """Index of the strictly unique minimum-slope summand, if any."""
    lo = min(s.slope for s in t.summands)
    hits = [i for i, s in enumerate(t.summands) if s.slope == lo]
    return hits[0] if len(hits) == 1 else None


def only_maximal(ctx: K0Context, t: TiltingObject) -> int | None:
    hi = max(s.slope for s in t.summands)
    hits = [i for i, s in enumerate(t.summands) if s.slope == hi]
    return hits[0] if len(hits) == 1 else None


def wing_summands(ctx: K0Context, t: TiltingObject, z: int) -> tuple[int, ...]:
    """Indices of summands lying in the wing under summand z (z included)."""
    zz = t.summands[z]
    return tuple(
        i for i, s in enumerate(t.summands) if wing_contains(ctx, zz, s)
    )


# -- mutation ----------------------------------------------------------------


def mutate(ctx: K0Context, t: TiltingObject, k: int) -> tuple[TiltingObject, MutationEvent]:
    """Exchange summand k for the unique other complement.

    Candidate classes are sum_i b_i [T_i] - [T_k] over the remaining
    summands with 0 <= b_i <= max(hom(T_k, T_i), hom(T_i, T_k)); the
    bound covers the multiplicities of a minimal approximation in
    either exchange direction.
    """
    memo_key = (t.class_key(), k)
    got = ctx._mutations.get(memo_key)
    if got is not None:
        return got
    tk = t.summands[k]
    others = tuple(o for i, o in enumerate(t.summands) if i != k)
    bounds = [
        max(hom_dim(ctx, tk, o), hom_dim(ctx, o, tk)) for o in others
    ]
    vecs = [o.cls.vec for o in others]
    evs = [ctx.eb(v) for v in vecs]

    hits: list[tuple[int, ...]] = []

    def rec(idx: int, c: list[int], w: list[int], q: int) -> None:
        if idx == len(others):
            if q == 1:
                hits.append(tuple(c))
            return
        rec(idx + 1, c, w, q)
        v, ev = vecs[idx], evs[idx]
        cc, ww, qq = c, w, q
        for _ in range(bounds[idx]):
            qq = qq + dot(cc, ev) + dot(v, ww) + 1
            cc = [a + b for a, b in zip(cc, v)]
            ww = [a + b for a, b in zip(ww, ev)]
            rec(idx + 1, cc, ww, qq)

    start_c = [-x for x in tk.cls.vec]
    start_w = [-x for x in ctx.eb(tk.cls.vec)]
    rec(0, start_c, start_w, 1)

    survivors: list[ExcObject] = []
    for cv in hits:
        cls = K0Class(cv)
        try:
            obj = exc_from_class(ctx, cls)
        except (NotSheafLike, NotExceptionalHere):
            continue
        if all(
            ext_dim(ctx, obj, o) == 0 and ext_dim(ctx, o, obj) == 0 for o in others
        ):
            survivors.append(obj)

    if not survivors:
        raise ComplementNotFound(f"no complement found when mutating at index {k}")
    if len(survivors) > 1:
        raise ComplementNotUnique(
            f"{len(survivors)} complements found when mutating at index {k}"
        )
    new = survivors[0]
    result = make_tilting(ctx, others + (new,))
    if not is_tilting(ctx, result):
        raise InternalConsistencyError("mutation produced a non-tilting object")

    e_left = ext_dim(ctx, new, tk)  # nonzero iff 0 -> T_k -> B -> new -> 0
    e_right = ext_dim(ctx, tk, new)
    if (e_left > 0) == (e_right > 0):
        raise InternalConsistencyError(
            f"exchange direction ambiguous: ext {e_left}/{e_right}"
        )
    event = MutationEvent(
        index=k,
        removed=tk,
        added=new,
        direction="L" if e_left > 0 else "R",
        approx_class=tk.cls + new.cls,
    )
    if len(ctx._mutations) > 300_000:
        ctx._mutations.clear()
    ctx._mutations[memo_key] = (result, event)
    return result, event


def apr_mutate(ctx: K0Context, t: TiltingObject, k: int) -> tuple[TiltingObject, MutationEvent]:
    """Mutation at a first object; slope rises but stays within range."""
    if k not in first_objects(ctx, t):
        raise NotFirstObject(f"summand {k} is not a first object")
    hi = max(s.slope for s in t.summands)
    was_bundle = is_bundle(t)
    t2, ev = mutate(ctx, t, k)
    if not (ev.removed.slope <= ev.added.slope <= hi):
        raise InternalConsistencyError(
            f"APR slope bound violated: {ev.removed.slope} -> {ev.added.slope}"
        )
    if was_bundle and not is_bundle(t2):
        raise InternalConsistencyError("APR mutation left the bundle subgraph")
    return t2, ev


def co_apr_mutate(ctx: K0Context, t: TiltingObject, k: int) -> tuple[TiltingObject, MutationEvent]:
    """Mutation at a last object; slope drops but stays within range."""
    if k not in last_objects(ctx, t):
        raise NotLastObject(f"summand {k} is not a last object")
    lo = min(s.slope for s in t.summands)
    was_bundle = is_bundle(t)
    t2, ev = mutate(ctx, t, k)
    if not (lo <= ev.added.slope <= ev.removed.slope):
        raise InternalConsistencyError(
            f"co-APR slope bound violated: {ev.removed.slope} -> {ev.added.slope}"
        )
    if was_bundle and not is_bundle(t2):
        raise InternalConsistencyError("co-APR mutation left the bundle subgraph")
    return t2, ev


def purge_torsion(ctx: K0Context, t: TiltingObject) -> tuple[TiltingObject, list[MutationEvent]]:
    """Mutate away all infinite-slope summands, largest quasi-length first.

    Each step replaces one torsion summand by a finite-slope object, so
    the result is a tilting bundle after exactly s events.
    """
    torsion = [s for s in t.summands if s.slope.is_infinite]
    torsion.sort(key=lambda s: (-s.len, s.sort_key()))
    events: list[MutationEvent] = []
    cur = t
    for obj in torsion:
        k = cur.index_of(obj)
        cur, ev = mutate(ctx, cur, k)
        if ev.added.slope.is_infinite:
            raise InternalConsistencyError(
                "torsion purge produced another torsion summand"
            )
        events.append(ev)
    if not is_bundle(cur):
        raise InternalConsistencyError("torsion purge did not reach a bundle")
    return cur, events


def find_full_period_quasi_simple(ctx: K0Context, t: TiltingObject) -> int:
    """Smallest-index quasi-simple summand whose orbit size equals p."""
    for i, s in enumerate(t.summands):
        if s.len == 1 and orbit_rank(ctx, s) == ctx.p:
            return i
    raise NoFullPeriodSummand(
        "tilting object has no full-period quasi-simple summand"
    )


def perp_side(
    ctx: K0Context, x: ExcObject, e: ExcObject, side: str = "right"
) -> str | None:
    """Membership of e in the perpendicular category of x, with component.

    Returns None when e is not perpendicular, otherwise one of
    "preprojective", "regular", "preinjective" according to the slope
    of e relative to x.
    """
    if x.len != 1 or x.slope.is_infinite or rank_of(ctx, x.cls) < 1:
        raise PreconditionError("x must be a quasi-simple rigid bundle")
    if side == "right":
        member = hom_dim(ctx, x, e) == 0 and ext_dim(ctx, x, e) == 0
    elif side == "left":
        member = hom_dim(ctx, e, x) == 0 and ext_dim(ctx, e, x) == 0
    else:
        raise ValueError("side must be 'right' or 'left'")
    if not member:
        return None
    if e.slope < x.slope:
        return "preprojective"
    if e.slope == x.slope:
        return "regular"
    return "preinjective"
