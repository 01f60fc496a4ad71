import random

import pytest

from tubtilt.errors import ChartInconsistent, NotExceptionalHere
from tubtilt.k0 import K0Class, chi, line_bundle_class, rank_of
from tubtilt.slopes import INF, Slope
from tubtilt.tubes import (
    ExcObject,
    Window,
    chart_for,
    check_chart_invariants,
    coords_of_class,
    exc_from_class,
    ext_dim,
    hom_dim,
    line_bundle_obj,
    tau_obj,
    tube_hom_oracle,
    twist_obj,
    wing_contains,
    window_class,
)
from tubtilt.weights import c_gen, l_zero, omega, x_gen

CHART_SLOPES = [INF, Slope(0, 1), Slope(1, 1), Slope(1, 2), Slope(-1, 2), Slope(1, 3), Slope(2, 3), Slope(3, 2)]


def test_chart_census_2222(ctx2222):
    for q in (INF, Slope(0, 1), Slope(1, 1), Slope(1, 2)):
        chart = chart_for(ctx2222, q)
        assert chart.ranks == (2, 2, 2, 2)
        assert chart.quasi_simple_count() == 8


def test_chart_census_at_infinity(any_ctx):
    chart = chart_for(any_ctx, INF)
    assert tuple(sorted(chart.ranks)) == any_ctx.weights.weights
    assert chart.quasi_simple_count() == sum(any_ctx.weights.weights)


def test_chart_quasi_simples_at_infinity_2222(ctx2222):
    chart = chart_for(ctx2222, INF)
    got = {c.vec for orbit in chart.orbits for c in orbit}
    want = set()
    for i in range(4):
        e = [0] * 6
        e[1 + i] = 1
        want.add(tuple(e))
        f = [0] * 6
        f[1 + i] = -1
        f[5] = 1
        want.add(tuple(f))
    assert got == want


def test_chart_realizability_all_slopes(any_ctx):
    for q in CHART_SLOPES:
        chart = chart_for(any_ctx, q)
        assert tuple(sorted(chart.ranks)) == any_ctx.weights.weights
        check_chart_invariants(any_ctx, chart)


def test_chart_memo_idempotent(ctx2222):
    assert chart_for(ctx2222, Slope(1, 2)) is chart_for(ctx2222, Slope(1, 2))


def test_tau_orbit_pairing_at_zero_2222(ctx2222):
    # tau pairs O(x) with O(x + omega) at slope zero
    chart = chart_for(ctx2222, Slope(0, 1))
    o = line_bundle_class(ctx2222, l_zero(ctx2222.weights))
    obj = coords_of_class(ctx2222, chart, o)
    om = line_bundle_class(ctx2222, omega(ctx2222.weights))
    assert tau_obj(ctx2222, obj).cls == om


# -- the in-tube oracle vs an independent count ------------------------------


def _serial_hom(r, w1, w2):
    """Subquotient count: a nonzero map factors through a common serial
    object that is a quotient of the source and a submodule of the target."""
    k0 = (w2.socle - w1.socle) % r
    if k0 <= w1.len - 1 and w1.len - k0 <= w2.len:
        return 1
    return 0


def test_tube_oracle_examples():
    assert tube_hom_oracle(4, Window(0, 1), Window(0, 1)) == 1
    assert tube_hom_oracle(4, Window(0, 3), Window(1, 3)) == 1
    assert tube_hom_oracle(4, Window(0, 1), Window(1, 1)) == 0


def test_tube_oracle_matches_serial_count():
    for r in range(2, 7):
        for s1 in range(r):
            for l1 in range(1, r):
                for s2 in range(r):
                    for l2 in range(1, r):
                        w1, w2 = Window(s1, l1), Window(s2, l2)
                        assert tube_hom_oracle(r, w1, w2) == _serial_hom(r, w1, w2), (
                            r,
                            w1,
                            w2,
                        )


def test_tube_oracle_full_length():
    # quasi-length r objects are not rigid: End is one-dimensional but
    # a self-extension exists
    for r in range(2, 7):
        assert tube_hom_oracle(r, Window(0, r), Window(0, r)) == 1
        assert tube_hom_oracle(r, Window(0, r), Window(r - 1, r)) == 1


def test_tube_oracle_validates_length():
    with pytest.raises(ValueError):
        tube_hom_oracle(3, Window(0, 4), Window(0, 1))


# -- hom/ext across slopes ------------------------------------------------------


def test_hom_examples_2222(ctx2222):
    w = ctx2222.weights
    o = line_bundle_obj(ctx2222, l_zero(w))
    oc = line_bundle_obj(ctx2222, c_gen(w))
    assert hom_dim(ctx2222, o, oc) == 2
    assert ext_dim(ctx2222, o, oc) == 0
    assert hom_dim(ctx2222, oc, o) == 0
    assert ext_dim(ctx2222, oc, o) == 0
    e11 = exc_from_class(ctx2222, K0Class((0, 1, 0, 0, 0, 0)))
    assert hom_dim(ctx2222, e11, e11) == 1
    assert ext_dim(ctx2222, e11, e11) == 0
    ow = line_bundle_obj(ctx2222, omega(w))
    assert ext_dim(ctx2222, ow, o) == 1


def _sample_objects(ctx, rng, count):
    pool = []
    for q in CHART_SLOPES:
        chart = chart_for(ctx, q)
        for t, orbit in enumerate(chart.orbits):
            r = len(orbit)
            for socle in range(r):
                for length in range(1, r):
                    pool.append(
                        ExcObject(window_class(chart, t, socle, length), q, t, socle, length)
                    )
    return [pool[rng.randrange(len(pool))] for _ in range(count)]


def test_hom_minus_ext_is_chi(any_ctx):
    rng = random.Random(13)
    for x, y in zip(
        _sample_objects(any_ctx, rng, 400), _sample_objects(any_ctx, rng, 400)
    ):
        h = hom_dim(any_ctx, x, y)
        e = ext_dim(any_ctx, x, y)
        assert h >= 0 and e >= 0
        assert h - e == chi(any_ctx, x.cls, y.cls)


def test_serre_duality_objects(any_ctx):
    rng = random.Random(14)
    for x, y in zip(
        _sample_objects(any_ctx, rng, 300), _sample_objects(any_ctx, rng, 300)
    ):
        assert ext_dim(any_ctx, x, y) == hom_dim(any_ctx, y, tau_obj(any_ctx, x))


def test_coords_round_trip(any_ctx):
    for q in (INF, Slope(0, 1), Slope(1, 2)):
        chart = chart_for(any_ctx, q)
        for t, orbit in enumerate(chart.orbits):
            r = len(orbit)
            for socle in range(r):
                for length in range(1, r):
                    cls = window_class(chart, t, socle, length)
                    obj = coords_of_class(any_ctx, chart, cls)
                    assert (obj.orbit, obj.socle, obj.len) == (t, socle, length)


def test_not_exceptional_rejections(ctx2222):
    chart = chart_for(ctx2222, INF)
    with pytest.raises(NotExceptionalHere):
        coords_of_class(ctx2222, chart, K0Class((0, 0, 0, 0, 0, 1)))
    with pytest.raises(NotExceptionalHere):
        # wrong slope for this chart
        coords_of_class(ctx2222, chart, K0Class((1, 0, 0, 0, 0, 0)))


def test_tau_objects(ctx2222):
    e11 = exc_from_class(ctx2222, K0Class((0, 1, 0, 0, 0, 0)))
    assert tau_obj(ctx2222, tau_obj(ctx2222, e11)) == e11
    o = line_bundle_obj(ctx2222, l_zero(ctx2222.weights))
    assert tau_obj(ctx2222, o).slope == o.slope


def test_twist_object(ctx2222):
    w = ctx2222.weights
    o = line_bundle_obj(ctx2222, l_zero(w))
    shifted = twist_obj(ctx2222, o, x_gen(w, 3))
    assert shifted.slope == Slope(1, 1)
    assert shifted.cls == line_bundle_class(ctx2222, x_gen(w, 3))
    assert rank_of(ctx2222, shifted.cls) == 1


def test_wing_containment(ctx244):
    chart = chart_for(ctx244, INF)
    big = next(i for i, orbit in enumerate(chart.orbits) if len(orbit) == 4)
    z = ExcObject(window_class(chart, big, 0, 3), INF, big, 0, 3)
    x = ExcObject(window_class(chart, big, 1, 2), INF, big, 1, 2)
    y = ExcObject(window_class(chart, big, 3, 1), INF, big, 3, 1)
    assert wing_contains(ctx244, z, z)
    assert wing_contains(ctx244, z, x)
    assert not wing_contains(ctx244, z, y)
    small = next(i for i, orbit in enumerate(chart.orbits) if len(orbit) == 2)
    other = ExcObject(window_class(chart, small, 0, 1), INF, small, 0, 1)
    assert not wing_contains(ctx244, z, other)


def test_wing_morphism_vanishing_exhaustive():
    # outside the wing with no map to its top, there is no map anywhere in it
    for r in range(2, 7):
        for zs in range(r):
            for zl in range(1, r):
                for xs in range(r):
                    for xl in range(1, r):
                        if (xs - zs) % r + xl <= zl:
                            continue
                        if tube_hom_oracle(r, Window(xs, xl), Window(zs, zl)):
                            continue
                        for off in range(zl):
                            for yl in range(1, zl - off + 1):
                                assert (
                                    tube_hom_oracle(
                                        r, Window(xs, xl), Window((zs + off) % r, yl)
                                    )
                                    == 0
                                )


def test_loaded_chart_validation_rejects_corruption(ctx2222):
    from tubtilt.tubes import TubeChart

    chart = chart_for(ctx2222, INF)
    # swap two orbits' basepoints to break the tau ordering
    o0 = list(chart.orbits[0])
    bad = TubeChart(INF, (tuple([o0[0], chart.orbits[1][1]]),) + chart.orbits[1:])
    with pytest.raises(ChartInconsistent):
        check_chart_invariants(ctx2222, bad)


def test_twist_composition(ctx236):
    from tubtilt.weights import l_add, l_neg

    w = ctx236.weights
    o = line_bundle_obj(ctx236, l_zero(w))
    v1 = x_gen(w, 1)
    v2 = l_neg(x_gen(w, 2))
    one = twist_obj(ctx236, twist_obj(ctx236, o, v1), v2)
    both = twist_obj(ctx236, o, l_add(v1, v2))
    assert one == both
    back = twist_obj(ctx236, one, l_neg(l_add(v1, v2)))
    assert back == o
