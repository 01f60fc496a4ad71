import json

import pytest

from tubtilt import serialize
from tubtilt.connect import connect_to_canonical, random_walk, verify_path
from tubtilt.errors import ValidationError
from tubtilt.slopes import INF, Slope
from tubtilt.tilting import t_can
from tubtilt.tubes import chart_for, line_bundle_obj
from tubtilt.weights import l_zero, x_gen


def test_exc_round_trip(ctx2222):
    obj = line_bundle_obj(ctx2222, x_gen(ctx2222.weights, 2))
    data = serialize.exc_to_dict(obj)
    assert data["class"] == list(obj.cls.vec)
    assert data["slope"] == "1"
    assert serialize.exc_from_dict(ctx2222, data) == obj


def test_exc_rejects_tampered_fields(ctx2222):
    obj = line_bundle_obj(ctx2222, l_zero(ctx2222.weights))
    data = serialize.exc_to_dict(obj)
    data["socle"] = (data["socle"] + 1) % 2
    with pytest.raises(ValidationError):
        serialize.exc_from_dict(ctx2222, data)


def test_exc_rejects_bad_class(ctx2222):
    with pytest.raises(ValidationError):
        serialize.exc_from_dict(ctx2222, {"class": [0, 0, 0, 0, 0]})
    with pytest.raises(ValidationError):
        serialize.exc_from_dict(ctx2222, {"class": [0.5, 0, 0, 0, 0, 1]})


def test_tilting_round_trip(ctx2222):
    tc = t_can(ctx2222)
    data = serialize.tilting_to_dict(ctx2222, tc)
    ctx2, again = serialize.tilting_from_dict(data)
    assert ctx2.weights == ctx2222.weights
    assert again.class_key() == tc.class_key()
    # also against the provided context
    _, again2 = serialize.tilting_from_dict(data, ctx2222)
    assert again2 == tc


def test_tilting_weights_mismatch(ctx2222, ctx236):
    data = serialize.tilting_to_dict(ctx2222, t_can(ctx2222))
    with pytest.raises(ValidationError):
        serialize.tilting_from_dict(data, ctx236)


def test_path_round_trip(ctx2222):
    path = connect_to_canonical(ctx2222, t_can(ctx2222, x_gen(ctx2222.weights, 3)))
    data = serialize.path_to_dict(ctx2222, path)
    assert data["bundleOnly"] is True
    again = serialize.path_from_dict(ctx2222, data)
    assert verify_path(ctx2222, again)
    assert [n.class_key() for n in again.nodes] == [n.class_key() for n in path.nodes]


def test_event_wire_format(ctx2222):
    path = random_walk(ctx2222, 1, seed=3)
    ev = serialize.event_to_dict(path.events[0])
    assert set(ev) == {"k", "removed", "added", "dir"}
    assert ev["dir"] in ("L", "R")


def test_chart_cache_round_trip(ctx2222, tmp_path):
    chart_for(ctx2222, Slope(1, 2))
    chart_for(ctx2222, INF)
    written = serialize.save_chart_cache(ctx2222, str(tmp_path))
    assert written >= 2
    from tubtilt.k0 import build_context
    from tubtilt.weights import make_weights

    fresh = build_context(make_weights((2, 2, 2, 2)))
    loaded = serialize.load_chart_cache(fresh, str(tmp_path))
    assert loaded == written
    assert fresh._charts[Slope(1, 2)].orbits == ctx2222._charts[Slope(1, 2)].orbits


def test_chart_cache_skips_corrupt_entries(ctx2222, tmp_path):
    chart_for(ctx2222, Slope(1, 3))
    serialize.save_chart_cache(ctx2222, str(tmp_path))
    target = next(tmp_path.glob("chart_2-2-2-2_q1_3.json"))
    data = json.loads(target.read_text())
    data["orbits"][0], data["orbits"][1] = (
        [data["orbits"][0][0], data["orbits"][1][1]],
        [data["orbits"][1][0], data["orbits"][0][1]],
    )
    target.write_text(json.dumps(data))
    from tubtilt.k0 import build_context
    from tubtilt.weights import make_weights

    fresh = build_context(make_weights((2, 2, 2, 2)))
    serialize.load_chart_cache(fresh, str(tmp_path))
    assert Slope(1, 3) not in fresh._charts  # rejected, will be rebuilt


def test_canonical_json_is_deterministic(ctx2222):
    tc = t_can(ctx2222)
    a = serialize.dumps(serialize.tilting_to_dict(ctx2222, tc))
    b = serialize.dumps(serialize.tilting_to_dict(ctx2222, tc))
    assert a == b
    assert "\n" not in a
