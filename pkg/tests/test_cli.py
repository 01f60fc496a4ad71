import io
import json
from contextlib import redirect_stderr, redirect_stdout

from tubtilt import cli, serialize
from tubtilt.tilting import t_can
from tubtilt.verify import context_for


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.run(argv)
    return code, out.getvalue(), err.getvalue()


def test_info():
    code, out, _ = run_cli(["--weights", "2,2,2,2", "info"])
    assert code == 0
    assert "n: 6" in out and "p: 2" in out
    assert "O S1,1 S2,1 S3,1 S4,1 f" in out


def test_info_rejects_non_tubular():
    code, out, err = run_cli(["--weights", "2,3,5", "info"])
    assert code == 2
    diag = json.loads(err)
    assert diag["error"] == "NonTubularWeights"


def test_usage_error_exit_code():
    code, _, _ = run_cli(["frobnicate"])
    assert code == 2


def test_check_expression():
    code, out, _ = run_cli(["--weights", "2,2,2,2", "check", "Tcan"])
    assert code == 0
    assert json.loads(out)["tilting"] is True


def test_check_file(tmp_path):
    ctx = context_for((2, 3, 6))
    f = tmp_path / "t.json"
    f.write_text(serialize.dumps(serialize.tilting_to_dict(ctx, t_can(ctx))))
    code, out, _ = run_cli(["check", str(f)])
    assert code == 0
    assert json.loads(out)["summands"] == 10


def test_check_rejects_corrupt_file(tmp_path):
    ctx = context_for((2, 2, 2, 2))
    data = serialize.tilting_to_dict(ctx, t_can(ctx))
    data["summands"][0] = data["summands"][1]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(data))
    code, _, err = run_cli(["check", str(f)])
    assert code == 1
    assert json.loads(err)["error"] == "DuplicateSummands"


def test_check_rejects_tampered_coordinates(tmp_path):
    ctx = context_for((2, 2, 2, 2))
    data = serialize.tilting_to_dict(ctx, t_can(ctx))
    data["summands"][0]["class"] = data["summands"][1]["class"]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(data))
    code, _, err = run_cli(["check", str(f)])
    assert code == 1
    assert json.loads(err)["error"] == "ValidationError"


def test_mutate_frozen_value():
    code, out, _ = run_cli(["--weights", "2,2,2,2", "mutate", "Tcan", "--at", "0"])
    assert code == 0
    data = json.loads(out)
    assert data["event"]["removed"] == [1, 0, 0, 0, 0, 0]
    assert data["event"]["added"] == [3, 1, 1, 1, 1, 0]
    assert data["event"]["dir"] == "L"


def test_mutate_at_expression():
    code, out, _ = run_cli(
        ["--weights", "2,2,2,2", "mutate", "Tcan", "--at", "L(c)"]
    )
    assert code == 0
    assert json.loads(out)["event"]["added"] == [3, 1, 1, 1, 1, -1]


def test_walk_and_connect(tmp_path):
    code, out, _ = run_cli(
        ["--weights", "2,2,2,2", "walk", "--steps", "4", "--seed", "11", "--bundle-only"]
    )
    assert code == 0
    walk = json.loads(out)
    assert walk["bundleOnly"] is True
    assert len(walk["nodes"]) == 5
    f = tmp_path / "end.json"
    f.write_text(json.dumps(walk["nodes"][-1]))
    code, out, _ = run_cli(["connect", str(f), "--to", "canonical"])
    assert code == 0
    path = json.loads(out)
    assert path["bundleOnly"] is True
    assert path["nodes"][-1] == serialize.tilting_to_dict(
        context_for((2, 2, 2, 2)), t_can(context_for((2, 2, 2, 2)))
    )


def test_connect_to_expression_target():
    code, out, _ = run_cli(
        ["--weights", "2,2,2,2", "connect", "mu(Tcan, 0)", "--to", "Tcan(x4)"]
    )
    assert code == 0
    assert json.loads(out)["bundleOnly"] is True


def test_purge():
    # mutate T_can at a slope-1 line bundle: the complement is torsion
    code, out, _ = run_cli(["--weights", "2,2,2,2", "purge", "mu(Tcan, 1)"])
    assert code == 0
    data = json.loads(out)
    assert len(data["events"]) == 1
    assert all(
        s["slope"] != "inf" for s in data["tilting"]["summands"]
    )


def test_chart_subcommand():
    code, out, _ = run_cli(["--weights", "2,4,4", "chart", "--slope", "inf"])
    assert code == 0
    data = json.loads(out)
    assert sorted(len(o) for o in data["orbits"]) == [2, 4, 4]


def test_graph_dot_export(tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run_cli(
        [
            "--weights",
            "2,2,2,2",
            "graph",
            "--slope-window",
            "0..inf",
            "--max-nodes",
            "7",
            "--dot",
            str(dot),
        ]
    )
    assert code == 0
    stats = json.loads(out)
    assert (stats["nodes"], stats["edges"]) == (7, 6)
    text = dot.read_text()
    assert text.startswith("graph tilting {")
    assert text.count(" -- ") == 6
    assert 'label="0,1,1,1,1,2"' in text


def test_graph_deterministic(tmp_path):
    argv = [
        "--weights",
        "3,3,3",
        "graph",
        "--slope-window",
        "0..3",
        "--max-nodes",
        "5",
        "--dot",
    ]
    d1, d2 = tmp_path / "a.dot", tmp_path / "b.dot"
    assert run_cli(argv + [str(d1)])[0] == 0
    assert run_cli(argv + [str(d2)])[0] == 0
    assert d1.read_text() == d2.read_text()


def test_cli_determinism():
    for argv in (
        ["--weights", "2,2,2,2", "info"],
        ["--weights", "2,2,2,2", "chart", "--slope", "1/2"],
        ["--weights", "2,3,6", "walk", "--steps", "3", "--seed", "7"],
    ):
        c1, o1, _ = run_cli(argv)
        c2, o2, _ = run_cli(argv)
        assert (c1, o1) == (c2, o2)
        assert c1 == 0


def test_verify_subcommand_small():
    code, out, _ = run_cli(["verify", "--suite", "abcd", "--trials", "30"])
    assert code == 0
    assert "PASS" in out


def test_chart_cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("TUBTILT_CACHE", str(tmp_path))
    code, _, _ = run_cli(["--weights", "2,2,2,2", "chart", "--slope", "1/2"])
    assert code == 0
    files = list(tmp_path.glob("chart_2-2-2-2_*.json"))
    assert files
    # cached charts load and the command stays deterministic
    c2, out2, _ = run_cli(["--weights", "2,2,2,2", "chart", "--slope", "1/2"])
    assert c2 == 0
    monkeypatch.setenv("TUBTILT_CACHE", str(tmp_path / "nope"))
    c3, out3, _ = run_cli(["--weights", "2,2,2,2", "--no-cache", "chart", "--slope", "1/2"])
    assert c3 == 0
    assert out3 == out2
    assert not (tmp_path / "nope").exists()
