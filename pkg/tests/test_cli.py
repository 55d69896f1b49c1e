import json

from hypothesis import given, strategies as st

from sparsecodes import (
    Arrangement,
    complete_graph,
    complete_multipartite_graph,
    full_subdivision,
    graph_full_code,
    is_intersection_complete,
    parse_code,
    realize_complete_multipartite,
)
from sparsecodes.cli import main, random_code
from sparsecodes.verify import compute_code

FIG1 = "000\n100\n010\n110\n011\n"
FIG2 = "000\n010\n001\n110\n101\n"


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _code_file(tmp_path, name, C):
    return _write(tmp_path, name, C.format() + "\n")


def test_analyze_interval_code(tmp_path, capsys):
    assert main(["analyze", _write(tmp_path, "c.txt", FIG1)]) == 0
    assert "realizable, d(C)=1" in capsys.readouterr().out


def test_analyze_reports_witness(tmp_path, capsys):
    assert main(["analyze", _write(tmp_path, "c.txt", FIG2)]) == 1
    assert "not realizable; witness ({1,2},{1,3})" in capsys.readouterr().out


def test_analyze_three_sparse(tmp_path, capsys):
    assert main(["analyze", _write(tmp_path, "c.txt", "000\n110\n111\n")]) == 0
    assert "k=3; 2-sparse pipeline not applicable" in capsys.readouterr().out


def test_analyze_json(tmp_path, capsys):
    assert main(["analyze", "--json", _write(tmp_path, "c.txt", FIG1)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["intersection_complete"] and out["sparsity"] == 2
    assert out["report"]["lower"] == out["report"]["upper"] == 1


def test_parse_error_has_position(tmp_path, capsys):
    assert main(["analyze", _write(tmp_path, "c.txt", "000\n1x0\n")]) == 2
    assert "line 2, column 2" in capsys.readouterr().err


def test_realize_then_verify(tmp_path, capsys):
    code = _write(tmp_path, "c.txt", FIG1)
    out = str(tmp_path / "a.json")
    assert main(["realize", code, "--dim", "1", "--out", out]) == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert["pass"]
    arr = Arrangement.loads(open(out).read())
    assert arr.dim == 1 and compute_code(arr) == parse_code(FIG1)
    assert main(["verify", out, "--claim", code]) == 0
    capsys.readouterr()
    assert main(["verify", out, "--claim", _write(tmp_path, "d.txt", FIG2)]) == 1
    diff = json.loads(capsys.readouterr().out)["diff"]
    assert diff["missing"] == ["001", "101"]


def test_realize_multipartite_in_plane(tmp_path, capsys):
    C = graph_full_code(complete_multipartite_graph([2, 4, 3]))
    out = str(tmp_path / "a.json")
    assert main(["realize", _code_file(tmp_path, "c.txt", C), "--dim", "2", "--out", out]) == 0
    arr = Arrangement.loads(open(out).read())
    assert arr.topology == "open" and compute_code(arr) == C


def test_realize_refuses_plane_for_subdivided_k5(tmp_path, capsys):
    C = graph_full_code(full_subdivision(complete_graph(5)))
    assert main(["realize", _code_file(tmp_path, "c.txt", C), "--dim", "2"]) == 1
    msg = json.loads(capsys.readouterr().out)
    assert msg["error"] == "DimensionUnavailable"
    assert any(r["bound"] == "lower" and r["value"] == 3 for r in msg["report"]["reasons"])


def test_realize_not_realizable(tmp_path, capsys):
    assert main(["realize", _write(tmp_path, "c.txt", FIG2)]) == 1


def test_verify_k5(tmp_path, capsys):
    arr = realize_complete_multipartite([1] * 5)
    a = _write(tmp_path, "a.json", arr.dumps())
    assert main(["verify", a, "--claim", _code_file(tmp_path, "c.txt", graph_full_code(complete_graph(5)))]) == 0


def test_verify_malformed_scalar(tmp_path, capsys):
    bad = json.dumps({"dim": 1, "topology": "open",
                      "bodies": [{"kind": "interval", "label": 1, "lo": "1/0", "hi": "2"}]})
    a = _write(tmp_path, "a.json", bad)
    assert main(["verify", a, "--claim", _write(tmp_path, "c.txt", "0\n1\n")]) == 2


def test_verify_size_mismatch(tmp_path, capsys):
    a = _write(tmp_path, "a.json", realize_complete_multipartite([1, 1]).dumps())
    assert main(["verify", a, "--claim", _write(tmp_path, "c.txt", FIG1)]) == 2


def test_render_is_byte_identical(tmp_path, capsys):
    a = _write(tmp_path, "a.json", realize_complete_multipartite([1] * 5).dumps())
    o1, o2 = str(tmp_path / "1.svg"), str(tmp_path / "2.svg")
    assert main(["render", a, "--out", o1]) == 0
    assert main(["render", a, "--out", o2]) == 0
    assert open(o1, "rb").read() == open(o2, "rb").read()


def test_render_rejects_three_dimensions(tmp_path, capsys):
    from sparsecodes import realize_code_r3

    a = _write(tmp_path, "a.json", realize_code_r3(parse_code(FIG1)).dumps())
    assert main(["render", a]) == 1
    assert "unrenderable" in capsys.readouterr().err


def test_gen_single_neuron(capsys):
    seen = set()
    for seed in range(20):
        assert main(["gen", "--n", "1", "--seed", str(seed)]) == 0
        seen.add(capsys.readouterr().out.strip())
    assert seen <= {"0", "0,1"} and seen


def test_gen_rejects_large_n(capsys):
    assert main(["gen", "--n", "17"]) == 2


@given(st.integers(1, 16), st.integers(0, 10 ** 6))
def test_gen_is_deterministic_and_complete(n, seed):
    C = random_code(n, seed)
    assert C == random_code(n, seed)
    assert is_intersection_complete(C)
    assert C.max_weight <= 2


def test_roundtrip(tmp_path, capsys):
    a = _write(tmp_path, "a.json", realize_complete_multipartite([2, 2]).dumps())
    assert main(["roundtrip", a]) == 0
    assert json.loads(capsys.readouterr().out)["preserved"]


def test_unknown_command(capsys):
    assert main(["frobnicate"]) == 2
