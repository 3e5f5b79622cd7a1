import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plansat import (PlaneEmbedding, build_Gk, build_Hk, delete_edges, greedy_saturate, icosahedron, kleetope,
                     lemma1_construct, many3_construct, move_isolated, octahedron, random_triangulation)
from plansat import fileformat
from plansat.cli import main
from plansat.errors import ParseError


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(path, emb) -> str:
    fileformat.write(path, emb)
    return str(path)


def edge_lines(path) -> int:
    return sum(1 for line in open(path) if line.startswith("e "))


# -- file format -------------------------------------------------------------


def test_roundtrip_examples():
    embs = [octahedron(), icosahedron(), build_Hk(13).embedding, PlaneEmbedding.edgeless(4), build_Gk(7).embedding]
    for e in embs:
        assert fileformat.loads(fileformat.dumps(e)) == e


@settings(max_examples=100)
@given(st.integers(4, 12), st.integers(0, 10_000), st.data())
def test_roundtrip_random(n, seed, data):
    t = random_triangulation(n, seed)
    drop = data.draw(st.lists(st.sampled_from(list(t.graph.sorted_edges)), unique=True))
    e = delete_edges(t, drop)
    iso = [v for v in range(n) if e.graph.degrees[v] == 0]
    if iso and e.edge_count:
        e = move_isolated(e, {v: data.draw(st.sampled_from([f.id for f in e.faces])) for v in iso})
    back = fileformat.loads(fileformat.dumps(e))
    assert back == e and [f.id for f in back.faces] == [f.id for f in e.faces]


def test_roundtrip_constructions():
    e = kleetope(octahedron())
    for h in (many3_construct(e.graph, e)[0], lemma1_construct(icosahedron().graph)[0],
              greedy_saturate(PlaneEmbedding.edgeless(6), octahedron().graph)[0]):
        assert fileformat.loads(fileformat.dumps(h)) == h


def test_spec_grammar_without_child_darts():
    text = "pse 1\nn 4\ne 0 1\ne 0 2\ne 1 2\n# comment\n\nr 0: 1 2\nr 1: 2 0\nr 2: 0 1\na 0: root\na 3: 0 1\n"
    e = fileformat.loads(text)
    assert e.edge_count == 3 and 3 in e.face_of_dart((0, 1)).isolated


@pytest.mark.parametrize("text", [
    "",
    "pse 2\nn 3\n",
    "pse 1\nn x\n",
    "pse 1\nn 3\ne 0 5\n",
    "pse 1\nn 3\ne 0 1\nr 0: 1\n",
    "pse 1\nn 3\nq 1\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        fileformat.loads(text)


def test_report_has_no_floats():
    doc = fileformat.to_plain({"x": Fraction(15, 2), "y": [Fraction(3)]})
    assert doc == {"x": "15/2", "y": [3]}


def test_dot_export(tmp_path, capsys):
    out, dot = tmp_path / "o.pse", tmp_path / "o.dot"
    code, _, _ = run(capsys, "gen", "--family", "octahedron", "--out", str(out), "--dot", str(dot))
    assert code == 0 and dot.read_text().startswith("graph")
    assert fileformat.read(out) == octahedron()


# -- subcommands -------------------------------------------------------------


def test_gen_gk12(tmp_path, capsys):
    out = tmp_path / "gk.pse"
    code, _, _ = run(capsys, "gen", "--family", "gk", "--k", "12", "--out", str(out))
    assert code == 0 and edge_lines(out) == 117
    assert fileformat.read(out).vertex_count == 41


def test_gen_hk12(tmp_path, capsys):
    out = tmp_path / "hk.pse"
    code, _, _ = run(capsys, "gen", "--family", "hk", "--k", "12", "--out", str(out))
    assert code == 0 and edge_lines(out) == 41
    assert fileformat.read(out).vertex_count == 41


def test_gen_hk11_rejected(capsys):
    code, _, err = run(capsys, "gen", "--family", "hk", "--k", "11")
    assert code == 2 and "BadParameter" in err


def test_gen_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "--family", "random", "--n", "9", "--seed", "3")
    assert code == 0 and fileformat.loads(out) == random_triangulation(9, 3)


def test_check_gk12_hk12(tmp_path, capsys):
    host = write(tmp_path / "g.pse", build_Gk(12).embedding)
    sub = write(tmp_path / "h.pse", build_Hk(12).embedding)
    code, out, _ = run(capsys, "check", "--host", host, "--sub", sub)
    assert code == 0, out


def test_check_self(tmp_path, capsys):
    host = write(tmp_path / "g.pse", icosahedron())
    code, out, _ = run(capsys, "check", "--host", host, "--sub", host)
    assert code == 0 and "saturated: yes" in out


def test_check_edgeless(tmp_path, capsys):
    host = write(tmp_path / "g.pse", octahedron())
    sub = write(tmp_path / "h.pse", PlaneEmbedding.edgeless(6))
    code, out, _ = run(capsys, "check", "--host", host, "--sub", sub, "--json")
    doc = json.loads(out)
    assert code == 1 and doc["saturated"] is False
    assert any(v["witness"] is not None for v in doc["pair_verdicts"])


def test_check_input_errors(tmp_path, capsys):
    host = write(tmp_path / "g.pse", octahedron())
    sub = write(tmp_path / "h.pse", PlaneEmbedding.edgeless(5))
    assert run(capsys, "check", "--host", host, "--sub", sub)[0] == 2
    bad = tmp_path / "bad.pse"
    bad.write_text("nonsense\n")
    assert run(capsys, "check", "--host", str(bad), "--sub", host)[0] == 2
    assert run(capsys, "check", "--host", str(tmp_path / "missing"), "--sub", host)[0] == 2


def test_construct_auto(tmp_path, capsys):
    host = write(tmp_path / "g.pse", random_triangulation(24, 5))
    out = tmp_path / "h.pse"
    code, text, _ = run(capsys, "construct", "--host", host, "--method", "auto", "--out", str(out), "--json")
    doc = json.loads(text)
    assert code == 0
    cert = next(c for c in doc["trace"]["bound_certificates"] if c["formula"] == "auto_edges")
    assert cert["satisfied"] and cert["lhs"] == 300 * fileformat.read(out).edge_count and cert["rhs"] == 899 * 24


def test_construct_many3_precondition(tmp_path, capsys):
    host = write(tmp_path / "g.pse", icosahedron())
    code, _, err = run(capsys, "construct", "--host", host, "--method", "many3")
    assert code == 2 and "PreconditionFailed: 5k-2n <= 0" in err


def test_construct_lemma1_icosahedron(tmp_path, capsys):
    host = write(tmp_path / "g.pse", icosahedron())
    code, text, _ = run(capsys, "construct", "--host", host, "--method", "lemma1", "--json")
    doc = json.loads(text)
    (cert,) = doc["trace"]["bound_certificates"]
    assert code == 0 and cert["integer_bound"] == 27 and doc["trace"]["final_edges"] <= 27


def test_bounds_gk12(tmp_path, capsys):
    host = write(tmp_path / "g.pse", build_Gk(12).embedding)
    code, text, _ = run(capsys, "bounds", "--host", host, "--json")
    certs = {c["formula"]: c for c in json.loads(text)["certificates"]}
    assert code == 0
    assert Fraction(certs["lower_face_count"]["lhs"]) == Fraction(45, 6)
    assert Fraction(certs["lower_general"]["lhs"]) == Fraction(117, 16)
    assert certs["degree_gap"]["integer_bound"] == 107
    assert "deg3_count" in certs


def test_exact_octahedron(tmp_path, capsys):
    host = write(tmp_path / "g.pse", octahedron())
    out = tmp_path / "w.pse"
    code, text, _ = run(capsys, "exact", "--host", host, "--out", str(out))
    assert code == 0 and "sat: 9" in text and fileformat.read(out).edge_count == 9


def test_exact_too_large(tmp_path, capsys):
    host = write(tmp_path / "g.pse", random_triangulation(20, 0))
    code, _, err = run(capsys, "exact", "--host", host)
    assert code == 2 and "TooLarge" in err


def test_props_codes(tmp_path, capsys):
    from plansat.generators import stacked_triangulation
    assert run(capsys, "props", "--host", write(tmp_path / "a.pse", kleetope(octahedron())))[0] == 0
    code, out, _ = run(capsys, "props", "--host", write(tmp_path / "b.pse", stacked_triangulation(5)))
    assert code == 0 and "exception" in out
    assert run(capsys, "props", "--host", write(tmp_path / "c.pse", PlaneEmbedding.edgeless(6)))[0] == 2


def test_usage_error_exit_code():
    r = subprocess.run([sys.executable, "-m", "plansat.cli", "gen"], capture_output=True)
    assert r.returncode == 2


def test_console_script(tmp_path):
    r = subprocess.run(["plansat", "gen", "--family", "double_wheel", "--k", "5"], capture_output=True, text=True)
    assert r.returncode == 0 and fileformat.loads(r.stdout).vertex_count == 7
