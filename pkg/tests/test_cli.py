import json

import pytest

from openbooks import cli
from openbooks.openbook import hopf_plumb
from openbooks.surface import new_surface


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_invariants_lens_space(capsys, files):
    code, out, _ = run(capsys, "invariants", "--json", files("a.ob", "surface g=0 b=2\nword core core\n"))
    rep = json.loads(out)
    assert code == 0
    assert rep["torsion"] == [2] and rep["manifold_betti"] == 0
    assert rep["literal_fixed_dim"] == 1 and rep["readings_differ"] is True
    assert rep["convention_fingerprint"] == cli.convention_fingerprint()
    for key in ("page_betti", "trivial", "verdict", "certificate", "tool_version"):
        assert key in rep


def test_identity_on_genus_two(capsys, files):
    code, out, _ = run(capsys, "invariants", "--json", files("id.ob", "surface g=2 b=1\nword\n"))
    rep = json.loads(out)
    assert rep["manifold_betti"] == 4 and rep["trivial"] is True
    code, out, _ = run(capsys, "s2s1", files("id2.ob", "surface g=2 b=1\n"))
    assert "verdict: FULL_CONNECTED_SUM" in out


def test_s2s1_certificates(capsys, files):
    chain = files("chain.ob", "surface g=1 b=1\nword " + "a1 b1 " * 6 + "\nlabel chain\n")
    code, out, _ = run(capsys, "s2s1", "--json", chain)
    rep = json.loads(out)
    assert rep["verdict"] == "STRICTLY_FEWER"
    assert rep["certificate"].startswith("nontrivial automorphism; homology blind")
    assert rep["label"] == "chain"
    code, out, _ = run(capsys, "s2s1", "--json", files("hopf.ob", "surface g=0 b=2\nword core\n"))
    assert "b1(M)=0 < 1" in json.loads(out)["certificate"]


def test_trivial_command(capsys, files):
    code, out, _ = run(capsys, "trivial", files("t.ob", "surface g=1 b=1\nword a1 a1^-1\n"))
    assert code == 0 and "trivial: True" in out


@pytest.mark.parametrize("text,where", [
    ("surface g=0 b=2\nword core%\n", "2:6"),
    ("surface g=x b=2\n", "1:9"),
    ("surface g=0 b=2\nfrobnicate\n", "2:1"),
    ("surface g=1 b=1\ncurve q 1*1/4\nword q\n", "2:9"),
    ("word a1\n", "1:1"),
])
def test_parse_errors_exit_2(capsys, files, text, where):
    code, _, err = run(capsys, "invariants", files("bad.ob", text))
    assert code == 2
    assert f"bad.ob:{where}:" in err


def test_parse_error_position(capsys, files):
    code, _, err = run(capsys, "invariants", files("bad.ob", "surface g=0 b=2\nword core%\n"))
    assert code == 2 and "bad.ob:2:6: bad twist token" in err


@pytest.mark.parametrize("text", [
    "surface g=0 b=0\n",
    "surface g=1 b=1\nword nope\n",
    "surface g=1 b=1\ncurve q 1+1/2\nword q\n",
    "surface g=1 b=1\ncurve a1 1+1/4\n",
    "surface g=0 b=2\ngenerators z\nlayout 1A 1B\n".replace("g=0 b=2", "g=1 b=1"),
])
def test_validation_errors_exit_3(capsys, files, text):
    code, _, err = run(capsys, "invariants", files("v.ob", text))
    assert code == 3 and "invalid input" in err


def test_word_budget(capsys, files):
    path = files("big.ob", "surface g=1 b=1\nword " + "a1 b1^-1 " * 20 + "\n")
    code, _, err = run(capsys, "invariants", "--max-word-length", "40", path)
    assert code == 3 and "budget" in err


def test_braid_commands(capsys):
    code, out, _ = run(capsys, "braid", "check", "-n", "4", "-w", "")
    assert "CLOSURE_MAY_BE_UNLINK" in out
    code, out, _ = run(capsys, "braid", "check", "--json", "-n", "2", "-w", "s1")
    assert json.loads(out)["verdict"] == "CLOSURE_NOT_UNLINK"
    code, out, _ = run(capsys, "braid", "lift", "-n", "3")
    assert out.startswith("surface g=1 b=1\nword\n")
    code, _, err = run(capsys, "braid", "check", "-n", "3", "-w", "s9")
    assert code == 2


def test_transform_plumb_and_consum(capsys, files):
    code, out, _ = run(capsys, "transform", "plumb", files("disk.ob", "surface g=0 b=1\n"))
    assert out == "surface g=0 b=2\nword c1\n"
    a2 = files("a2.ob", "surface g=0 b=2\nword core core\n")
    a3 = files("a3.ob", "surface g=0 b=2\nword core^-1 core^-1 core^-1\n")
    code, out, _ = run(capsys, "transform", "consum", a2, a3)
    summed = files("sum.ob", out)
    code, out, _ = run(capsys, "invariants", "--json", summed)
    assert json.loads(out)["torsion"] == [6]  # Z/2 + Z/3
    code, _, err = run(capsys, "transform", "plumb", a2, "1,7")
    assert code == 3
    code, _, err = run(capsys, "transform", "plumb", a2, "1,2", "+2")
    assert code == 3


def test_plumbing_pipeline_preserves_invariants(capsys, files):
    path = files("start.ob", "surface g=1 b=1\nword a1 b1 a1 b1^-1 b1^-1\n")
    code, out, _ = run(capsys, "invariants", "--json", path)
    want = json.loads(out)
    for step, args in enumerate([[], ["2,1", "-1"], [], ["1,1"]]):
        code, text, _ = run(capsys, "transform", "plumb", path, *args)
        assert code == 0
        path = files(f"p{step}.ob", text)
        code, out, _ = run(capsys, "invariants", "--json", path)
        got = json.loads(out)
        assert (got["manifold_betti"], got["torsion"]) == (want["manifold_betti"], want["torsion"])


def test_emit_parse_round_trip():
    ob = cli.parse_open_book("surface g=1 b=2\nword a1 c3^-1 bd2\nlabel x\n")
    text = cli.format_open_book(ob)
    assert text == "surface g=1 b=2\nword a1 c3^-1 bd2\nlabel x\n"
    weird = hopf_plumb(ob, (1, 1), standard=False)
    again = cli.parse_open_book(cli.format_open_book(weird))
    assert again.monodromy == weird.monodromy
    assert cli.format_open_book(again) == cli.format_open_book(weird)


def test_fingerprint_tracks_conventions(monkeypatch):
    before = cli.convention_fingerprint()
    monkeypatch.setitem(cli.PINNED_CONVENTIONS, "transvection_sign", 1)
    assert cli.convention_fingerprint() != before
