import json
import subprocess
import sys

import pytest

from hamswitch import __version__
from hamswitch.cli import run
from hamswitch.graph import Graph, format_graph


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def k5(tmp_path):
    return write(tmp_path / "k5.txt", format_graph(Graph.complete(5)))


def test_help_and_version(capsys):
    assert run(["--help"]) == 0
    assert "reproduce" in capsys.readouterr().out
    assert run(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_missing_subcommand():
    assert run([]) == 2


def test_family_gadget(tmp_path):
    g, js = tmp_path / "x.txt", tmp_path / "x.json"
    assert run(["family", "gadget", "--l", "5", "--out", str(g), "--json", str(js)]) == 0
    props = json.loads(js.read_text())["properties"]
    assert props["ham_paths"] == 2 and props["difference"] == 10 and props["vertices"] == 16
    assert g.read_text().startswith("16 ")


def test_family_staircase_count(tmp_path):
    js = tmp_path / "s.json"
    assert run(["family", "staircase", "--n", "6", "--count", "--out", str(tmp_path / "s.txt"), "--json", str(js)]) == 0
    props = json.loads(js.read_text())["properties"]
    assert props["ham_cycles"] == props["expected"] == 16


def test_transform_contract(tmp_path):
    g = str(tmp_path / "g.txt")
    assert run(["family", "random", "--n", "30", "--delta", "23", "--seed", "4", "--cycles", "2", "--out", g]) == 0
    out = tmp_path / "t.json"
    assert run(["transform", "--graph", g, "--from", g + ".h1", "--to", g + ".h2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    c = doc["contract"]
    assert c["reaches_target"] and c["length_within_difference"] and c["max_switch_edges"] <= 20
    assert doc["version"] == __version__ and doc["config"]["command"] == "transform"


def test_sample_and_enumerate(tmp_path, k5):
    out = tmp_path / "s.json"
    assert run(["sample", "--graph", k5, "--steps", "50", "--seed", "3", "--out", str(out)]) == 0
    assert "trajectory" in json.loads(out.read_text())
    assert run(["enumerate", "--graph", k5, "--class", "almost", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["count"] == 97


def test_js_exact(tmp_path, k5):
    out = tmp_path / "j.json"
    assert run(["js", "--graph", k5, "--exact", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["k_js"] == 2 and doc["states"] == 97 and doc["ratio"] == "97/12"


def test_stategraph_and_mix(tmp_path, k5):
    out = tmp_path / "o.json"
    assert run(["stategraph", "--graph", k5, "--exact-matrix", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["connected"] and doc["states"] == 12 and doc["matrix"]["symmetric"]
    csv_path = tmp_path / "c.csv"
    assert run(["mix", "--graph", k5, "--eps", "0.25", "0.05", "--empirical", "--trials", "2000", "--csv", str(csv_path), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["exact"]["tau"]["0.05"] >= doc["exact"]["tau"]["0.25"]
    assert csv_path.read_text().startswith("mode,start,t,tv")


def test_monotone_embed(tmp_path):
    from hamswitch.enumerate import two_factors
    from hamswitch.families import random_dense_monotone
    from hamswitch.graph import format_edges

    mg = random_dense_monotone(5, 0, 3)
    g = write(tmp_path / "m.txt", format_graph(mg.graph))
    f = write(tmp_path / "f.txt", format_edges(two_factors(mg.graph)[0], 10))
    trace = tmp_path / "tr.json"
    assert run(["monotone-embed", "--graph", g, "--two-factor", f, "--out", str(tmp_path / "h.txt"), "--trace", str(trace)]) == 0
    assert json.loads(trace.read_text())["trace"]["roundtrip_ok"]


def test_parse_error_exit(tmp_path, capsys):
    bad = write(tmp_path / "bad.txt", "4 2\n0 1\n1 x\n")
    assert run(["enumerate", "--graph", bad]) == 2
    assert "line 3" in capsys.readouterr().err


def test_precondition_exit(tmp_path):
    g = write(tmp_path / "c.txt", format_graph(Graph.cycle(30)))
    h = write(tmp_path / "h.txt", "30 30\n" + "".join(f"{min(i, (i + 1) % 30)} {max(i, (i + 1) % 30)}\n" for i in range(30)))
    assert run(["transform", "--graph", g, "--from", h, "--to", h]) == 2


def test_missing_file_exit(tmp_path):
    assert run(["enumerate", "--graph", str(tmp_path / "nope.txt")]) == 2


def test_cap_exit(tmp_path):
    g = write(tmp_path / "k9.txt", format_graph(Graph.complete(9)))
    assert run(["enumerate", "--graph", g, "--cap", "10"]) == 3


def test_reproduce_unknown(capsys):
    assert run(["reproduce", "no-such-claim"]) == 2
    err = capsys.readouterr().err
    assert "staircase-count" in err and "js-chain" in err


def test_reproduce_fast_claim(tmp_path):
    out = tmp_path / "r.json"
    assert run(["reproduce", "staircase-count", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["result"]["passed"]


def test_byte_identical_reruns(tmp_path, k5):
    out = tmp_path / "a.json"
    blobs = []
    for _ in range(2):
        assert run(["sample", "--graph", k5, "--steps", "200", "--seed", "11", "--lazy", "--out", str(out)]) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_python_dash_m(k5):
    res = subprocess.run([sys.executable, "-m", "hamswitch", "enumerate", "--graph", k5], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 12
