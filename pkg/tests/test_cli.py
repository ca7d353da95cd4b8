import json
import re
import subprocess
import sys

import pytest

from lcon.cli import main
from lcon.dot import lattice_dot
from lcon.lattice import diamond, lattice_from_dict
from lcon.partitions import Partition

from conftest import DATA


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_concepts_fuzzy_table(capsys):
    code, out, _ = run(["concepts", DATA / "fuzzy_small.json"], capsys)
    assert code == 0
    rows = json.loads(out)["concepts"]
    assert len(rows) == 8
    assert rows[5] == {"index": 5, "label": "C5", "extent": [0, 1, 0], "intent": [0, 0.5, 0, 0.5]}


def test_concepts_planets_methods_agree(capsys):
    _, a, _ = run(["concepts", DATA / "planets.cxt"], capsys)
    _, b, _ = run(["concepts", DATA / "planets.cxt", "--method", "nextclosure"], capsys)
    assert a == b and len(json.loads(a)["concepts"]) == 12
    # the emitted lattice re-parses to the same structure
    lat = json.loads(a)["lattice"]
    assert lattice_from_dict(lat).n == 12


def test_concepts_one_by_one(capsys):
    _, out, _ = run(["concepts", DATA / "ones_1x1.cxt"], capsys)
    assert len(json.loads(out)["concepts"]) == 1


def test_reduce_planets(capsys):
    code, out, _ = run(["reduce", DATA / "planets.cxt", "-D", "ss,ms,ns,my"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["comparison"] == {"local": 8, "congruence": 2}
    assert rep["delta_D_cycles_closed"] and rep["passes"] == 0


def test_reduce_fuzzy(capsys):
    code, out, _ = run(["reduce", DATA / "fuzzy_small.json", "-D", "a1,a2"], capsys)
    rep = json.loads(out)
    assert len(rep["final_delta"]) == 5
    assert not rep["final_is_congruence"]
    assert rep["quadrilateral_witness"] == ["C0", "C2", "C3", "C6"]


def test_reduce_lattice_with_dot_and_trace(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LCON_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(["reduce", "--lattice", DATA / "twostage.json", "--partition", DATA / "twostage_rhoD.json",
                        "--dot", "dot", "--trace", "trace.jsonl", "-o", "report.json"], capsys)
    assert code == 0 and out == ""
    rep = json.loads((tmp_path / "report.json").read_text())
    assert len(rep["quotient"]["labels"]) == 4
    assert sorted(p.name for p in (tmp_path / "dot").iterdir()) == ["lattice.dot", "quotient.dot", "stages.dot"]
    lines = (tmp_path / "trace.jsonl").read_text().splitlines()
    assert lines and all("rule" in json.loads(l) for l in lines)


def test_reduce_oracle_check(tmp_path, capsys):
    code, out, _ = run(["reduce", "--lattice", DATA / "twisted.json", "--partition", DATA / "twisted_delta.json",
                        "--oracle-check"], capsys)
    assert code == 0
    assert json.loads(out)["oracle"]["agrees"]
    code, _, err = run(["reduce", "--lattice", DATA / "twostage.json", "--oracle-check"], capsys)
    assert code == 4 and "oracle cap" in err


def test_check_messages(tmp_path, capsys):
    code, out, _ = run(["check", "--lattice", DATA / "twisted.json", "--partition", DATA / "twisted_delta.json"], capsys)
    assert code == 0
    assert "local congruence" in out
    assert "cycles NOT closed; witness cycle (x1,c2,c1,y2,y1,x2,x1)" in out
    c3 = tmp_path / "c3.json"
    c3.write_text(json.dumps({"labels": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"]]}))
    part = tmp_path / "p.json"
    part.write_text(json.dumps({"blocks": [["a", "c"]]}))
    _, out, _ = run(["check", "--lattice", c3, "--partition", part], capsys)
    assert out.strip() == "not a local congruence: convexity witness b between a and c"
    _, out, _ = run(["check", "--lattice", c3], capsys)
    assert out.splitlines()[0] == "congruence"


def test_enumerate(capsys):
    code, out, _ = run(["enumerate-lcon", "--lattice", DATA / "twisted.json"], capsys)
    assert code == 0 and json.loads(out)["count"] > 0


@pytest.mark.parametrize("argv, code", [
    (["bogus"], 2),
    (["concepts", "missing.cxt"], 2),
    (["reduce", "PLANETS", "-D", "zz"], 3),
    (["reduce", "PLANETS"], 2),
    (["check", "--lattice", "BAD_LATTICE"], 3),
    (["check", "--lattice", "TWISTED", "--partition", "BAD_PART"], 3),
    (["check", "--lattice", "NOT_JSON"], 2),
])
def test_exit_codes(argv, code, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"labels": ["0", "x", "y"], "covers": [["0", "x"], ["0", "y"]]}))
    part = tmp_path / "part.json"
    part.write_text(json.dumps({"blocks": [["nope"]]}))
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    subst = {"PLANETS": DATA / "planets.cxt", "BAD_LATTICE": bad, "TWISTED": DATA / "twisted.json",
             "BAD_PART": part, "NOT_JSON": junk}
    assert run([subst.get(a, a) for a in argv], capsys)[0] == code


def _dot_ok(text):
    assert text.count("{") == text.count("}")
    declared = set(re.findall(r'^\s*("[^"]*") \[label=', text, re.M))
    used = set(re.findall(r'("[^"]*") -> ', text)) | set(re.findall(r' -> ("[^"]*")', text))
    assert used <= declared


def test_dot_clusters_match_blocks():
    d = diamond()
    p = Partition.from_blocks(d, [["bot", "a"]])
    text = lattice_dot(d, p)
    _dot_ok(text)
    clusters = re.findall(r"subgraph \"cluster_\d+\" \{(.*?)\}", text, re.S)
    found = {frozenset(re.findall(r'label="([^"]*)"', c)) for c in clusters}
    assert found == {frozenset(b) for b in p.labelled_blocks()}


def test_export_dot(capsys):
    code, out, _ = run(["export-dot", "--lattice", DATA / "nonlattice.json", "--partition", DATA / "nonlattice_delta.json"], capsys)
    assert code == 0
    _dot_ok(out)
    assert out.count("subgraph") == 8


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "lcon.cli", "concepts", str(DATA / "ones_1x1.cxt")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and '"C0"' in r.stdout
