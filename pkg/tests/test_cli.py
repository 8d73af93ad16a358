import json
import subprocess
import sys

import pytest

from bettikit.cli import main

I_TEXT = "ac, ae, bd, de"
J_TEXT = "wx, xy, wz, yz"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


def test_lcm_lattice_json_and_dot(capsys):
    code, data = run_json(capsys, "lcm-lattice", I_TEXT)
    assert code == 0
    assert len(data["elements"]) == 11 and len(data["relations"]) == 15
    assert data["variables"] == list("abcde")
    code, out, _ = run(capsys, "lcm-lattice", I_TEXT, "--format", "dot")
    assert out.startswith("digraph") and out.count("->") == 15


def test_betti_over_two_fields(capsys):
    for field in ("q", "gf:2"):
        code, data = run_json(capsys, "betti", I_TEXT, "--field", field)
        assert code == 0 and data["totals"] == [4, 4, 1]
    code, out, _ = run(capsys, "betti", "x^2, xy, y^2", "--format", "text")
    assert code == 0 and "3" in out


def test_betti_poset_and_lattice(capsys):
    code, data = run_json(capsys, "betti-poset", I_TEXT)
    assert code == 0 and len(data["elements"]) == 9
    assert "acde" not in data["elements"]
    code, data = run_json(capsys, "betti-lattice", I_TEXT)
    assert code == 0 and len(data["elements"]) == 10 and "0" in data["elements"]
    assert sorted(data["sets"]["abcde"]) == sorted(["ac", "ae", "bd", "de"])


def test_taylor_minimalize_verify_pipeline(capsys, tmp_path):
    code, out, _ = run(capsys, "taylor", "x^2, xy, y^2")
    assert code == 0
    taylor = tmp_path / "taylor.json"
    taylor.write_text(out)
    code, data = run_json(capsys, "verify", str(taylor), "x^2, xy, y^2")
    assert code == 0 and data["ok"] and not data["minimal"] and data["ranks"] == [3, 3, 1]
    code, out, _ = run(capsys, "minimalize", str(taylor), "--field", "gf:3")
    small = tmp_path / "min.json"
    small.write_text(out)
    assert json.loads(out)["field"] == "gf:3"
    code, data = run_json(capsys, "verify", str(small), "x^2, xy, y^2", "--field", "gf:3")
    assert code == 0 and data["ok"] and data["minimal"] and data["ranks"] == [3, 2]
    code, _, err = run(capsys, "verify", str(small), "x^2, xy, y^2")
    assert code == 2 and "GF(3)" in err


def test_verify_negative_exit_code(capsys, tmp_path):
    code, out, _ = run(capsys, "taylor", "x, y")
    data = json.loads(out)
    data["differentials"][0][0][2] *= -1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, report = run_json(capsys, "verify", str(bad), "x, y")
    assert code == 1 and not report["ok"]


def test_resolve_with_both_posets(capsys, tmp_path):
    for poset, rank0 in (("lcm", 11), ("betti", 9)):
        code, out, _ = run(capsys, "resolve", I_TEXT, "--poset", poset)
        assert code == 0
        assert len(json.loads(out)["degrees"][0]) == rank0
        path = tmp_path / f"{poset}.json"
        path.write_text(out)
        code, report = run_json(capsys, "verify", str(path), I_TEXT)
        assert code == 0 and report["ok"]


def test_relabel_and_iso(capsys, tmp_path):
    code, out, _ = run(capsys, "betti-poset", I_TEXT)
    a = tmp_path / "a.json"
    a.write_text(out)
    code, out, _ = run(capsys, "betti-poset", J_TEXT, "--vars", "w,x,y,z")
    b = tmp_path / "b.json"
    b.write_text(out)
    code, iso = run_json(capsys, "iso", str(a), str(b))
    assert code == 0 and len(iso["mapping"]) == 9
    pairs = tmp_path / "iso.json"
    pairs.write_text(json.dumps(iso))

    code, out, _ = run(capsys, "taylor", I_TEXT)
    t = tmp_path / "t.json"
    t.write_text(out)
    code, out, _ = run(capsys, "minimalize", str(t))
    m = tmp_path / "m.json"
    m.write_text(out)
    code, out, _ = run(capsys, "relabel", str(m), "--iso", str(pairs), "--target-vars", "w,x,y,z")
    assert code == 0
    g = tmp_path / "g.json"
    g.write_text(out)
    code, report = run_json(capsys, "verify", str(g), J_TEXT, "--vars", "w,x,y,z")
    assert code == 0 and report["ok"] and report["minimal"]


def test_iso_none_for_lcm_lattices(capsys, tmp_path):
    paths = []
    for text, extra in ((I_TEXT, []), (J_TEXT, ["--vars", "w,x,y,z"])):
        code, out, _ = run(capsys, "lcm-lattice", text, *extra)
        p = tmp_path / f"{len(paths)}.json"
        p.write_text(out)
        paths.append(str(p))
    code, out, _ = run(capsys, "iso", *paths)
    assert code == 1 and out.strip() == "none"


def _sets_poset_json(sets):
    names = list(sets)
    rel = [[a, b] for a in names for b in names if a != b and set(sets[a]) <= set(sets[b])]
    return json.dumps({"elements": names, "relations": rel})


def test_check_betti_poset(capsys):
    diamond = _sets_poset_json({"a": "a", "b": "b", "c": "c", "abc": "abc"})
    code, data = run_json(capsys, "check-betti-poset", diamond)
    assert code == 0 and data["verdict"] and len(data["realizing_ideal"]["generators"]) == 3
    four = _sets_poset_json({"1": "1", "2": "2", "3": "3", "4": "4", "123": "123", "124": "124", "1234": "1234"})
    code, data = run_json(capsys, "check-betti-poset", four)
    assert code == 1 and not data["verdict"]
    missing = [w for w in data["witnesses"] if w["kind"] == "missing"]
    assert [w["set"] for w in missing] == [["1", "2"]]
    assert data["realizing_ideal"] is None


def test_hasse(capsys):
    code, out, _ = run(capsys, "hasse", I_TEXT, "--highlight", "betti")
    assert code == 0 and out.count("->") == 15 and out.count("dashed") == 2
    code, out, _ = run(capsys, "hasse", I_TEXT, "--highlight", "ac,abcde")
    assert out.count("dashed") == 2
    poset = json.dumps({"elements": ["p", "q"], "relations": [["p", "q"]]})
    code, out, _ = run(capsys, "hasse", poset, "--highlight", "q")
    assert code == 0 and out.count("->") == 1 and out.count("dashed") == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["betti", "a*q", "--vars", "a,b"],
        ["betti", "x", "--field", "gf:4"],
        ["betti", ""],
        ["check-betti-poset", "{not json"],
        ["check-betti-poset", '{"elements": ["a", "b", "u", "v"], "relations": [["a","u"],["b","u"],["a","v"],["b","v"]]}'],
        ["hasse", '{"elements": ["p"]}', "--highlight", "betti"],
        ["lcm-lattice", "x", "--format", "text"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert set(json.loads(err)) == {"error", "message"}


def test_stdin_and_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bettikit", "betti", "-", "--field", "gf:2"],
        input="x, y", capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["totals"] == [2, 1]
