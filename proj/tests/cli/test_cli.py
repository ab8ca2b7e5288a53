import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
GBT = os.environ.get("GBT_CLI", str(ROOT / "build" / "tools" / "gbt"))
SYSTEMS = ROOT / "systems"
SCHEMA = json.loads((ROOT / "schema" / "report.schema.json").read_text())


def run(*args):
    return subprocess.run([GBT, *map(str, args)], capture_output=True, text=True)


def report(*args):
    p = run("analyze", *args)
    return json.loads(p.stdout), p.returncode


def test_analyze_center_system():
    r, code = report(SYSTEMS / "ex03.sys", "--box", "-3:3,-3:3")
    assert code == 0
    jsonschema.validate(r, SCHEMA)
    assert r["curvature"]["origin_value"] == "1"
    assert r["topology"]["chi"] == 1
    [pt] = r["locus"]["points"]
    assert abs(pt["point"][0]) <= 1e-6 and abs(pt["point"][1] + 1) <= 1e-6
    assert r["verdict"]["periodic_only"] is True
    assert r["oracle"]["center_detected"] is True
    assert r["agreement"]["status"] == "agree"


def test_analyze_ignores_absent_parameter():
    r, code = report(SYSTEMS / "ex01.sys", "--param", "m=1")
    assert code == 0
    jsonschema.validate(r, SCHEMA)
    assert any("m is not a symbol" in n for n in r["system"]["notes"])
    [c] = r["oracle"]["cycles"]
    assert abs(c["radius"] - 1) <= 1e-6


def test_parameterized_family():
    r, code = report(SYSTEMS / "ex01a.sys", "--param", "m=1")
    assert code == 0
    assert r["system"]["bindings"] == {"m": "1"}
    assert any("asserted, not reproduced here" in n for n in r["agreement"]["notes"])


def test_exit_codes(tmp_path):
    r, code = report("missing.sys")
    assert code == 2
    assert "file not found" in r["errors"][0]["message"]
    jsonschema.validate(r, SCHEMA)

    bad = tmp_path / "bad.sys"
    bad.write_text("ds1/dt = s1 +\n")
    assert run("analyze", bad).returncode == 2

    assert run("analyze", SYSTEMS / "ex03.sys", "--stages", "nope").returncode == 1
    assert run("analyze", SYSTEMS / "ex03.sys", "--box", "1:0,0:1").returncode == 1
    assert run("analyze", SYSTEMS / "ex03.sys", "--param", "m").returncode == 1
    assert run("bogus").returncode == 1

    r, code = report(SYSTEMS / "ex01a.sys")
    assert code == 1
    assert any("unbound parameters" in e["message"] for e in r["errors"])

    # The center of this field sits on the box edge.
    r, code = report(SYSTEMS / "ex03.sys", "--box", "0:1,0:1", "--stages", "equilibria")
    assert code == 3
    assert r["errors"][0]["kind"] == "numeric"
    jsonschema.validate(r, SCHEMA)


def test_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run("analyze", SYSTEMS / "ex02.sys", "--report", out).returncode == 0
    assert a.read_bytes() == b.read_bytes()
    jsonschema.validate(json.loads(a.read_text()), SCHEMA)


def test_partial_stages():
    r, code = report(SYSTEMS / "ex03.sys", "--stages", "curvature")
    assert code == 0
    assert r["metric"] is not None and r["curvature"] is not None
    assert r["topology"] is None and r["oracle"] is None
    assert r["provenance"]["stages"] == ["metric", "curvature"]


def test_curvature_text_and_grid(tmp_path):
    p = run("curvature", SYSTEMS / "rotation.sys")
    assert p.returncode == 0 and p.stdout.strip() == "0"

    csv = tmp_path / "r.csv"
    p = run("curvature", SYSTEMS / "ex03.sys", "--box", "-1:1,-1:1", "--grid", 3, "--csv", csv)
    assert p.returncode == 0
    data = csv.read_bytes()
    assert b"\r" not in data
    rows = data.decode().splitlines()
    assert rows[0] == "s1,s2,R"
    assert len(rows) == 10
    assert "0,0,1" in rows
    assert "0,-1," in rows  # pole


def test_pole_warning(tmp_path):
    vf = tmp_path / "poles.sys"
    vf.write_text("ds1/dt = s1^2*s2*(s2-1)\nds2/dt = s2\n")
    p = run("curvature", vf, "--box", "0:1,0:1", "--grid", 2, "--csv", tmp_path / "p.csv")
    assert p.returncode == 0
    assert "warning" in p.stderr


def test_convention_flag():
    paper = run("curvature", SYSTEMS / "ex01.sys").stdout.strip()
    standard = run("curvature", SYSTEMS / "ex01.sys", "--convention", "standard").stdout.strip()
    assert paper != standard


def test_hilbert_table(tmp_path):
    p = run("hilbert-table", "--nmax", 4)
    assert p.returncode == 0
    rows = [line.split() for line in p.stdout.splitlines()[1:4]]
    assert [(r[0], r[1]) for r in rows] == [("2", "4"), ("3", "24"), ("4", "60")]
    p = run("hilbert-table", "--nmax", 4, "--bounds", "--k", 3, "--csv", tmp_path / "h.csv")
    assert "H(7) >= 25" in p.stdout
    assert (tmp_path / "h.csv").read_text().splitlines()[-1] == "3,7,25"
    assert run("hilbert-table", "--nmax", 1).returncode == 1
