from fractions import Fraction
import math

import pytest

import gbtkit


def test_parse_and_inspect(systems):
    s = gbtkit.load_system(str(systems / "ex03.sys"))
    assert s.name == "example03"
    assert s.states == ["s1", "s2"]
    assert s.degree == 2
    assert len(s.components) == 2
    assert gbtkit.parse_system(s.render()).components == s.components


def test_parse_error():
    with pytest.raises(gbtkit.ParseError):
        gbtkit.parse_system("ds1/dt = s1 +\n")
    with pytest.raises(gbtkit.FileError):
        gbtkit.load_system("no/such/file.sys")


def test_curvature_values(systems):
    ex03 = gbtkit.load_system(str(systems / "ex03.sys"))
    assert gbtkit.curvature_at(ex03, [0, 0]) == 1
    assert gbtkit.curvature_at(ex03, [1, 0]) == Fraction(1, 20)
    ex01 = gbtkit.load_system(str(systems / "ex01.sys"))
    assert gbtkit.curvature_at(ex01, [0, 0]) == -1
    assert gbtkit.curvature_at(ex01, [0, 0], convention="standard") == 1
    rot = gbtkit.load_system(str(systems / "rotation.sys"))
    assert gbtkit.curvature(rot) == "0"


def test_metric(systems):
    m = gbtkit.metric(gbtkit.load_system(str(systems / "ex03.sys")))
    assert m["diagonal"]
    assert [c["value"] for c in m["components"]] == ["8*s1^2+2*s2^2+4*s2+2", "2*s1^2+2"]


def test_specialize(systems):
    fam = gbtkit.load_system(str(systems / "ex01a.sys"))
    assert fam.params == ["m"]
    s = fam.specialize({"m": "1"})
    assert s.params == []
    assert s.components == gbtkit.load_system(str(systems / "ex01.sys")).components


def test_equilibria_and_locus(systems):
    ex03 = gbtkit.load_system(str(systems / "ex03.sys"))
    topo = gbtkit.equilibria(ex03)
    assert topo["chi"] == 1 and topo["sign"] == "positive"
    assert topo["equilibria"][0]["kind"] == "linear-center"
    locus = gbtkit.singular_locus(ex03)
    assert len(locus["points"]) == 1
    x, y = locus["points"][0]["point"]
    assert abs(x) < 1e-6 and abs(y + 1) < 1e-6
    assert locus["symmetric"] is False


def test_oracle(systems):
    ex01 = gbtkit.load_system(str(systems / "ex01.sys"))
    res = gbtkit.find_limit_cycles(ex01)
    assert len(res["cycles"]) == 1
    assert abs(res["cycles"][0]["radius"] - 1) < 1e-6
    assert res["cycles"][0]["stability"] == "unstable"
    assert res["radial"]["g"] == "u-1"
    t, x, escaped, _ = gbtkit.integrate(gbtkit.load_system(str(systems / "rotation.sys")), [1, 0], 0, 2 * math.pi)
    assert not escaped and abs(x[-1][0] - 1) < 1e-6


def test_analyze(systems, schema):
    jsonschema = pytest.importorskip("jsonschema")
    report, code = gbtkit.analyze(systems / "ex03.sys")
    assert code == 0
    jsonschema.validate(report, schema)
    assert report["verdict"]["periodic_only"] is True
    assert report["oracle"]["center_detected"] is True
    assert report["agreement"]["status"] == "agree"
    report, code = gbtkit.analyze(systems / "missing.sys")
    assert code == 2
    jsonschema.validate(report, schema)


def test_hilbert():
    assert [gbtkit.hilbert_number(n) for n in (2, 3, 4)] == [4, 24, 60]
    assert gbtkit.christopher_lloyd_bound(3) == 25
    assert gbtkit.bezout_bound(5, 5) == 25
    with pytest.raises(gbtkit.DomainError):
        gbtkit.hilbert_number(1)
    assert gbtkit.hilbert_table_csv(3).splitlines()[0] == "n,H_gbt,n_squared,n_squared_log_n,ratio"
