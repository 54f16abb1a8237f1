from __future__ import annotations

import json
import math
import os
from fractions import Fraction

import pytest

from period_atlas.certify.polys import R_D13
from period_atlas.cli import main, parse_grid
from period_atlas.exactalg import read_poly, write_poly
from period_atlas.exactalg.polynomial import u


def _rows(path):
    lines = [l for l in open(path).read().splitlines() if not l.startswith("#")]
    return [l.split(",") for l in lines[1:]]


def test_period_loud_decreasing(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["period", "--system", "loud", "--D", "-0.25", "--h", "0.01:100:log:50", "--out", str(out)]) == 0
    rows = _rows(out)
    assert len(rows) == 50
    T = [float(r[1]) for r in rows]
    assert all(b < a for a, b in zip(T, T[1:]))
    text = capsys.readouterr().out
    assert "# monotonicity: decreasing" in text
    assert f"# limit: {4 * math.pi / 3:.17g}" in text
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".tmp")]


def test_period_zk(tmp_path, capsys):
    out = tmp_path / "z.csv"
    assert main(["period", "--system", "zk", "--n", "1", "--k", "1", "--rho", "0.05:2.0:lin:40", "--out", str(out)]) == 0
    T = [float(r[1]) for r in _rows(out)]
    assert len(T) == 40 and all(b < a for a, b in zip(T, T[1:]))
    assert T[-1] > 4 * math.pi / 3
    assert "decreasing" in capsys.readouterr().out


def test_period_isochronous(tmp_path):
    out = tmp_path / "iso.csv"
    assert main(["period", "--system", "loud", "--D", "-0.5", "--h", "0.1:10:log:10", "--out", str(out)]) == 0
    assert all(abs(float(r[1]) - 2 * math.pi) < 1e-9 for r in _rows(out))


def test_period_failure_writes_partial_rows(tmp_path, capsys):
    out = tmp_path / "d0.csv"
    code = main(
        ["period", "--system", "loud", "--D", "0", "--h", "0.1:0.9:lin:5", "--method", "returnmap", "--out", str(out)]
    )
    assert code == 2
    text = out.read_text()
    assert len(_rows(out)) == 2
    assert text.splitlines()[-1].startswith("# status: failed")


def test_period_json(tmp_path):
    out = tmp_path / "t.json"
    assert main(["period", "--system", "loud", "--D", "-0.75", "--h", "0.1:1:lin:3", "--format", "json", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["status"] == "ok" and obj["monotonicity"] == "increasing" and len(obj["rows"]) == 3


def test_period_threads_do_not_change_output(tmp_path, monkeypatch):
    args = ["period", "--system", "loud", "--D", "-0.3", "--h", "0.1:10:log:6"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.setenv("PERIOD_ATLAS_THREADS", "0")
    assert main(args + ["--out", str(a)]) == 0
    monkeypatch.setenv("PERIOD_ATLAS_THREADS", "3")
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    monkeypatch.setenv("PERIOD_ATLAS_THREADS", "many")
    assert main(args) == 64


def test_criterion(tmp_path, capsys):
    for D in ("-0.25", "-0.75"):
        out = tmp_path / "c.csv"
        assert main(["criterion", "--D", D, "--out", str(out)]) == 0
        assert len(_rows(out)) == 512
        assert "# single-signed: yes" in capsys.readouterr().out
    assert main(["criterion", "--D", "-0.25", "--u", "0:0.5:lin:10"]) == 64
    assert main(["criterion", "--D", "-0.5"]) == 64


def test_certify_decreasing_emits_polys(tmp_path):
    out = tmp_path / "rep.json"
    polys = tmp_path / "polys"
    assert main(["certify", "--branch", "decreasing", "--out", str(out), "--emit-polys", str(polys)]) == 0
    assert json.loads(out.read_text())["overall"] == "pass"
    names = set(os.listdir(polys))
    assert {"R2.txt", "Delta_u.txt", "K0.txt", "K1.txt", "W.txt", "U_D0.txt", "U_D1.txt", "U_D2.txt"} <= names
    assert read_poly(polys / "W.txt").degree("D") == 22


def test_certify_increasing(tmp_path):
    out = tmp_path / "rep.json"
    assert main(["certify", "--branch", "increasing", "--no-cross-check", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["branch"] == "increasing"


def test_certify_failure_exit_code(tmp_path, monkeypatch):
    from period_atlas.certify import pipeline

    monkeypatch.setattr(pipeline, "compute_R2", lambda pp, cc=True: (_ for _ in ()).throw(pipeline.CertificateError("x")))
    out = tmp_path / "rep.json"
    assert main(["certify", "--branch", "decreasing", "--no-cross-check", "--out", str(out)]) == 1
    assert json.loads(out.read_text())["overall"] == "fail"


def test_map(capsys):
    assert main(["map", "--n", "1", "--k", "1", "--rho", "1"]) == 0
    text = capsys.readouterr().out
    assert "b = 3" in text and "D = -0.25" in text and "(0, -4)" in text
    assert f"{4 * math.pi / 3:.17g}" in text
    assert main(["map", "--n", "0", "--k", "3"]) == 0
    assert "isochronous" in capsys.readouterr().out
    assert main(["map", "--k", "0", "--n", "2", "--alpha", "-1"]) == 0
    text = capsys.readouterr().out
    assert "u = z zbar < 1" in text and "inf at the boundary" in text
    assert main(["map", "--k", "0", "--n", "0"]) == 64
    assert main(["map", "--k", "0", "--n", "2"]) == 64


def test_sturm(tmp_path, capsys):
    r = tmp_path / "R.txt"
    write_poly(r, R_D13)
    assert main(["sturm", str(r), "--interval", "0,1"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    q = tmp_path / "q.txt"
    write_poly(q, u ** 2 - Fraction(1, 4))
    assert main(["sturm", str(q), "--interval", "0,1"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["sturm", str(q), "--interval=-1/2,1"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1/1 0 0 0\nnonsense\n")
    assert main(["sturm", str(bad), "--interval", "0,1"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_usage_errors(capsys):
    for argv in (
        ["period", "--system", "loud", "--D", "-0.25", "--h", "0.01:100:log:1"],
        ["period", "--system", "loud", "--D", "-0.25", "--h", "1:0.1:lin:5"],
        ["period", "--system", "loud", "--D", "-0.25", "--h", "0.1:1:cubic:5"],
        ["period", "--system", "loud", "--D", "-0.25", "--unknown", "1"],
        ["frobnicate"],
        [],
    ):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 64
    assert main(["period", "--system", "loud", "--D", "-0.25", "--F", "0.1", "--h", "0.1:1:lin:3"]) == 64
    assert main(["period", "--system", "zk", "--n", "1", "--rho", "0.1:1:lin:3"]) == 64


@pytest.mark.parametrize("cmd", ["period", "criterion", "certify", "map", "sturm"])
def test_help(cmd, capsys):
    with pytest.raises(SystemExit) as info:
        main([cmd, "--help"])
    assert info.value.code == 0
    assert "--" in capsys.readouterr().out


def test_grid_parser():
    g = parse_grid("1:100:log:3")
    assert list(g) == pytest.approx([1, 10, 100])
    assert list(parse_grid("0:1:lin:5")) == pytest.approx([0, 0.25, 0.5, 0.75, 1])
