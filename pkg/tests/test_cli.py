import json
import subprocess
import sys
from importlib import resources

import pytest

from dgpoisson import cli
from dgpoisson import presentation as pres
from dgpoisson.theorems import OracleComparison
from dgpoisson.ue.universal import WindowReport

DATA = resources.files("dgpoisson") / "data"


def f(name):
    return str(DATA / name)


def run(*argv):
    return cli.run([str(a) for a in argv])


@pytest.mark.parametrize("argv,code", [
    (["verify", f("k[x]_sq_zero.alg")], 0),
    (["verify", f("sl2.lie")], 0),
    (["verify", f("moyal_trunc.def")], 0),
    (["verify", f("dg_line_pair.dgs")], 0),
    (["verify", f("broken_jacobi.alg")], 1),
    (["verify", f("nilpotent.mod"), "--kind", "module", "--algebra", f("k[x]_sq_zero.alg")], 0),
    (["verify", f("nilpotent.mod")], 2),
    (["ue", f("trivial_k.alg"), "--max-len", 4, "--engine", "both"], 0),
    (["ue", f("k[x]_sq_zero.alg"), "--max-len", 3, "--engine", "both"], 0),
    (["ue", f("k[x]_sq_zero.alg"), "--max-len", 64], 2),
    (["check", "tensor", f("odd_line.alg"), f("odd_line.alg")], 0),
    (["check", "tensor", f("k[x]_sq_zero.alg"), f("odd_line.alg")], 2),
    (["check", "opposite", f("k[x]_sq_zero.alg")], 0),
    (["check", "opposite", f("ext_gerst_lie2.alg")], 1),
    (["check", "module-roundtrip", f("k[x]_sq_zero.alg"), f("nilpotent.mod")], 0),
    (["check", "tensor", f("odd_line.alg")], 2),
    (["construct", "tensor", f("k[x]_sq_zero.alg"), f("ext_gerst_lie2.alg")], 2),
])
def test_exit_codes(argv, code, capsys):
    got, doc = run(*argv)
    assert got == code, capsys.readouterr().out
    assert doc["exit_code"] == code and doc["passed"] == (code == 0)


def test_verify_failure_prints_witnesses(capsys):
    code, _ = run("verify", f("broken_jacobi.alg"))
    out = capsys.readouterr().out
    assert code == 1 and "FAILED (exit 1)" in out and "jacobi" in out.lower()


def test_parse_error_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text('{\n "schema": "dgpoisson/1",\n "kind": "dg-poisson",\n "p": 0,,\n}')
    code, _ = run("verify", bad)
    assert code == 2 and "line 4" in capsys.readouterr().out


def test_strict_coverage_threshold():
    argv = ["check", "symlie", f("lie2.lie"), "--sym-trunc", 2, "--max-len", 2]
    code, doc = run(*argv)
    assert code == 0
    cov = doc["certificate"]["coverage"]
    assert cov < 0.9
    assert run(*argv, "--strict")[0] == 4
    assert run(*argv, "--strict", "--coverage", cov / 2)[0] == 0


def test_construct_writes_verified_output(tmp_path):
    out = tmp_path / "t.alg"
    code, _ = run("construct", "tensor", f("odd_line.alg"), f("odd_line.alg"), "--out", out)
    assert code == 0
    A = pres.read(out)
    assert A.space.dim == 4
    assert run("verify", out)[0] == 0


@pytest.mark.parametrize("op,inputs,extra", [
    ("opposite", ["k[x]_sq_zero.alg"], []),
    ("sym", ["lie2.lie"], ["--trunc", 2]),
    ("endo", ["dg_line_pair.dgs"], []),
    ("extgerst", ["lie2.lie"], []),
    ("gerstd", ["ext_gerst_lie2.alg"], ["--alpha", '{"a∧b": "1"}']),
    ("deform", ["moyal_trunc.def"], []),
    ("semidirect", ["sl2.lie"], []),
])
def test_construct_ops(op, inputs, extra, tmp_path):
    out = tmp_path / "out.json"
    code, doc = run("construct", op, *[f(i) for i in inputs], *extra, "--out", out)
    assert code == 0, doc["summary"]
    assert out.exists()


def test_window_file_round_trip(tmp_path):
    out = tmp_path / "w.json"
    assert run("ue", f("symplectic_pair.alg"), "--max-len", 2, "--out", out)[0] == 0
    assert run("check", "window", out)[0] == 0
    doc = json.loads(out.read_text())
    doc["product"][-1][2] = {}
    out.write_text(json.dumps(doc))
    code, rep = run("check", "window", out)
    assert code in (0, 1)    # a zeroed product may or may not break an identity
    if code == 1:
        assert rep["report"]["violations"]


def test_engine_disagreement_exits_3(monkeypatch):
    bad = WindowReport()
    bad.add("product", ("u", "v"), "differs")
    fake = OracleComparison(1, 0, True, {(0, 0): 1}, {(0, 0): 2}, bad)
    monkeypatch.setattr(cli, "compare_with_oracle", lambda *a, **k: fake)
    assert run("ue", f("trivial_k.alg"), "--max-len", 1, "--engine", "both")[0] == 3
    fake.stable = False
    assert run("ue", f("trivial_k.alg"), "--max-len", 1, "--engine", "both")[0] == 0


def test_json_and_report_file(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, _ = run("--json", "--report", rep, "ue", f("odd_line.alg"), "--max-len", 2)
    printed = json.loads(capsys.readouterr().out)
    assert code == 0 and printed == json.loads(rep.read_text())
    assert printed["kind"] == "report" and printed["window"]["dim"] == 4


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "dgpoisson", "verify", f("odd_line.alg")],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "[verify] OK" in p.stdout
