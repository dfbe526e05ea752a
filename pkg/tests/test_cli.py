import json
import math
import subprocess
import sys

import numpy as np
import pytest

from schatten_geom import cli
from schatten_geom.matio import matrix_from_dict, write_matrix


@pytest.fixture
def files(tmp_path):
    def make(**mats):
        out = {}
        for name, M in mats.items():
            path = tmp_path / f"{name}.json"
            write_matrix(path, np.asarray(M, dtype=complex))
            out[name] = str(path)
        return out
    return make


@pytest.fixture
def ex1(files):
    return files(X=np.diag([2.0, 1.0]), Y=[[0, 1], [1, 0]])


def run_json(capsys, *argv):
    code = cli.run([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_compute_example1(capsys, ex1):
    code, doc = run_json(capsys, "compute", ex1["X"], ex1["Y"], "--p", "2")
    assert code == 0 and doc["status"] == 0
    rep = doc["report"]
    assert rep["sip_yx"] == pytest.approx([0, 0], abs=1e-14)
    assert rep["angles"]["p_angle"] == pytest.approx(math.pi / 2)
    assert rep["norm_x"] == pytest.approx(math.sqrt(5))
    assert doc["manifest"]["command"] == "compute"


def test_compute_self(capsys, files):
    f = files(X=[[1, 2j], [0.5, -1]])
    code, doc = run_json(capsys, "compute", f["X"], f["X"], "--p", "3", "--mean", "qm")
    assert code == 0
    rep = doc["report"]
    assert rep["alpha_yx"] == pytest.approx([1, 0], abs=1e-12)
    for k, v in rep["angles"].items():
        if k != "mean":
            assert v == pytest.approx(0, abs=1e-7), k
    assert rep["angles"]["mean"] == "qm"


def test_compute_text_output(capsys, ex1):
    assert cli.run(["compute", ex1["X"], ex1["Y"], "--p", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("command: compute")
    assert "angles.p_angle:" in out


def test_input_errors(capsys, tmp_path, ex1, files):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.run(["compute", str(bad), ex1["Y"], "--p", "2"]) == 2
    assert cli.run(["compute", str(tmp_path / "missing.json"), ex1["Y"], "--p", "2"]) == 2
    f = files(Z3=np.eye(3), R=np.ones((2, 3)))
    assert cli.run(["compute", ex1["X"], f["Z3"], "--p", "2"]) == 2
    assert cli.run(["compute", f["R"], f["R"], "--p", "2"]) == 2
    assert cli.run(["compute", ex1["X"], ex1["Y"], "--p", "1"]) == 2
    assert cli.run(["compute", ex1["X"], ex1["Y"], "--p", "2", "--mean", "median"]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.run(["compute", ex1["X"], ex1["Y"]])  # --p is required
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.run(["verify", "--p", "2", "--dims", "5..2"])
    assert exc.value.code == 2


def test_degenerate_exit(capsys, files):
    f = files(O=np.zeros((2, 2)), Y=np.eye(2))
    assert cli.run(["compute", f["O"], f["Y"], "--p", "2"]) == 3
    assert cli.run(["compute", f["Y"], f["O"], "--p", "2"]) == 3
    assert cli.run(["witness", f["O"], f["Y"], "--p", "2"]) == 3


def test_check_orth(capsys, ex1):
    code, doc = run_json(capsys, "check", ex1["X"], ex1["Y"], "--p", "2", "--mode", "orth")
    rep = doc["report"]
    assert code == 0 and rep["criterion"] and rep["oracle"] and rep["agree"]


def test_check_par(capsys, files):
    X = np.array([[1, 2], [3, 4j]])
    f = files(X=X, Y=3 * X)
    code, doc = run_json(capsys, "check", f["X"], f["Y"], "--p", "1.5", "--mode", "par")
    rep = doc["report"]
    assert code == 0 and rep["criterion"] and rep["oracle"] and rep["criterion_reverse"]


def test_check_random_agrees(capsys, files):
    rng = np.random.default_rng(42)
    G = lambda: rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))  # noqa: E731
    f = files(X=G(), Y=G())
    for mode in ("orth", "par"):
        code, doc = run_json(capsys, "check", f["X"], f["Y"], "--p", "3", "--mode", mode)
        assert code == 0 and doc["report"]["agree"]


def test_verify_passes(capsys):
    code, doc = run_json(capsys, "verify", "--p", "1.1", "--trials", "60", "--seed", "7", "--dims", "2..8")
    assert code == 0
    rep = doc["report"]
    assert rep["violation_count"] == 0
    assert rep["checks"]["cs"]["evaluated"] == 60
    assert doc["manifest"]["dims"] == [2, 8]


def test_verify_zero_tolerance_fails(capsys):
    code, doc = run_json(capsys, "verify", "--p", "2", "--trials", "20", "--seed", "7", "--tol", "0")
    assert code == 1
    assert doc["report"]["violation_count"] == len(doc["report"]["violations"]) > 0


def test_verify_deterministic_and_threaded(capsys, monkeypatch):
    argv = ["verify", "--p", "3", "--trials", "25", "--seed", "3", "--json"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    assert capsys.readouterr().out == first
    monkeypatch.setenv("SCHATTEN_GEOM_THREADS", "4")
    cli.run(argv)
    assert capsys.readouterr().out == first


def test_witness(capsys, ex1, files):
    code, doc = run_json(capsys, "witness", ex1["X"], ex1["Y"], "--p", "3")
    rep = doc["report"]
    assert code == 0 and rep["delta"] > 0 and rep["slack"] >= -1e-9 * rep["cs_rhs"]
    Z = matrix_from_dict(rep["witness"])
    assert np.linalg.norm(Z) == pytest.approx(1)
    f = files(P=np.diag([1.0, 2.0]), Q=np.diag([3.0, 0.5]))
    code, doc = run_json(capsys, "witness", f["P"], f["Q"], "--p", "2")
    assert code == 0 and doc["report"]["witness"] is None


def test_counterexample(capsys):
    code, doc = run_json(capsys, "counterexample", "--n", "2", "--p", "3", "--trials", "200", "--seed", "1")
    rep = doc["report"]
    assert code == 0
    assert rep["equivalence_inconsistencies"] == 0
    assert rep["count"] >= len(rep["instances"])
    assert rep["zero_trace_2x2"]["sip_i_z"] == pytest.approx([0, 0], abs=1e-13)
    assert rep["zero_trace_2x2"]["sip_z_i"] == pytest.approx([0, 0], abs=1e-13)


def test_example_command(capsys):
    code, doc = run_json(capsys, "example", "--p", "2", "--truncation", "200")
    rep = doc["report"]
    assert code == 0
    assert rep["inner_z_a"] == [0.0, 0.0]
    assert rep["inner_z_b"][0] < 0 and rep["gaps_decreasing"] and rep["partial_sums_monotone"]


def test_output_file_and_manifest_roundtrip(capsys, tmp_path, ex1):
    out = tmp_path / "report.json"
    assert cli.run(["compute", ex1["X"], ex1["Y"], "--p", "2", "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    m = cli.RunManifest.from_dict(doc["manifest"])
    assert m.to_dict() == doc["manifest"]
    assert m.output == str(out) and m.p == 2.0


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "schatten_geom.cli", "verify", "--p", "2", "--trials", "3",
                          "--json"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["status"] == 0
