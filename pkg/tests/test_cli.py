"""Command-line interface: output formats, determinism, exit codes.

Everything runs in-process through main(argv) so coverage and failures stay
debuggable; one subprocess test at the bottom confirms the installed entry
point wires up to the same main.
"""

import json
import math
import subprocess
import sys

import pytest

from biflogis.cli import main

CSV_HEADER = "alpha,k,d,gamma,h,beta,lambda"
CHECK_HEADER = "name,target,estimate,rel_error,fitted_order,tolerance,pass"


def run_cli(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


# ----------------------------------------------------------------- outputs


def test_constants_both_readings(capsys):
    code, out, _ = run_cli(capsys, "constants", "--p", "2", "--q", "2")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"paper_definition", "proof_variant"}
    assert obj["proof_variant"]["e3_reading"] == "proof_variant"
    # the two readings must agree on everything but the pi-power entries
    for key in ("A1", "A3", "C1", "Cq", "E1", "E2", "E4"):
        assert obj["paper_definition"][key] == obj["proof_variant"][key]
    assert obj["paper_definition"]["E3"] != obj["proof_variant"]["E3"]


def test_constants_single_reading(capsys):
    code, out, _ = run_cli(capsys, "constants", "--p", "2", "--q", "2",
                           "--e3-reading", "proof_variant")
    assert code == 0
    obj = json.loads(out)
    assert obj["e3_reading"] == "proof_variant"
    assert abs(obj["leading_coeff"]) > 0.0


def test_json_is_canonical(capsys):
    # sorted keys, two-space indent, trailing newline: byte-stable output
    _, out, _ = run_cli(capsys, "constants", "--p", "2.5")
    assert out == json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n"


def test_solve_json_keys(capsys):
    code, out, _ = run_cli(capsys, "solve", "--p", "5", "--q", "2",
                           "--a1", "1", "--a2", "0", "--alpha", "100")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == set(CSV_HEADER.split(","))
    assert obj["alpha"] == 100.0
    assert obj["lambda"] == pytest.approx(obj["beta"] * obj["gamma"])


def test_solve_csv(capsys):
    code, out, _ = run_cli(capsys, "solve", "--p", "5", "--alpha", "100",
                           "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    row = dict(zip(CSV_HEADER.split(","), map(float, lines[1].split(","))))
    assert row["alpha"] == 100.0


def test_solve_deterministic(capsys):
    args = ("solve", "--p", "2", "--alpha", "50")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_solve_local_with_norm(capsys):
    code, out, _ = run_cli(capsys, "solve-local", "--p", "3",
                           "--gamma", "15", "--q", "4")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"p", "k", "gamma", "d", "q_norm"}
    # gamma round-trips through the layer coordinate: ulp-level, not exact
    assert obj["gamma"] == pytest.approx(15.0, rel=1e-13)
    assert 0.0 < obj["d"] < obj["k"]


def test_profile_csv(capsys):
    code, out, _ = run_cli(capsys, "profile", "--p", "3", "--gamma", "15",
                           "--points", "51", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,w"
    assert len(lines) == 1 + 2 * 51 - 1
    first = lines[1].split(",")
    assert float(first[0]) == 0.0 and float(first[1]) == 0.0


def test_sweep_csv(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--p", "5", "--alpha-min", "10",
                           "--alpha-max", "1000", "--points", "3",
                           "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 4
    alphas = [float(line.split(",")[0]) for line in lines[1:]]
    assert alphas == sorted(alphas)
    assert alphas[0] == 10.0 and alphas[-1] == 1000.0


def test_output_file(tmp_path, capsys):
    target = tmp_path / "row.json"
    code, out, _ = run_cli(capsys, "solve", "--p", "3", "--alpha", "10",
                           "--output", str(target))
    assert code == 0
    assert out == ""
    obj = json.loads(target.read_text())
    assert obj["alpha"] == 10.0


# ------------------------------------------------------------ verification


def test_verify_critical_passes(capsys):
    code, out, err = run_cli(capsys, "verify", "--p", "3", "--q", "2")
    assert code == 0
    obj = json.loads(out)
    names = [c["name"] for c in obj["checks"]]
    assert names == ["theorem_2_constancy", "theorem_2_ratio"]
    assert all(c["pass"] for c in obj["checks"])


def test_verify_subcritical_reports_reading(capsys):
    code, out, err = run_cli(capsys, "verify", "--p", "2", "--q", "2",
                             "--a1", "0", "--a2", "1")
    assert code == 0
    assert "chosen E3 reading: proof_variant" in err
    obj = json.loads(out)
    assert obj["chosen_e3_reading"] == "proof_variant"
    lead = obj["checks"][0]
    assert lead["pass"] and lead["other_rel_error"] > 0.9


def test_verify_checks_csv(capsys):
    code, out, _ = run_cli(capsys, "verify", "--p", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == CHECK_HEADER
    assert len(lines) == 3
    assert all(line.endswith(",true") for line in lines[1:])


def test_oracle_check_passes(capsys):
    code, out, _ = run_cli(capsys, "oracle-check", "--p", "3",
                           "--gamma", "15", "--step", "1e-3")
    assert code == 0
    obj = json.loads(out)
    assert obj["energy_drift"] <= 1e-8
    assert all(v <= 1e-6 for v in obj["rel_error"].values())


# -------------------------------------------------------------- exit codes


def test_exit_solver_error(capsys):
    # gamma below pi^2 has no solution: runtime failure, not usage
    code, out, err = run_cli(capsys, "solve-local", "--p", "3", "--gamma", "5")
    assert code == 1
    assert out == ""
    assert "NoSolution" in err


def test_exit_check_failure(capsys):
    # unreachable tolerance turns the cross-check into a failed check
    code, out, _ = run_cli(capsys, "oracle-check", "--p", "3", "--gamma", "15",
                           "--step", "1e-2", "--tol", "1e-15")
    assert code == 2
    assert json.loads(out)["tolerance"] == 1e-15


def test_exit_usage(capsys):
    assert run_cli(capsys, "solve", "--p", "5")[0] == 64  # --alpha missing
    assert run_cli(capsys, "solve", "--alpha", "10", "--p", "5",
                   "--bogus")[0] == 64
    assert run_cli(capsys, "solve", "--alpha", "-3")[0] == 64
    assert run_cli(capsys, "solve", "--alpha", "10", "--a1", "0",
                   "--a2", "0")[0] == 64
    assert run_cli(capsys, "sweep", "--p", "5")[0] == 64
    assert run_cli(capsys, "sweep", "--p", "5", "--alpha-min", "10",
                   "--alpha-max", "5")[0] == 64
    assert run_cli(capsys, "solve-local", "--k", "1", "--gamma", "15")[0] == 64


def test_exit_usage_bad_quad_env(capsys, monkeypatch):
    monkeypatch.setenv("BIFLOGIS_QUAD_TOL", "banana")
    assert run_cli(capsys, "solve", "--p", "5", "--alpha", "10")[0] == 64
    monkeypatch.setenv("BIFLOGIS_QUAD_TOL", "2.0")
    assert run_cli(capsys, "solve", "--p", "5", "--alpha", "10")[0] == 64


def test_quad_env_accepted(capsys, monkeypatch):
    monkeypatch.setenv("BIFLOGIS_QUAD_TOL", "1e-10")
    code, out, _ = run_cli(capsys, "solve", "--p", "5", "--alpha", "100")
    assert code == 0
    assert math.isfinite(json.loads(out)["lambda"])


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "biflogis.cli", "constants", "--p", "2",
         "--e3-reading", "proof_variant"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["e3_reading"] == "proof_variant"
