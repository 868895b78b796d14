import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from qubit_ri import alternating, cli

SMALL_VERIFY = ["--samples", "50", "--bounds-samples", "200", "--sim-samples", "50",
                "--grid-points", "3", "--no-engine-samples", "100"]


def run(argv, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = cli.main(argv + ["--out", str(out)])
    return code, out.read_text() if out.exists() else ""


def table(text):
    rows = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(rows))))


def test_dynamics_csv(tmp_path):
    code, text = run(["dynamics", "--collisions", "4", "--jxx-h", "4", "--jyy-h", "16"], tmp_path)
    assert code == 0
    assert text.startswith("# qubit-ri ")
    assert "# jyy_h=16.0" in text
    rows = table(text)
    assert list(rows[0]) == ["n", "p", "re_c", "im_c", "q_hot", "q_cold", "w_hot", "w_cold", "de"]
    assert [int(r["n"]) for r in rows] == [0, 1, 2, 3, 4]
    for r in rows:
        total = sum(float(r[k]) for k in ("q_hot", "q_cold", "w_hot", "w_cold", "de"))
        assert abs(total) < 1e-11


def test_dynamics_random_initial_depends_on_seed(tmp_path):
    _, a = run(["dynamics", "--collisions", "0", "--random-initial", "--seed", "1"], tmp_path, "a")
    _, b = run(["dynamics", "--collisions", "0", "--random-initial", "--seed", "2"], tmp_path, "b")
    assert table(a)[0]["p"] != table(b)[0]["p"]


# the Dyson fixed point carries an O(tau^2) error
@pytest.mark.parametrize("mode,kind,tol", [("alternating", "exact", 1e-12),
                                           ("simultaneous", "dyson", 1e-5)])
def test_limit_cycle_row(tmp_path, mode, kind, tol):
    code, text = run(["limit-cycle", "--mode", mode, "--tau", "0.001", "--jxx-h", "4",
                      "--jyy-h", "16", "--jxx-c", "2", "--jyy-c", "8"], tmp_path)
    assert code == 0
    (row,) = table(text)
    assert row["analytic_kind"] == kind
    assert float(row["diff_cold"]) < tol


def test_limit_cycle_equal_coupling_exact(tmp_path):
    code, text = run(["limit-cycle", "--mode", "simultaneous", "--tau", "1.3"], tmp_path)
    (row,) = table(text)
    assert code == 0
    assert row["analytic_kind"] == "exact-equal-coupling"
    assert float(row["diff_cold"]) < 1e-12


def test_limit_cycle_frozen_exit(tmp_path):
    code, text = run(["limit-cycle", "--jxx-h", "0", "--jyy-h", "0", "--jxx-c", "0",
                      "--jyy-c", "0"], tmp_path)
    assert code == cli.EXIT_FROZEN
    (row,) = table(text)
    assert row["frozen"] == "1"


def test_heat_sweep_current_column(tmp_path):
    code, text = run(["heat-sweep", "--from", "0.1", "--to", "0.7", "--points", "4"], tmp_path)
    assert code == 0
    rows = table(text)
    assert len(rows) == 4
    p_c, p_h = 1 / (1 + np.exp(-2.0)), 1 / (1 + np.exp(-1.0))
    for r in rows:
        tau = float(r["tau"])
        expected = alternating.heat_current(1.0, 1.0, tau, p_c, p_h)
        assert float(r["current"]) == pytest.approx(expected, rel=1e-6)


def test_heat_sweep_j_axis_scales_couplings(tmp_path):
    code, text = run(["heat-sweep", "--axis", "J", "--from", "0", "--to", "2", "--points", "3",
                      "--mode", "simultaneous"], tmp_path)
    assert code == 0
    rows = table(text)
    assert np.isnan(float(rows[0]["q_cold"]))
    assert float(rows[2]["q_cold"]) >= 0


def test_invalid_inputs(tmp_path):
    assert run(["limit-cycle", "--beta-c", "0.5"], tmp_path)[0] == cli.EXIT_INVALID
    assert run(["limit-cycle", "--tau", "nan"], tmp_path)[0] == cli.EXIT_INVALID
    assert run(["dynamics", "--p0", "1.5"], tmp_path)[0] == cli.EXIT_INVALID
    assert run(["bounds-sample", "--seed", "-3"], tmp_path)[0] == cli.EXIT_INVALID
    assert run(["heat-sweep", "--from", "-1"], tmp_path)[0] == cli.EXIT_INVALID


def test_io_error(tmp_path):
    code = cli.main(["limit-cycle", "--out", str(tmp_path / "missing" / "x.csv")])
    assert code == cli.EXIT_IO


def test_bounds_sample_summary_and_determinism(tmp_path):
    argv = ["bounds-sample", "--samples", "40", "--seed", "42"]
    code, a = run(argv, tmp_path, "a.csv")
    _, b = run(argv, tmp_path, "b.csv")
    assert code == 0
    assert a == b
    assert "# summary: samples=40 frozen=0 violations=0" in a
    assert len(table(a)) == 40


def test_float_format_round_trips():
    for x in (0.1, 1 / 3, 2.220446049250313e-16, 123456789.123456789):
        s = cli.fmt(x)
        assert float(s) == x
        assert len(s.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 17


def test_verify_small(tmp_path):
    code, text = run(["verify"] + SMALL_VERIFY, tmp_path, "report.json")
    assert code == 0
    doc = json.loads(text)
    assert doc["passed"]
    assert {c["name"] for c in doc["checks"]} >= {"oracle_alternating_populations",
                                                  "bounds_alternating_proven",
                                                  "trotter_equivalence"}


def test_verify_catches_sign_error(tmp_path, monkeypatch, capsys):
    # mutation: flip the sign of the closed-form heat
    original = alternating.contact_heat
    monkeypatch.setattr(alternating, "contact_heat", lambda *a: -original(*a))
    code, text = run(["verify"] + SMALL_VERIFY, tmp_path, "report.json")
    assert code == cli.EXIT_VIOLATION
    doc = json.loads(text)
    failed = {c["name"]: c for c in doc["checks"] if not c["passed"]}
    assert "oracle_alternating_thermo" in failed
    assert failed["oracle_alternating_thermo"]["offender"]["tau"] > 0
    err = capsys.readouterr().err
    assert "FAIL oracle_alternating_thermo" in err
    assert "offending config" in err


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "qubit_ri", "limit-cycle", "--tau", "0.3"],
                         capture_output=True, text=True, check=True)
    assert "alternating,exact,0," in out.stdout
