import json
from fractions import Fraction

import pytest

from coulombwf import cli
from coulombwf.closedform import assemble_R2, make_quantum_numbers
from coulombwf.oracle import GOLDEN_R2


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- coeffs ----------------------------------------------------------------------

def test_coeffs_ground_state_json(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "1", "--l", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["q_plus"] == {"-1": "1/2"}
    assert doc["q_ei"] == {"0": "1"}
    assert doc["ei_arg_scale"] == "-2"


def test_coeffs_csv_covers_all_powers(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "3", "--l", "2", "--format", "csv")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert lines[0] == "power,q_plus,q_ei"
    rows = {ln.split(",")[0]: ln for ln in lines[1:]}
    assert rows["-3"] == "-3,81,"
    assert rows["-2"] == "-2,27/2,"
    assert rows["1"] == "1,2/3,"
    assert rows["2"] == "2,,4/9"


def test_coeffs_latex_mirrors_example_grouping(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "4", "--l", "3", "--format", "latex")
    assert code == 0
    assert r"\frac{11520}{r^{4}}" in out
    assert r"e^{r/4}" in out and r"e^{-r/4}" in out
    assert r"\int_{-r/2}^{\infty}" in out


def test_coeffs_rejects_invalid_quantum_numbers(capsys):
    code, _, err = run(capsys, "coeffs", "--n", "5", "--l", "5")
    assert code == 64
    assert "l=5" in err


def test_coeffs_json_round_trip(capsys):
    for n, l in GOLDEN_R2:
        _, out, _ = run(capsys, "coeffs", "--n", str(n), "--l", str(l))
        doc = json.loads(out)
        form = assemble_R2(make_quantum_numbers(n, l))
        assert cli._poly_from_rat_dict(doc["q_plus"]) == form.q_plus
        assert cli._poly_from_rat_dict(doc["q_ei"]) == form.q_ei
        assert Fraction(doc["ei_arg_scale"]) == -2 * form.kappa


def test_coeffs_output_deterministic(capsys):
    _, first, _ = run(capsys, "coeffs", "--n", "4", "--l", "2")
    _, second, _ = run(capsys, "coeffs", "--n", "4", "--l", "2")
    assert first == second


# -- eval -------------------------------------------------------------------------

def test_eval_regular_row(capsys):
    code, out, _ = run(capsys, "eval", "--n", "1", "--l", "0", "--which", "R1",
                       "--grid", "1:1:1", "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["r"] == 1.0
    assert row["value"] == pytest.approx(0.36787944117144233, rel=1e-15)


def test_eval_irregular_row(capsys):
    code, out, _ = run(capsys, "eval", "--n", "1", "--l", "0", "--which", "R2",
                       "--grid", "1:1:1", "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["value"] == pytest.approx(-0.46342005208881317, rel=1e-12)
    assert row["est_rel_error"] > 0


def test_eval_empty_grid(capsys):
    code, out, _ = run(capsys, "eval", "--n", "2", "--l", "1", "--grid", "1:2:0")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert lines == ["r,value,est_rel_error"]


def test_eval_rejects_nonpositive_grid(capsys):
    code, _, err = run(capsys, "eval", "--n", "1", "--l", "0", "--grid", "0:2:5")
    assert code == 64
    assert "positive" in err


def test_eval_rejects_malformed_grid(capsys):
    code, _, _ = run(capsys, "eval", "--n", "1", "--l", "0", "--grid", "nope")
    assert code == 64


# -- table ------------------------------------------------------------------------

def test_table_json_enumerates(capsys):
    code, out, _ = run(capsys, "table", "--nmax", "2")
    assert code == 0
    docs = json.loads(out)
    assert [(d["n"], d["l"]) for d in docs] == [(1, 0), (2, 0), (2, 1)]
    assert all("r1_q_minus" in d for d in docs)


def test_table_latex_lists_all(capsys):
    code, out, _ = run(capsys, "table", "--nmax", "4", "--format", "latex")
    assert code == 0
    body = [ln for ln in out.splitlines() if ln.startswith("R_2")]
    assert len(body) == 10


# -- verify ------------------------------------------------------------------------

def test_verify_passes(capsys):
    code, out, err = run(capsys, "verify", "--nmax", "3", "--checks", "ode,wronskian,golden")
    assert code == 0
    reports = [json.loads(ln) for ln in out.splitlines()]
    assert all(rep["passed"] for rep in reports)
    assert "passed" in err


def test_verify_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "verify", "--nmax", "3", "--checks", "ode,wronskian")
    _, parallel, _ = run(capsys, "verify", "--nmax", "3", "--checks", "ode,wronskian", "--parallel")
    assert serial == parallel


def test_verify_fails_on_corrupt_golden(capsys, monkeypatch):
    from coulombwf import oracle as oracle_mod

    corrupt = {k: {"q_plus": dict(v["q_plus"]), "q_ei": dict(v["q_ei"])}
               for k, v in GOLDEN_R2.items()}
    corrupt[(3, 1)]["q_ei"][1] = Fraction(123)
    monkeypatch.setattr(oracle_mod, "GOLDEN_R2", corrupt)
    code, out, err = run(capsys, "verify", "--checks", "golden")
    assert code == 1
    failing = [json.loads(ln) for ln in out.splitlines() if not json.loads(ln)["passed"]]
    assert len(failing) == 1
    assert failing[0]["check"] == "golden_table"
    assert (failing[0]["n"], failing[0]["l"]) == (3, 1)


def test_verify_rejects_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "--checks", "bogus")
    assert code == 64
    assert "unknown checks" in err


def test_verify_all_checks_default_nmax(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    reports = [json.loads(ln) for ln in out.splitlines()]
    assert all(rep["passed"] for rep in reports)
    names = {rep["check"].split("[")[0].split("_R")[0] for rep in reports}
    assert {"golden_table", "ode_residual", "wronskian",
            "pv_closedform", "pole_split", "first_integral"} <= names


def test_verify_csv_format(capsys):
    code, out, _ = run(capsys, "verify", "--nmax", "2", "--checks", "wronskian",
                       "--format", "csv")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert lines[0] == "n,l,check,passed,residual_norm,exact,details"
    assert len(lines) == 4


# -- shell --------------------------------------------------------------------------

def test_shell_near_coulomb_limit(capsys):
    code, out, _ = run(capsys, "shell", "--n", "2", "--l", "0", "--a", "1e-4",
                       "--b-range", "0.5:1.5")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["c2"] / doc["c1"]) < 1e-6
    assert doc["b_star"] == pytest.approx(1.0, abs=1e-6)
    assert all(v < 1e-7 for v in doc["continuity"].values())


def test_shell_displaced_inner_boundary(capsys):
    # with a genuinely perturbed interior the scan either finds a root whose
    # continuity holds or reports the scanned mismatch table and exits 2
    code, out, err = run(capsys, "shell", "--n", "2", "--l", "0", "--a", "0.5",
                         "--b-range", "0.6:3.0")
    if code == 0:
        doc = json.loads(out)
        assert all(v < 1e-6 for v in doc["continuity"].values())
    else:
        assert code == 2
        assert "b,mismatch" in err


def test_shell_no_root_exits_2(capsys):
    code, _, err = run(capsys, "shell", "--n", "1", "--l", "0", "--a", "1e-4",
                       "--b-range", "2.0:3.0")
    assert code == 2
    assert "no root" in err
    assert "b,mismatch" in err


def test_shell_reversed_range_is_usage_error(capsys):
    code, _, _ = run(capsys, "shell", "--n", "2", "--l", "0", "--a", "0.1",
                     "--b-range", "1.5:0.5")
    assert code == 64


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 64
