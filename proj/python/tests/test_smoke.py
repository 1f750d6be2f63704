import json
import math

import pytest

import serial_repeater as sr


def test_builtin_codes():
    names = [c["name"] for c in sr.builtin_codes()]
    assert len(names) == 4
    assert sr.validate_code("713")["valid"]


def test_gate_counts():
    counts = sr.gate_counts("422")
    assert counts["n_gamma"] == [3, 2, 2, 1]
    assert counts["matter_qudits"] == 3


def test_zero_error_polynomial():
    S = sr.assemble_S("422", sr.ErrorParams())
    u = 0.9
    assert S(u) == pytest.approx(u**4 + 4 * u**3 * (1 - u), abs=1e-14)
    assert sr.optimize(S)["infinite_range"]


def test_optimize_and_threshold():
    S = sr.assemble_S("qutrit", sr.preset("fig4", [1e-3]))
    assert sr.threshold(S)["status"] == "below"
    r = sr.optimize(S, 0.1)
    assert 0.0 < r["u_star"] < 1.0
    assert r["eta"] == pytest.approx(-1.0 / math.log(r["u_star"]))
    assert not r["above_threshold"]


def test_bad_params_raise():
    p = sr.ErrorParams()
    p.p_x = 2.0
    with pytest.raises(ValueError):
        p.validate()


def test_monte_carlo_matches_polynomial():
    p = sr.preset("fig4", [1e-2])
    S = sr.assemble_S("422", p)
    mc = sr.simulate_node("422", p, 0.95, 50000, seed=3)
    assert abs(mc["success_rate"] - S(0.95)) < 4 * math.sqrt(S(0.95) * (1 - S(0.95)) / 50000)
    again = sr.simulate_node("422", p, 0.95, 50000, seed=3, workers=2)
    assert again["successes"] == mc["successes"]


def test_cli_round_trip():
    code, out, _ = sr.run_cli(["codes", "list", "--format", "json"])
    assert code == 0
    assert len(json.loads(out)["rows"]) == 4
    code, _, _ = sr.run_cli(["mc", "--code", "422", "--trials", "0"])
    assert code == 1


def test_table1_resources():
    rows = sr.table1(1e-3)
    assert [(r["matter_qudits"], r["encoding_elements"]) for r in rows] == [(3, 1), (4, 3), (12, 11), (2, 1)]
