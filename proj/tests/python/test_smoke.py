import csv
import io
import math

import pytest

import gravlqu


DEFAULT = gravlqu.ModelParams(omega=0.05, delta=0.05, B=0.5, b=0.5)


def test_reference_states():
    assert gravlqu.lqu(gravlqu.XState.maximally_mixed()).value == 0.0
    assert gravlqu.lqu(gravlqu.XState.bell_phi_plus()).value == pytest.approx(1.0, abs=1e-14)
    pure = gravlqu.XState.pure_00_11(math.pi / 6)
    assert gravlqu.lqu(pure).value == pytest.approx(0.75, abs=1e-10)
    assert gravlqu.concurrence(pure) == pytest.approx(math.sqrt(3) / 2, abs=1e-14)
    assert gravlqu.lqu_paper_mode(gravlqu.XState.maximally_mixed()).value == 0.75


def test_validate_reports_instead_of_raising():
    assert gravlqu.XState(0.5, 0, 0, 0.5, 0.6).validate() == ["block PSD: 0.25 < 0.36"]
    assert gravlqu.XState.bell_phi_plus().validate() == []


def test_errors_map_to_python_exceptions():
    with pytest.raises(gravlqu.NotPsdError):
        gravlqu.lqu(gravlqu.XState(0.5, 0, 0, 0.5, 0.6))
    with pytest.raises(gravlqu.UsageError):
        gravlqu.sweep_csv("beta", 0.0, 1.0, 5)
    assert issubclass(gravlqu.NotPsdError, gravlqu.Error)


def test_thermal_point_and_oracle_agree():
    row = gravlqu.run_point(DEFAULT, 0.5, oracle=True)
    assert row["Z"] == pytest.approx(6.447, rel=1e-4)
    assert row["branch_exact"] in ("w1", "w3")
    assert abs(row["oracle_min"] - row["lqu_exact"]) < 2e-6
    state = gravlqu.thermal_state(DEFAULT, 0.5)
    assert gravlqu.lqu(state).value == row["lqu_exact"]
    res = gravlqu.minimize_skew(state)
    assert res["min_value"] == pytest.approx(row["lqu_exact"], abs=2e-6)
    assert gravlqu.skew_information(state, res["argmin"]) == res["min_value"]


def test_sweep_csv_is_worker_independent():
    one = gravlqu.sweep_csv("T", 0.01, 5.0, 50, DEFAULT, 0.5, workers=1)
    four = gravlqu.sweep_csv("T", 0.01, 5.0, 50, DEFAULT, 0.5, workers=4)
    assert one == four
    rows = list(csv.DictReader(io.StringIO(one)))
    assert len(rows) == 50
    assert one.splitlines()[0] == gravlqu.CSV_HEADER
    for r in rows:
        w = max(float(r["w1"]), float(r["w3"]))
        assert abs(float(r["lqu_exact"]) - (1 - w)) <= 1e-14


def test_write_figure(tmp_path):
    assert "fig3a" in gravlqu.figure_names()
    csvs, script = gravlqu.write_figure("fig3a", str(tmp_path), steps=11)
    assert len(csvs) >= 2
    text = (tmp_path / script).read_text()
    for name in csvs:
        assert name in text
        assert (tmp_path / name).exists()
