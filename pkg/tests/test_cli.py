"""End-to-end tests of the command-line interface."""

from __future__ import annotations

import csv
import importlib
import io
import json
import math

import pytest

from neutrino_lgi import cli as cli_module
from neutrino_lgi import main as main_module
from neutrino_lgi.cli import EXIT_ACCEPTANCE, EXIT_IO, EXIT_OK, EXIT_VALIDATION, run_cli
from neutrino_lgi.main import app_main


def _rows(text: str):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture(autouse=True)
def _repo_root(project_cwd):
    yield project_cwd


def test_probability_at_source(capsys):
    assert run_cli(["probability", "0"]) == EXIT_OK
    assert capsys.readouterr().out == "L_km,P_e,P_mu,P_tau,evaluator\n0,1,0,0,expansion\n"


def test_probability_compare(capsys):
    assert run_cli(["probability", "--range", "0", "1000", "3", "--compare"]) == EXIT_OK
    captured = capsys.readouterr()
    rows = _rows(captured.out)
    assert [row["evaluator"] for row in rows] == ["expansion", "oracle"] * 3
    assert [float(row["L_km"]) for row in rows[::2]] == [0.0, 500.0, 1000.0]
    assert "max |expansion - exact|" in captured.err


def test_probability_needs_lengths(capsys):
    assert run_cli(["probability"]) == EXIT_VALIDATION
    assert "error:" in capsys.readouterr().err


def test_correlator_default_schedule(capsys):
    assert run_cli(["correlator"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["c_total"] == pytest.approx(2.1681978495374, abs=1e-10)
    assert payload["violation"] == pytest.approx(0.1681978495374, abs=1e-10)
    assert payload["evaluator"] == "expansion"
    assert payload["schedule"]["l1"] == 140.15


def test_correlator_zero_spacing(capsys):
    assert run_cli(["correlator", "--dl", "0", "--format", "csv"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert float(rows[0]["c_total"]) == pytest.approx(2.0, abs=1e-12)


def test_correlator_overrides(capsys):
    assert run_cli(["--no-cp", "correlator", "--dl", "1253.8"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["c_total"] == pytest.approx(2.1668872113640, abs=1e-9)

    assert run_cli(["--evaluator", "oracle", "correlator"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["evaluator"] == "oracle"
    assert payload["c_total"] == pytest.approx(2.167984, abs=1e-5)


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"physics": {"theta14_deg": 3.0}}), encoding="utf-8")
    assert run_cli(["--config", str(bad), "correlator"]) == EXIT_VALIDATION
    assert "physics.theta14_deg" in capsys.readouterr().err

    assert run_cli(["--config", str(tmp_path / "absent.json"), "correlator"]) == EXIT_IO
    assert run_cli(["--out", str(tmp_path), "correlator"]) == EXIT_IO
    assert run_cli(["correlator", "--format", "xml"]) == EXIT_VALIDATION
    assert run_cli(["--theta13", "100", "correlator"]) == EXIT_VALIDATION
    assert run_cli(["--help"]) == EXIT_OK


def test_scan_fixed_l1(capsys):
    assert run_cli(["scan", "--l1", "140.15", "--dl-steps", "301"]) == EXIT_OK
    captured = capsys.readouterr()
    rows = _rows(captured.out)
    assert len(rows) == 301
    best = max(rows, key=lambda row: float(row["c_total"]))
    assert float(best["dl_km"]) == pytest.approx(1255.7, abs=10.0)
    assert "grid maximum" in captured.err


def test_scan_grid_to_file(tmp_path, capsys):
    out = tmp_path / "runs" / "scan.csv"
    argv = ["--out", str(out), "scan", "--l1-max", "100", "--l1-steps", "11", "--dl-max", "200", "--dl-steps", "21"]
    assert run_cli(argv) == EXIT_OK
    rows = _rows(out.read_text(encoding="utf-8"))
    assert len(rows) == 11 * 21
    assert float(rows[0]["c_total"]) == pytest.approx(2.0, abs=1e-9)


def test_sweep_theta13(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    assert run_cli(["--out", str(out), "sweep", "--axis", "theta13", "--no-refine", "--curves"]) == EXIT_OK
    rows = _rows(out.read_text(encoding="utf-8"))
    assert [float(row["value"]) for row in rows] == [0.0, 4.0, 6.0, 8.5, 12.0]
    maxima = [float(row["c_star"]) for row in rows]
    assert all(later > earlier for earlier, later in zip(maxima, maxima[1:]))
    assert rows[0]["refined"] == "false"
    assert float(rows[3]["fixed_l1_km"]) == 140.15

    curves = _rows((tmp_path / "sweep_curves.csv").read_text(encoding="utf-8"))
    assert len(curves) == 5 * 301


def test_sweep_checks_curves_path_first(tmp_path, monkeypatch, capsys):
    def no_sweep(*args, **kwargs):
        raise AssertionError("sweep ran before the output check")

    monkeypatch.setattr(cli_module, "parameter_sweep", no_sweep)
    (tmp_path / "sweep_curves.csv").mkdir()
    out = tmp_path / "sweep.csv"
    assert run_cli(["--out", str(out), "sweep", "--axis", "theta13", "--curves"]) == EXIT_IO
    assert "directory" in capsys.readouterr().err
    assert not out.exists()


def test_sweep_custom_values(capsys):
    assert run_cli(["sweep", "--axis", "alpha", "--values", "0", "0.06", "--no-refine"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert float(rows[0]["c_star"]) == pytest.approx(2.089222, abs=1e-5)
    assert float(rows[1]["c_star"]) == pytest.approx(2.407632, abs=1e-5)


def test_simulate_zero_spacing(capsys):
    assert run_cli(["--seed", "5", "simulate", "--dl", "0", "--runs", "2000"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["c_total"] == {"value": 2.0, "std_error": 0.0}
    assert payload["seed"] == 5


def test_simulate_rejects_tiny_budget(capsys):
    assert run_cli(["simulate", "--runs", "1"]) == EXIT_VALIDATION


def test_reproduce(tmp_path, capsys):
    out = tmp_path / "reproduce.json"
    assert run_cli(["--out", str(out), "reproduce"]) == EXIT_OK
    assert "✅ PASS" in capsys.readouterr().out
    assert json.loads(out.read_text(encoding="utf-8"))["passed"] is True


def test_reproduce_strict_tolerance(tmp_path, capsys):
    strict = tmp_path / "strict.json"
    strict.write_text(
        json.dumps({
            "scan": {"l1_steps": 31, "dl_steps": 61},
            "reproduce": {"tolerance": 1e-5, "relative_tolerance": 1e-3},
        }),
        encoding="utf-8",
    )
    assert run_cli(["--config", str(strict), "reproduce"]) == EXIT_ACCEPTANCE
    assert "❌ FAIL" in capsys.readouterr().out


def test_reproduce_fails_when_full_job_drops_cp_phase(tmp_path, monkeypatch, capsys):
    module = importlib.import_module("neutrino_lgi.reporting.reproduce")
    original = module.job_parameters

    def without_cp_phase(params):
        variants = original(params)
        variants[module.FULL] = variants[module.DELTA_CP_ZERO]
        return variants

    monkeypatch.setattr(module, "job_parameters", without_cp_phase)
    coarse = tmp_path / "coarse.json"
    coarse.write_text(json.dumps({"scan": {"l1_steps": 31, "dl_steps": 61}}), encoding="utf-8")
    assert run_cli(["--config", str(coarse), "reproduce"]) == EXIT_ACCEPTANCE
    out = capsys.readouterr().out
    assert "❌ FAIL delta_cp enhancement" in out
    assert "[sign differs]" in out


def test_config_command(capsys):
    assert run_cli(["--theta13", "0", "config"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["source"]["physics"]["theta13_deg"] == 0.0
    internal = payload["internal"]
    assert internal["theta13_rad"] == 0.0
    assert internal["delta_cp_rad"] == pytest.approx(math.radians(306.0), abs=1e-11)
    assert internal["matter_parameter_a"] == pytest.approx(0.0923076923077, abs=1e-11)


def test_app_main_exits_with_status(capsys):
    with pytest.raises(SystemExit) as excinfo:
        app_main(["probability"])
    assert excinfo.value.code == EXIT_VALIDATION


def test_app_main_interrupted(monkeypatch, capsys):
    def interrupt(argv):
        raise KeyboardInterrupt

    monkeypatch.setattr(main_module, "run_cli", interrupt)
    with pytest.raises(SystemExit) as excinfo:
        main_module.app_main(["scan"])
    assert excinfo.value.code == main_module.EXIT_INTERRUPTED
    assert "interrupted" in capsys.readouterr().err
