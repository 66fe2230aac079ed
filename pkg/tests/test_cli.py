"""Experiment runner: config validation, row emission, verify, exit codes."""

import json
import math

import numpy as np
import pytest

import nlasim.cli as cli
import nlasim.nla as nla_module
from nlasim.cli import (ConfigError, build_experiment, main, render_rows,
                        run_verify, validate_config)

AMPLIFY_MIN = {"alphas": [0.2], "target_gains": [1.0, 2.0],
               "n_units": [1, 2], "kinds": ["QS", "PC"], "n_max": 20,
               "optimizer": {"grid_points": 16, "refine_tolerance": 1e-3}}


def write_config(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


# ---------------------------------------------------------------------------
# validation

def test_unknown_keys_rejected():
    with pytest.raises(ConfigError):
        validate_config({"alphas": [0.2], "target_gains": [1.0],
                         "n_units": [1], "frobnicate": 3}, "amplify")


def test_empty_grid_rejected():
    with pytest.raises(ConfigError):
        validate_config({"alphas": [], "target_gains": [1.0],
                         "n_units": [1]}, "amplify")


def test_bad_kind_rejected():
    with pytest.raises(ConfigError):
        validate_config({"attenuations_db": [5.0], "kinds": ["QQ"]},
                        "distill")


def test_experiment_mismatch_rejected():
    with pytest.raises(ConfigError):
        validate_config({"experiment": "distill", "alphas": [0.2],
                         "target_gains": [1.0], "n_units": [1]}, "amplify")


def test_scalar_defaults_filled():
    p = validate_config({"attenuations_db": [0.0]}, "distill")
    assert p["scenario"] == 1
    assert p["r1_db"] == 5.0
    assert p["kinds"] == ("QS", "PC")
    assert p["n_units"] == (2,)
    assert p["strategy"] == "unfiltered"


def test_kind_order_is_canonical():
    p = validate_config({"attenuations_db": [0.0],
                         "kinds": ["PC", "QS"]}, "distill")
    assert p["kinds"] == ("QS", "PC")


def test_optimizer_subschema():
    with pytest.raises(ConfigError):
        validate_config({"attenuations_db": [0.0],
                         "optimizer": {"bogus": 1}}, "distill")
    with pytest.raises(ConfigError):
        build_experiment("distill", {"attenuations_db": [0.0],
                                     "optimizer": {"t_min": 0.9,
                                                   "t_max": 0.1}})


def test_flag_overrides_beat_config(tmp_path):
    raw = {"attenuations_db": [0.0], "format": "csv", "workers": 4}
    cfg = build_experiment("distill", raw, fmt="jsonl", workers=1)
    assert cfg.out_format == "jsonl"
    assert cfg.workers == 1


# ---------------------------------------------------------------------------
# rendering

def test_render_csv_float_format():
    text = render_rows(["a", "b"], [[1 / 3, "x"], [2.0, "y"]], "csv")
    lines = text.strip().split("\n")
    assert lines[0] == "a,b"
    assert lines[1].startswith("0.33333333333333331")
    # 17 significant digits round-trip
    assert float(lines[1].split(",")[0]) == 1 / 3


def test_render_jsonl_parses_back():
    text = render_rows(["t", "v"], [[0.1, 2], [0.2, 3]], "jsonl")
    records = [json.loads(line) for line in text.strip().split("\n")]
    assert records[0]["v"] == 2
    assert float(records[1]["t"]) == 0.2


# ---------------------------------------------------------------------------
# subcommands end to end

def test_amplify_minimal_grid_rows(tmp_path, capsys):
    path = write_config(tmp_path, AMPLIFY_MIN)
    assert main(["amplify", "--config", path]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    header, rows = lines[0].split(","), lines[1:]
    assert len(rows) == 8                      # 1 x 2 x 2 x 2 grid
    assert header[:4] == ["alpha", "target_gain", "kind", "n_units"]
    # scissors dominate catalysis at equal parameters
    table = {}
    for row in rows:
        cells = dict(zip(header, row.split(",")))
        key = (cells["target_gain"], cells["n_units"])
        table.setdefault(key, {})[cells["kind"]] = (
            float(cells["fidelity"]), float(cells["success_prob"]))
    for by_kind in table.values():
        assert by_kind["QS"][0] >= by_kind["PC"][0]
        assert by_kind["QS"][1] >= by_kind["PC"][1]


def test_distill_rows_and_eta_column(tmp_path, capsys):
    path = write_config(tmp_path, {
        "attenuations_db": [0.0, 6.0], "kinds": ["PC"], "n_units": [2],
        "n_max": 18, "optimizer": {"grid_points": 8,
                                   "refine_tolerance": 1e-2}})
    assert main(["distill", "--config", path]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    header = lines[0].split(",")
    assert len(lines) == 3
    for row in lines[1:]:
        cells = dict(zip(header, row.split(",")))
        assert float(cells["eta"]) == pytest.approx(
            10 ** (-float(cells["attenuation_db"]) / 10), rel=1e-15)
        assert float(cells["total_logneg"]) > 0.0
        assert 0 < float(cells["success_prob"]) <= 1
        assert float(cells["reference_logneg"]) > 0.0


def test_distill_deterministic_across_workers(tmp_path):
    payload = {"attenuations_db": [6.0], "kinds": ["PC"], "n_units": [1],
               "n_max": 18,
               "optimizer": {"grid_points": 8, "refine_tolerance": 1e-2}}
    path = write_config(tmp_path, payload)
    out1, out2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    assert main(["distill", "--config", path, "--out", out1,
                 "--workers", "1"]) == 0
    assert main(["distill", "--config", path, "--out", out2,
                 "--workers", "2"]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_sweep_emits_grid(tmp_path, capsys):
    path = write_config(tmp_path, {
        "attenuation_db": 5.0, "kind": "PC", "n_units": 2, "n_max": 18,
        "optimizer": {"grid_points": 6}})
    assert main(["sweep", "--config", path]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 7
    ts = [float(line.split(",")[4]) for line in lines[1:]]
    assert ts == sorted(ts)


def test_cascade_compare_rows(tmp_path, capsys):
    path = write_config(tmp_path, {
        "r_db": 3.0, "n_units": [1], "n_max": 15,
        "optimizer": {"grid_points": 8, "refine_tolerance": 1e-2}})
    assert main(["cascade-compare", "--config", path]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 3
    arrangements = {line.split(",")[2] for line in lines[1:]}
    assert arrangements == {"parallel", "cascaded"}


# ---------------------------------------------------------------------------
# exit codes

def test_missing_config_is_validation_error(capsys):
    assert main(["distill"]) == 1
    assert "config" in capsys.readouterr().err


def test_bad_flag_remapped_to_validation_error(capsys):
    assert main(["no-such-command"]) == 1
    capsys.readouterr()


def test_truncation_guard_gives_exit_2(tmp_path, capsys):
    path = write_config(tmp_path, {"attenuations_db": [0.0], "n_max": 10})
    assert main(["distill", "--config", path]) == 2
    assert "numerical guard" in capsys.readouterr().err


def test_unknown_key_gives_exit_1(tmp_path, capsys):
    path = write_config(tmp_path, {"attenuations_db": [0.0], "zzz": 1})
    assert main(["distill", "--config", path]) == 1
    assert "config error" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# verify

def test_verify_default_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "checks passed" in out
    assert "FAIL" not in out


def test_verify_tolerance_override_reported(capsys):
    assert main(["verify", "--tolerance", "1e-20"]) == 3
    out = capsys.readouterr().out
    assert "(tolerance 1.0e-20)" in out
    assert "FAIL" in out


def test_verify_detects_wrong_sign_diagonal(monkeypatch, capsys):
    true_fn = nla_module.pc_nla_diagonal

    def sabotaged(n_units, transmissivity, n_max):
        op = true_fn(n_units, transmissivity, n_max)
        coeffs = op.coeffs.copy()
        coeffs[1:] = -coeffs[1:]          # wrong sign beyond the vacuum term
        return type(op)(coeffs)

    monkeypatch.setattr(nla_module, "pc_nla_diagonal", sabotaged)
    assert main(["verify"]) == 3
    out = capsys.readouterr().out
    assert "FAIL pc_diagonal_multinomial" in out


def test_verify_subset_of_checks(tmp_path, capsys):
    path = write_config(tmp_path, {"checks": ["nsplitter_unitary"]})
    assert main(["verify", "--config", path]) == 0
    out = capsys.readouterr().out
    assert "1/1 checks passed" in out


def test_verify_report_to_file(tmp_path):
    out = str(tmp_path / "report.txt")
    assert main(["verify", "--out", out]) == 0
    assert "checks passed" in open(out).read()
