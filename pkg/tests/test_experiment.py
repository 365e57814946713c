"""Experiment config validation, CSV contract, determinism, CLI."""

import csv
import math
from pathlib import Path

import numpy as np
import pytest
import yaml

from irsgame import (
    CSV_COLUMNS,
    default_config,
    run_experiment,
    run_trial,
    solve_game,
    validate_config,
)
from irsgame.cli import main as cli_main
from irsgame.experiment import (
    channel_seed,
    sample_trial_channels,
    summarize,
    write_csv,
)

SMALL_RAW = {
    "dims": {"M": 2, "K": 2, "S": 2, "N": 2},
    "p_max_dbm": [0.0, 5.0],
    "trials": 2,
    "fading": {"noise_power_dbm": -110.0},
    "solver": {"max_inner_iters": 120},
    "game": {"max_outer_iters": 8},
}


def small_config(tmp_path, **extra):
    raw = dict(SMALL_RAW, output_path=str(tmp_path / "out.csv"), **extra)
    return validate_config(raw)


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_empty_config_is_reference_setup():
    assert validate_config(None) == default_config()
    assert validate_config({}) == default_config()
    cfg = default_config()
    assert cfg.dims == (4, 4, 8, 8)
    assert cfg.p_max_dbm == (-5.0, -2.5, 0.0, 2.5, 5.0)
    assert cfg.trials == 20
    assert cfg.delta == 0.1
    assert cfg.fading.pl_ref_db == 30.0
    assert cfg.fading.direct_exponent == 3.5
    assert cfg.fading.irs_exponent == 2.0
    assert cfg.geometry.bs_pos == (0.0, 0.0)
    assert cfg.geometry.irs_pos == (50.0, 50.0)
    assert cfg.geometry.cell_center == (200.0, 0.0)
    assert cfg.geometry.cell_radius == 10.0


def test_unknown_keys_rejected_by_name():
    with pytest.raises(ValueError, match="typo_key"):
        validate_config({"typo_key": 1})
    with pytest.raises(ValueError, match="solver.cc"):
        validate_config({"solver": {"cc": 1.0}})
    with pytest.raises(ValueError, match="fading.exponent"):
        validate_config({"fading": {"exponent": 2.0}})


def test_invalid_values_rejected():
    with pytest.raises(ValueError):
        validate_config({"trials": 0})
    with pytest.raises(ValueError):
        validate_config({"p_max_dbm": []})
    with pytest.raises(ValueError):
        validate_config({"schemes": ["game", "mystery"]})
    with pytest.raises(ValueError):
        validate_config({"schemes": []})
    with pytest.raises(ValueError):
        validate_config({"schemes": ["game", "game"]})
    with pytest.raises(ValueError):
        validate_config({"n_jobs": 0})
    with pytest.raises(ValueError):
        validate_config({"delta": -0.1})
    with pytest.raises(ValueError):
        validate_config({"solver": {"power_mode": "exact"}})
    with pytest.raises(ValueError):
        validate_config({"dims": {"M": 0}})
    with pytest.raises(ValueError):
        validate_config(["not", "a", "mapping"])


def test_channels_paired_across_schemes():
    cfg = validate_config(SMALL_RAW)
    a = sample_trial_channels(cfg, 0, 1)
    b = sample_trial_channels(cfg, 0, 1)
    np.testing.assert_array_equal(a.h_direct, b.h_direct)
    c = sample_trial_channels(cfg, 1, 1)
    assert not np.array_equal(a.h_direct, c.h_direct)
    # seed column value is scheme-independent by construction
    assert channel_seed(0, 0, 1).generate_state(1)[0] == channel_seed(0, 0, 1).generate_state(1)[0]


def test_run_trial_matches_direct_solve(tmp_path):
    cfg = small_config(tmp_path)
    row = run_trial(cfg, "game", 0, 0)
    channels = sample_trial_channels(cfg, 0, 0)
    out = solve_game(
        channels, cfg.delta, cfg.fading.noise_power, 10 ** ((0.0 - 30) / 10),
        cfg.solver, cfg.game,
    )
    assert row["U_relaxed"] == out.U_relaxed
    assert row["r"] == out.r_star
    assert row["active_modules"] == out.active_modules
    assert row["scheme"] == "game"


def test_run_experiment_csv_contract(tmp_path):
    cfg = small_config(tmp_path)
    rows = run_experiment(cfg)
    assert len(rows) == 3 * 2 * 2  # schemes x grid x trials
    path = Path(cfg.output_path)
    assert path.exists()
    parsed = read_rows(path)
    assert list(parsed[0].keys()) == list(CSV_COLUMNS)
    assert len(parsed) == len(rows)
    for rec in parsed:
        assert rec["scheme"] in ("game", "random_pricing", "direct_only")
        for col in CSV_COLUMNS[1:]:
            float(rec[col])  # every non-scheme cell parses as a number
        assert math.isfinite(float(rec["U_relaxed"]))
    # same channel seed for every scheme of a (p_max, trial) cell
    by_cell = {}
    for rec in parsed:
        by_cell.setdefault((rec["p_max_dbm"], rec["trial"]), set()).add(rec["seed"])
    assert all(len(seeds) == 1 for seeds in by_cell.values())


def test_run_experiment_deterministic_apart_from_wall_ms(tmp_path):
    cfg1 = small_config(tmp_path)
    rows1 = run_experiment(cfg1)
    cfg2 = validate_config(
        dict(SMALL_RAW, output_path=str(tmp_path / "out2.csv"))
    )
    rows2 = run_experiment(cfg2)
    for a, b in zip(rows1, rows2):
        for col in CSV_COLUMNS:
            if col == "wall_ms":
                continue
            assert a[col] == b[col], col


def test_failed_trial_keeps_flagged_row(tmp_path, monkeypatch, capsys):
    cfg = small_config(tmp_path)

    def boom(*args, **kwargs):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr("irsgame.experiment.solve_game", boom)
    row = run_trial(cfg, "game", 0, 0)
    assert math.isnan(row["U_relaxed"])
    assert math.isnan(row["r"])
    assert row["scheme"] == "game"
    assert "synthetic failure" in capsys.readouterr().err
    # nan rows survive the CSV round trip
    write_csv([row], str(tmp_path / "failed.csv"))
    rec = read_rows(tmp_path / "failed.csv")[0]
    assert math.isnan(float(rec["U_relaxed"]))


def test_summarize_handles_failures():
    nan_row = {c: float("nan") for c in CSV_COLUMNS}
    nan_row.update(scheme="game", p_max_dbm=0.0, trial=0, seed=1)
    text = summarize([nan_row])
    assert "all trials failed" in text


def test_cli_runs_with_config_and_overrides(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.yaml"
    cfg_path.write_text(yaml.safe_dump(SMALL_RAW))
    out_path = tmp_path / "cli.csv"
    code = cli_main(
        [
            "--config", str(cfg_path),
            "--output", str(out_path),
            "--trials", "1",
            "--p-max", "0",
            "--schemes", "direct_only",
            "--base-seed", "3",
        ]
    )
    assert code == 0
    parsed = read_rows(out_path)
    assert len(parsed) == 1  # overrides applied: 1 scheme x 1 power x 1 trial
    assert parsed[0]["scheme"] == "direct_only"
    assert "wrote 1 rows" in capsys.readouterr().out


def test_cli_empty_config_file_means_defaults(tmp_path, capsys):
    cfg_path = tmp_path / "empty.yaml"
    cfg_path.write_text("")
    out_path = tmp_path / "out.csv"
    # defaults everywhere except a tiny run matrix to stay fast
    code = cli_main(
        [
            "--config", str(cfg_path),
            "--output", str(out_path),
            "--trials", "1",
            "--p-max", "0",
            "--schemes", "direct_only",
        ]
    )
    assert code == 0
    assert read_rows(out_path)[0]["scheme"] == "direct_only"


def test_cli_rejects_bad_config(tmp_path, capsys):
    cfg_path = tmp_path / "bad.yaml"
    cfg_path.write_text(yaml.safe_dump({"nonsense": True}))
    assert cli_main(["--config", str(cfg_path)]) == 2
    assert "nonsense" in capsys.readouterr().err
    assert cli_main(["--config", str(tmp_path / "missing.yaml")]) == 2


def test_cli_verbose_prints_trial_lines(tmp_path, capsys):
    out_path = tmp_path / "v.csv"
    code = cli_main(
        [
            "--output", str(out_path),
            "--trials", "1",
            "--p-max", "0",
            "--schemes", "direct_only",
            "-v",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "direct_only" in out and "trial=0" in out
