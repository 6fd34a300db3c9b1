import json

import pytest

from app.cli import build_config, main, parse_args
from app.core.domain.value_objects import InferenceScoring


def test_single_seed_run_writes_into_out(tmp_path):
    out = tmp_path / "run"
    code = main(
        ["run", "--scale", "small", "--episodes", "5", "--seeds", "1", "--seed", "2",
         "--tg-clock", "null", "--advice-log", "--out", str(out)]
    )
    assert code == 0
    for name in ("metrics.csv", "heatmap.csv", "manifest.json", "advice.csv"):
        assert (out / name).exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["scenario"]["master_seed"] == 2
    assert manifest["scenario"]["episodes"] == 5


def test_multi_seed_run_writes_seed_dirs(tmp_path):
    code = main(
        ["run", "--scale", "small", "--episodes", "3", "--seeds", "2", "--seed", "10",
         "--tg-clock", "null", "--workers", "1", "--out", str(tmp_path)]
    )
    assert code == 0
    assert (tmp_path / "seed_10" / "metrics.csv").exists()
    assert (tmp_path / "seed_11" / "metrics.csv").exists()
    assert len((tmp_path / "summary.csv").read_text().splitlines()) == 4


def test_replay_reproduces_metrics(tmp_path):
    main(["run", "--scale", "small", "--episodes", "4", "--seeds", "1", "--tg-clock", "null",
          "--epsilon", "none", "--out", str(tmp_path / "run")])
    code = main(["replay", "--manifest", str(tmp_path / "run" / "manifest.json")])

    assert code == 0
    original = (tmp_path / "run" / "metrics.csv").read_bytes()
    assert (tmp_path / "run" / "replay" / "metrics.csv").read_bytes() == original


def test_config_file_overrides(tmp_path):
    config = tmp_path / "params.toml"
    config.write_text("gamma = 0.5\nphi_wall = -1.0\n")
    out = tmp_path / "run"
    code = main(["run", "--scale", "small", "--episodes", "2", "--seeds", "1",
                 "--config", str(config), "--out", str(out)])
    assert code == 0
    scenario = json.loads((out / "manifest.json").read_text())["scenario"]
    assert scenario["params"]["gamma"] == 0.5
    assert scenario["grid"]["rewards"]["phi_wall"] == -1.0


def test_configuration_errors_exit_with_2(tmp_path, capsys):
    code = main(["run", "--scale", "small", "--attackers", "0.2", "--seeds", "1",
                 "--out", str(tmp_path)])
    assert code == 2
    assert "configuration error" in capsys.readouterr().err

    config = tmp_path / "bad.toml"
    config.write_text("unknown = 1\n")
    assert main(["run", "--scale", "small", "--seeds", "1", "--config", str(config),
                 "--out", str(tmp_path)]) == 2


def test_epsilon_none_and_defaults():
    args = parse_args(["run", "--epsilon", "none"])
    assert args.epsilon is None
    assert args.scale == "medium"
    assert args.variant == "brnes"
    assert parse_args(["run", "--epsilon", "0.1"]).epsilon == 0.1


def test_inference_switches_reach_the_scenario():
    args = parse_args(["run"])
    assert args.inference_queries == 50
    assert args.inference_bypass_ehc is False
    assert args.inference_scoring == "observed"

    cfg = build_config(parse_args(
        ["run", "--inference-queries", "7", "--inference-bypass-ehc", "--inference-scoring", "current"]
    ))
    assert cfg.options.inference_queries == 7
    assert cfg.options.inference_bypass_ehc is True
    assert cfg.options.inference_scoring is InferenceScoring.CURRENT

    with pytest.raises(SystemExit):
        parse_args(["run", "--inference-queries", "0"])
