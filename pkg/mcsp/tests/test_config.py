import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[2]))

import pytest

from mcsp.config import (
    DEFAULT_SETTINGS,
    ConfigError,
    coerce_setting,
    env_name,
    load_settings,
)
from mcsp.heuristics import HeuristicWeights


def test_defaults_build_tuned_params():
    settings = load_settings(environ={})
    assert settings.values == DEFAULT_SETTINGS
    params = settings.mmas_params()
    assert (params.alpha, params.beta, params.n_ants) == (2.0, 10.0, 100)
    assert params.weights == HeuristicWeights(1.0, 1.0)
    assert settings.bench_settings().repeats == 3
    assert settings.exact_limit == 14


def test_env_name():
    assert env_name("mmas.n_ants") == "MCSP_MMAS_N_ANTS"
    assert env_name("heuristic.b") == "MCSP_HEURISTIC_B"


def test_layers_apply_in_order(tmp_path):
    path = tmp_path / "mcsp.env"
    path.write_text("mmas.n_ants = 40\nmmas.alpha = 3\nheuristic.b = 0\n", encoding="utf-8")

    from_file = load_settings(path, environ={})
    assert from_file["mmas.n_ants"] == 40
    assert from_file["mmas.alpha"] == 3.0
    assert from_file.heuristic_weights() == HeuristicWeights(1.0, 0.0)

    env = {"MCSP_MMAS_N_ANTS": "25"}
    from_env = load_settings(path, environ=env)
    assert from_env["mmas.n_ants"] == 25
    assert from_env["mmas.alpha"] == 3.0

    overridden = load_settings(path, overrides={"mmas.n_ants": 5, "mmas.seed": None}, environ=env)
    assert overridden["mmas.n_ants"] == 5
    assert overridden["mmas.seed"] == 0


def test_unknown_keys_warn(tmp_path, capsys):
    path = tmp_path / "mcsp.env"
    path.write_text("mmas.gamma = 1\n", encoding="utf-8")
    settings = load_settings(path, environ={})
    assert "unknown setting 'mmas.gamma'" in capsys.readouterr().out
    assert "mmas.gamma" not in settings.values


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_settings(tmp_path / "missing.env", environ={})


@pytest.mark.parametrize(
    "key, raw, expected",
    [
        ("mmas.n_ants", " 12 ", 12),
        ("mmas.alpha", "1.5", 1.5),
        ("mmas.random_start", "yes", True),
        ("bench.include_timing", "off", False),
        ("mmas.max_iters", "", None),
        ("mmas.max_time_secs", None, None),
        ("mmas.n_ants", 7.0, 7),
    ],
)
def test_coerce_setting(key, raw, expected):
    assert coerce_setting(key, raw) == expected


@pytest.mark.parametrize(
    "key, raw",
    [
        ("mmas.n_ants", "many"),
        ("mmas.n_ants", 2.5),
        ("mmas.random_start", "maybe"),
        ("mmas.alpha", ""),
    ],
)
def test_coerce_setting_rejects_bad_values(key, raw):
    with pytest.raises(ConfigError):
        coerce_setting(key, raw)


def test_invalid_values_surface_from_params():
    settings = load_settings(overrides={"mmas.epsilon": 2.0}, environ={})
    with pytest.raises(ValueError):
        settings.mmas_params()
