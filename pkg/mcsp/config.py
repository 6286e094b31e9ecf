"""Layered settings: defaults < config file < ``MCSP_*`` environment < overrides.

Config files are flat ``key = value`` text read with ``dotenv_values``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from dotenv import dotenv_values

from mcsp.bench.runner import BenchSettings
from mcsp.exact import DEFAULT_EXACT_LIMIT
from mcsp.heuristics import DEFAULT_HEURISTIC_WEIGHTS, HeuristicWeights
from mcsp.mmas import DEFAULT_MMAS_PARAMS, MmasParams


ENV_PREFIX = "MCSP_"

# key -> (type, optional)
SETTING_TYPES: Dict[str, tuple] = {
    "heuristic.a": (float, False),
    "heuristic.b": (float, False),
    "mmas.alpha": (float, False),
    "mmas.beta": (float, False),
    "mmas.epsilon": (float, False),
    "mmas.n_ants": (int, False),
    "mmas.p_best": (float, False),
    "mmas.init_pheromone": (float, False),
    "mmas.max_time_secs": (float, True),
    "mmas.max_stale_iters": (int, False),
    "mmas.max_iters": (int, True),
    "mmas.n_runs": (int, False),
    "mmas.seed": (int, False),
    "mmas.avg_choices": (float, True),
    "mmas.random_start": (bool, False),
    "mmas.workers": (int, False),
    "mmas.target_cost": (int, True),
    "exact.limit": (int, False),
    "bench.repeats": (int, False),
    "bench.significance": (float, False),
    "bench.workers": (int, False),
    "bench.include_timing": (bool, False),
}

DEFAULT_SETTINGS: Dict[str, Any] = {
    "heuristic.a": DEFAULT_HEURISTIC_WEIGHTS["a"],
    "heuristic.b": DEFAULT_HEURISTIC_WEIGHTS["b"],
    "mmas.alpha": DEFAULT_MMAS_PARAMS["alpha"],
    "mmas.beta": DEFAULT_MMAS_PARAMS["beta"],
    "mmas.epsilon": DEFAULT_MMAS_PARAMS["epsilon"],
    "mmas.n_ants": int(DEFAULT_MMAS_PARAMS["n_ants"]),
    "mmas.p_best": DEFAULT_MMAS_PARAMS["p_best"],
    "mmas.init_pheromone": DEFAULT_MMAS_PARAMS["init_pheromone"],
    "mmas.max_time_secs": DEFAULT_MMAS_PARAMS["max_time_secs"],
    "mmas.max_stale_iters": int(DEFAULT_MMAS_PARAMS["max_stale_iterations"]),
    "mmas.max_iters": None,
    "mmas.n_runs": int(DEFAULT_MMAS_PARAMS["n_runs"]),
    "mmas.seed": int(DEFAULT_MMAS_PARAMS["seed"]),
    "mmas.avg_choices": None,
    "mmas.random_start": False,
    "mmas.workers": 1,
    "mmas.target_cost": None,
    "exact.limit": DEFAULT_EXACT_LIMIT,
    "bench.repeats": 3,
    "bench.significance": 0.05,
    "bench.workers": 1,
    "bench.include_timing": True,
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class ConfigError(ValueError):
    """Raised when a known setting carries a value of the wrong type."""


def env_name(key: str) -> str:
    return ENV_PREFIX + key.upper().replace(".", "_")


def coerce_setting(key: str, value: Any) -> Any:
    kind, optional = SETTING_TYPES[key]
    if value is None or (isinstance(value, str) and not value.strip()):
        if optional:
            return None
        raise ConfigError(f"{key}: a value is required")

    if isinstance(value, str):
        text = value.strip()
        if kind is bool:
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ConfigError(f"{key}: expected a boolean, got '{value}'")
        try:
            return kind(text)
        except ValueError as exc:
            raise ConfigError(f"{key}: expected {kind.__name__}, got '{value}'") from exc

    if kind is bool:
        return bool(value)
    if kind is int and isinstance(value, float) and not value.is_integer():
        raise ConfigError(f"{key}: expected int, got {value}")
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: expected {kind.__name__}, got {value!r}") from exc


@dataclass
class Settings:
    values: Dict[str, Any] = field(default_factory=lambda: dict(DEFAULT_SETTINGS))

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def heuristic_weights(self) -> HeuristicWeights:
        return HeuristicWeights(a=self["heuristic.a"], b=self["heuristic.b"])

    def mmas_params(self) -> MmasParams:
        return MmasParams(
            alpha=self["mmas.alpha"],
            beta=self["mmas.beta"],
            epsilon=self["mmas.epsilon"],
            n_ants=self["mmas.n_ants"],
            p_best=self["mmas.p_best"],
            init_pheromone=self["mmas.init_pheromone"],
            max_time_secs=self["mmas.max_time_secs"],
            max_stale_iterations=self["mmas.max_stale_iters"],
            n_runs=self["mmas.n_runs"],
            weights=self.heuristic_weights(),
            seed=self["mmas.seed"],
            max_iterations=self["mmas.max_iters"],
            target_cost=self["mmas.target_cost"],
            avg_choices=self["mmas.avg_choices"],
            random_start=self["mmas.random_start"],
            workers=self["mmas.workers"],
        )

    def bench_settings(self) -> BenchSettings:
        return BenchSettings(
            repeats=self["bench.repeats"],
            significance=self["bench.significance"],
            workers=self["bench.workers"],
            include_timing=self["bench.include_timing"],
        )

    @property
    def exact_limit(self) -> int:
        return self["exact.limit"]


def _merge(target: Dict[str, Any], layer: Mapping[str, Any], origin: str) -> None:
    for key, value in layer.items():
        if key not in SETTING_TYPES:
            print(f"⚠️ WARNING: unknown setting '{key}' in {origin}, ignoring")
            continue
        target[key] = coerce_setting(key, value)


def load_settings(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> Settings:
    values: Dict[str, Any] = dict(DEFAULT_SETTINGS)

    if path is not None:
        source = Path(path)
        if not source.exists():
            raise ConfigError(f"config file {source} does not exist")
        _merge(values, dotenv_values(source), str(source))

    env = os.environ if environ is None else environ
    env_layer = {key: env[env_name(key)] for key in SETTING_TYPES if env_name(key) in env}
    _merge(values, env_layer, "environment")

    if overrides:
        _merge(values, {key: value for key, value in overrides.items() if value is not None}, "overrides")

    return Settings(values=values)


__all__ = [
    "ENV_PREFIX",
    "SETTING_TYPES",
    "DEFAULT_SETTINGS",
    "ConfigError",
    "env_name",
    "coerce_setting",
    "Settings",
    "load_settings",
]
