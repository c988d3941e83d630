"""Experiment configuration: defaults, flat key=value files, flag overrides."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

__all__ = ["ConfigError", "ExperimentConfig", "parse_config_text", "build_config",
           "delta_rule_value", "EXPERIMENT_NAMES"]

EXPERIMENT_NAMES = ("typical", "growing-d", "fixed-function", "fixed-h",
                    "concentration", "errorbound", "diameter")


class ConfigError(ValueError):
    """Invalid experiment configuration or flag value."""


@dataclass
class ExperimentConfig:
    experiment: str = ""
    n: list[int] = field(default_factory=lambda: [1000])
    m: list[int] = field(default_factory=lambda: [10])
    d: list[int] = field(default_factory=lambda: [3])
    trials: int = 20
    master_seed: int = 0
    out: str | None = None
    workers: int = 1
    epsilon: float = 0.1
    alpha: float = 0.5
    beta: float = 0.25
    delta_rule: str = "theorem2"  # explicit | theorem2 | theorem3
    delta: float | None = None
    c: float = 1.0  # pair-qualification constant in the error-bound experiment
    eigen_c: float = 3.0  # surrogate C in lambda1 >= 1 - C/sqrt(d)
    gamma_envelope: float = 8.0  # empirical gamma envelope for balanced maps
    restarts: int = 2
    samples: int = 50
    move_budget: int = 10_000
    family: str = "balanced"
    family_param: float = 0.5
    host_path: str | None = None
    map_path: str | None = None
    si: int | None = None  # concentration set sizes; default n/2 each
    sj: int | None = None
    switchings: int = 1000
    lambda_grid: int = 10
    tail_slack: float = 1e-3

    def validate(self):
        if self.experiment not in EXPERIMENT_NAMES:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if not 0 < self.alpha < 1:
            raise ConfigError("alpha must be in (0, 1)")
        if not 0 < self.beta < 0.5:
            raise ConfigError("beta must be in (0, 1/2)")
        if not 0 < self.epsilon < 1:
            raise ConfigError("epsilon must be in (0, 1)")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.delta_rule not in ("explicit", "theorem2", "theorem3"):
            raise ConfigError(f"unknown delta rule {self.delta_rule!r}")
        if self.delta_rule == "explicit" and self.delta is None:
            raise ConfigError("delta_rule=explicit needs a delta value")
        if not all(x >= 2 for x in self.n) or not all(x >= 1 for x in self.m) \
                or not all(x >= 1 for x in self.d):
            raise ConfigError("n, m, d entries out of range")
        return self


def delta_rule_value(rule: str, delta, m: int, d: int, epsilon: float) -> float:
    """Balancedness threshold delta_m for the typical-function classes."""
    if rule == "explicit":
        return float(delta)
    if rule == "theorem2":
        return m ** (0.5 + 2.0 / d**2 + epsilon)
    if rule == "theorem3":
        return (2.0 * math.sqrt(2.0 * math.e) / d) * m ** (0.5 + 4.0 / (d + 1) + epsilon)
    raise ConfigError(f"unknown delta rule {rule!r}")


def parse_config_text(text: str) -> dict[str, str]:
    """Flat key=value lines; '#' starts a comment, blank lines ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


_LIST_FIELDS = {"n", "m", "d"}
_NONE_WORDS = {"", "none", "null"}


def _coerce(name: str, value, target_type):
    if isinstance(value, str):
        text = value.strip()
        if name in _LIST_FIELDS:
            try:
                return [int(x) for x in text.split(",") if x.strip()]
            except ValueError:
                raise ConfigError(f"{name}: expected comma-separated integers") from None
        if text.lower() in _NONE_WORDS and "None" in str(target_type):
            return None
        base = target_type.replace(" | None", "") if isinstance(target_type, str) else ""
        try:
            if base == "int":
                return int(text)
            if base == "float":
                return float(text)
        except ValueError:
            raise ConfigError(f"{name}: expected a {base}, got {text!r}") from None
        return text
    if name in _LIST_FIELDS and isinstance(value, (int, float)):
        return [int(value)]
    return value


def build_config(experiment: str, file_text: str | None = None,
                 overrides: dict | None = None) -> ExperimentConfig:
    """Defaults < config file < explicit overrides, then validate."""
    cfg = ExperimentConfig(experiment=experiment)
    types = {f.name: f.type for f in dataclasses.fields(ExperimentConfig)}
    merged: dict[str, object] = {}
    if file_text is not None:
        merged.update(parse_config_text(file_text))
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    for key, value in merged.items():
        if key == "experiment":
            continue
        if key not in types:
            raise ConfigError(f"unknown config key {key!r}")
        setattr(cfg, key, _coerce(key, value, types[key]))
    return cfg.validate()
