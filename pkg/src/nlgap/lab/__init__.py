"""Experiment drivers, deterministic runner, configuration and CLI."""

from .config import ConfigError, ExperimentConfig, build_config, delta_rule_value
from .experiments import (ExperimentResult, TrialRecord, emit_results,
                          run_concentration_experiment, run_diameter_experiment,
                          run_errorbound_experiment, run_experiment,
                          run_fixed_function_experiment, run_fixed_h_experiment,
                          run_growing_d_experiment, run_typical_experiment)
from .runner import run_indexed, seed_label, trial_rng

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ExperimentResult",
    "TrialRecord",
    "build_config",
    "delta_rule_value",
    "emit_results",
    "run_concentration_experiment",
    "run_diameter_experiment",
    "run_errorbound_experiment",
    "run_experiment",
    "run_fixed_function_experiment",
    "run_fixed_h_experiment",
    "run_growing_d_experiment",
    "run_typical_experiment",
    "run_indexed",
    "seed_label",
    "trial_rng",
]
