"""Configuration, sweeps, presets, CSV output and the command-line interface."""

from .config import Scenario, config_hash, load_config, resolve, validate
from .csvio import emit_csv, read_csv, render_csv
from .presets import PRESETS, preset_config
from .sweep import SweepResult, evaluate_point, run_scenario

__all__ = ["PRESETS", "Scenario", "SweepResult", "config_hash", "emit_csv", "evaluate_point",
           "load_config", "preset_config", "read_csv", "render_csv", "resolve", "run_scenario", "validate"]
