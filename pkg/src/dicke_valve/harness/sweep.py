"""Parameter sweeps over a scenario configuration."""

from __future__ import annotations

import itertools
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..estimator import solve_point
from ..exceptions import ConfigError, DickeValveError, ValidityWarning
from ..observables import detuned_two_qubit_current, fixed_subspace_current, thermodynamic_ratio
from .config import resolve, validate, with_override

BASE_COLUMNS = (
    "n_qubits", "engine", "q_hot", "q_cold", "q_parasitic", "q_parasitic_residual", "q_hot_natural",
    "mean_jz", "mean_j2", "mean_j2_normalized", "t_star", "t0_over_t_star",
    "q_independent", "q_independent_with_parasitic",
    "enhancement_vs_independent", "enhancement_vs_independent_with_parasitic",
    "q_fixed_subspace", "q_thermodynamic_limit", "residual", "energy_imbalance",
)
DETUNED_COLUMNS = ("q_detuned", "two_q_detuned")


@dataclass
class SweepResult:
    """Rows of a sweep in grid order; failed points carry a message in ``error``."""

    columns: tuple
    rows: list = field(default_factory=list)
    config: dict | None = None

    @property
    def n_errors(self) -> int:
        return sum(1 for r in self.rows if r.get("error"))

    def column(self, name: str) -> np.ndarray:
        return np.array([r.get(name, math.nan) for r in self.rows])


def axis_values(axis: dict) -> list:
    if "values" in axis:
        return list(axis["values"])
    start, stop, num = axis["start"], axis["stop"], axis["num"]
    if axis.get("spacing", "linear") == "log":
        return np.geomspace(start, stop, num).tolist()
    return np.linspace(start, stop, num).tolist()


def axis_column(axis: dict) -> str:
    return axis.get("column", axis["parameter"].replace(".", "_"))


def grid(raw: dict) -> list:
    """Cartesian product of all sweep axes, first axis slowest."""
    axes = raw.get("sweep", {}).get("axes", [])
    if not axes:
        return [()]
    return list(itertools.product(*(axis_values(a) for a in axes)))


def evaluate_point(raw: dict, engine: str | None = None) -> dict:
    """Solve one fully specified configuration and return its row (without axis columns)."""
    scenario = resolve(raw)
    sol = solve_point(scenario.n_qubits, scenario.hot, scenario.cold, scenario.parasitic,
                      scenario.units, engine or scenario.engine, scenario.init)
    r = sol.report
    units = scenario.units
    x_star = units.x(sol.t_star)
    energy = units.hbar * units.omega0
    row = {
        "n_qubits": scenario.n_qubits, "engine": sol.engine,
        "q_hot": r.q_hot, "q_cold": r.q_cold, "q_parasitic": r.q_parasitic,
        "q_parasitic_residual": r.q_parasitic_residual,
        "q_hot_natural": r.q_hot / (energy * scenario.hot.rate),
        "mean_jz": r.mean_jz, "mean_j2": r.mean_j2, "mean_j2_normalized": r.mean_j2_normalized,
        "t_star": sol.t_star, "t0_over_t_star": x_star,
        "q_independent": r.independent, "q_independent_with_parasitic": r.independent_with_parasitic,
        "enhancement_vs_independent": r.enhancement_vs_independent,
        "enhancement_vs_independent_with_parasitic": r.enhancement_vs_independent_with_parasitic,
        "q_fixed_subspace": fixed_subspace_current(scenario.n_qubits / 2, scenario.hot, scenario.cold, units),
        "q_thermodynamic_limit": (thermodynamic_ratio(sol.t_star, units) * r.independent
                                  if sol.t_star > 0 else r.independent),
        "residual": sol.distribution.residual, "energy_imbalance": r.energy_imbalance,
    }
    if scenario.detuned is not None:
        omega1 = units.omega0
        omega2 = omega1 * scenario.detuned["omega2_over_omega1"]
        with warnings.catch_warnings():
            # the preset detuning is only a few linewidths; the value is still reported
            warnings.simplefilter("ignore", ValidityWarning)
            q_det = detuned_two_qubit_current(omega1, omega2, scenario.hot.rate, scenario.detuned["q_factor"],
                                              scenario.hot, scenario.cold, scenario.parasitic, units)
        row["q_detuned"] = q_det
        row["two_q_detuned"] = 2.0 * q_det
    return row


def _run_one(args) -> dict:
    raw, engine = args
    try:
        row = evaluate_point(raw, engine)
        row["error"] = ""
    except (DickeValveError, ArithmeticError, np.linalg.LinAlgError) as exc:
        row = {"error": f"{type(exc).__name__}: {exc}"}
    return row


def columns_for(raw: dict) -> tuple:
    axes = tuple(axis_column(a) for a in raw.get("sweep", {}).get("axes", []))
    extra = DETUNED_COLUMNS if "detuned" in raw else ()
    return axes + BASE_COLUMNS + extra + ("error",)


def run_scenario(raw: dict, engine: str | None = None, jobs: int = 1) -> SweepResult:
    """Evaluate every grid point of ``raw``.

    Parameters
    ----------
    raw : dict
        Configuration as loaded by :func:`load_config`.
    engine : str, optional
        Overrides the configured engine.
    jobs : int
        Worker processes; rows are returned in grid order regardless.
    """
    validate(raw)
    if jobs < 1:
        raise ConfigError("jobs must be >= 1", "--jobs")
    axes = raw.get("sweep", {}).get("axes", [])
    points = grid(raw)
    tasks = []
    for values in points:
        cfg = raw
        for axis, value in zip(axes, values):
            cfg = with_override(cfg, axis["parameter"], value)
        tasks.append((cfg, engine))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_run_one(t) for t in tasks]
    rows = []
    for values, res in zip(points, results):
        row = {axis_column(a): v for a, v in zip(axes, values)}
        row.update(res)
        rows.append(row)
    return SweepResult(columns_for(raw), rows, raw)
