"""Built-in scenario configurations: the figure sweeps and the two-qubit experimental runs.

Grid densities are not published; continuous axes use 50 points.
"""

from __future__ import annotations

import copy

from ..exceptions import ConfigError

GRID_POINTS = 50

# experimental parameters: frequencies are nu_T = k_B T / h; T_c = 2.0 GHz (96 mK), T_h = 8.0 GHz (384 mK).
TABLE1 = {
    "units": "si",
    "qubit_frequency_ghz": 4.0,
    "rates_are_angular": False,
    "baths": {
        "hot": {"nu_ghz": 8.0, "rate_ghz": 1.0},
        "cold": {"nu_ghz": 2.0, "rate_ghz": 1.0},
        "parasitic": {"temperature_mk": 50.0, "rate_ghz": 0.01},
    },
}

_FIG1_BATHS = {"hot": {"t0_over_t": 1.0, "rate": 1.0}, "cold": {"t0_over_t": 3.0, "rate": 1.0}}


def _fig3(t0_over_th: float, name: str) -> dict:
    return {
        "name": name,
        "n_qubits": 1,
        "baths": {"hot": {"t0_over_t": t0_over_th, "rate": 1.0},
                  "cold": {"t0_over_t": 3.0, "rate": 1.0},
                  "parasitic": {"t0_over_t": 1.0, "rate": 1e-3}},
        "sweep": {"axes": [
            {"parameter": "parasitic.t0_over_t", "column": "t0_over_tp",
             "start": 0.1, "stop": 10.0, "num": GRID_POINTS, "spacing": "log"},
            {"parameter": "n_qubits", "values": list(range(1, 11))},
        ]},
    }


PRESETS = {
    "fig1a": {
        "name": "fig1a",
        "jbar": 0.5,
        "engine": "analytic",
        "baths": _FIG1_BATHS,
        "sweep": {"axes": [
            {"parameter": "jbar", "values": [0.5, 1, 2, 4, 8]},
            {"parameter": "hot.t0_over_t", "column": "t0_over_th",
             "start": 0.05, "stop": 3.0, "num": GRID_POINTS, "spacing": "log"},
        ]},
    },
    "fig1b": {
        "name": "fig1b",
        "jbar": 0.5,
        "engine": "analytic",
        "baths": _FIG1_BATHS,
        "sweep": {"axes": [
            {"parameter": "hot.t0_over_t", "column": "t0_over_th", "values": [3.0, 1.0, 0.3, 0.1]},
            {"parameter": "jbar", "values": [k / 2 for k in range(1, 17)]},
        ]},
    },
    "fig3a": _fig3(1.0, "fig3a"),
    "fig3c": _fig3(1.0 / 3.0, "fig3c"),
    "fig2a": {
        "name": "fig2a",
        **copy.deepcopy(TABLE1),
        "n_qubits": 1,
        "sweep": {"axes": [
            {"parameter": "parasitic.temperature_mk", "column": "tp_mk",
             "values": [50.0, 100.0, 200.0, 300.0, 400.0, 500.0]},
            {"parameter": "n_qubits", "values": list(range(1, 11))},
        ]},
    },
    "fig2b": {
        "name": "fig2b",
        **copy.deepcopy(TABLE1),
        "n_qubits": 2,
        "detuned": {"omega2_over_omega1": 0.5, "q_factor": 20.0},
        "sweep": {"axes": [
            {"parameter": "parasitic.temperature_mk", "column": "tp_mk",
             "start": 50.0, "stop": 500.0, "num": GRID_POINTS, "spacing": "linear"},
        ]},
    },
    "table1-n2": {
        "name": "table1-n2",
        **copy.deepcopy(TABLE1),
        "n_qubits": 2,
        "detuned": {"omega2_over_omega1": 0.5, "q_factor": 20.0},
        "sweep": {"axes": [
            {"parameter": "rates_are_angular", "values": [False, True]},
            {"parameter": "parasitic.temperature_mk", "column": "tp_mk",
             "start": 50.0, "stop": 500.0, "num": GRID_POINTS, "spacing": "linear"},
        ]},
    },
}


def preset_config(name: str) -> dict:
    """Deep copy of a preset configuration."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}", "preset")
    return copy.deepcopy(PRESETS[name])
