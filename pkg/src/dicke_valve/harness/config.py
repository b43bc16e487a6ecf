"""Scenario configuration: JSON layout, schema validation and resolution into baths.

A configuration is a JSON object. Bath temperatures may be given in kelvin,
millikelvin, as the equivalent frequency ``nu_T = k_B T / h`` in GHz, or as
ratios to ``T0 = hbar omega0 / k_B``. Rates may be given in GHz (ordinary
frequency unless ``rates_are_angular``) or directly in run units.
"""

from __future__ import annotations

import copy
import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import jsonschema

from ..circuitmap import CircuitParams, microscopic_rate
from ..engines import InitialBlockWeights
from ..exceptions import ConfigError, DickeValveError
from ..thermo import BathSpec, NaturalUnits
from ..units import GHZ, KELVIN_PER_GHZ, PLANCK

TEMPERATURE_KEYS = ("temperature_k", "temperature_mk", "nu_ghz", "t0_over_t", "t_over_t0")
RATE_KEYS = ("rate_ghz", "rate")
TOP_LEVEL_SWEEPABLE = ("n_qubits", "jbar", "qubit_frequency_ghz", "rates_are_angular")

_NUMBER = {"type": "number"}
_PER_BATH = {"type": "object", "properties": {"hot": _NUMBER, "cold": _NUMBER},
             "required": ["hot", "cold"], "additionalProperties": False}

_BATH_SCHEMA = {
    "type": "object",
    "properties": {**{k: {"type": "number", "minimum": 0} for k in TEMPERATURE_KEYS},
                   **{k: {"type": "number", "minimum": 0} for k in RATE_KEYS}},
    "additionalProperties": False,
}

_AXIS_SCHEMA = {
    "type": "object",
    "properties": {
        "parameter": {"type": "string"},
        "column": {"type": "string"},
        "start": _NUMBER,
        "stop": _NUMBER,
        "num": {"type": "integer", "minimum": 1},
        "spacing": {"enum": ["linear", "log"]},
        "values": {"type": "array", "minItems": 0},
    },
    "required": ["parameter"],
    "additionalProperties": False,
    "oneOf": [{"required": ["values"]}, {"required": ["start", "stop", "num"]}],
}

SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "n_qubits": {"type": "integer", "minimum": 1},
        "jbar": {"type": "number", "exclusiveMinimum": 0},
        "units": {"enum": ["natural", "si"]},
        "qubit_frequency_ghz": {"type": "number", "exclusiveMinimum": 0},
        "rates_are_angular": {"type": "boolean"},
        "engine": {"enum": ["auto", "analytic", "rate", "oracle"]},
        "baths": {
            "type": "object",
            "properties": {"hot": _BATH_SCHEMA, "cold": _BATH_SCHEMA, "parasitic": _BATH_SCHEMA},
            "required": ["hot", "cold"],
            "additionalProperties": False,
        },
        "initial_block_weights": {"type": "object", "additionalProperties": {"type": "number", "minimum": 0}},
        "detuned": {
            "type": "object",
            "properties": {"omega2_over_omega1": {"type": "number", "exclusiveMinimum": 0},
                           "q_factor": {"type": "number", "exclusiveMinimum": 0}},
            "required": ["omega2_over_omega1", "q_factor"],
            "additionalProperties": False,
        },
        "circuit": {
            "type": "object",
            "properties": {
                "josephson_energy_ghz": {"type": "number", "exclusiveMinimum": 0},
                "charging_energy_ghz": {"type": "number", "exclusiveMinimum": 0},
                "resonator_frequency_ghz": {"type": "number", "exclusiveMinimum": 0},
                "transmon_impedance_ohm": {"type": "number", "exclusiveMinimum": 0},
                "resistance_ohm": _PER_BATH,
                "quality_factor": _PER_BATH,
                "coupling_capacitance_ratio": _PER_BATH,
            },
            "required": ["josephson_energy_ghz", "charging_energy_ghz", "resonator_frequency_ghz",
                         "transmon_impedance_ohm", "resistance_ohm", "quality_factor",
                         "coupling_capacitance_ratio"],
            "additionalProperties": False,
        },
        "sweep": {
            "type": "object",
            "properties": {"axes": {"type": "array", "items": _AXIS_SCHEMA}},
            "required": ["axes"],
            "additionalProperties": False,
        },
        "output": {"type": "object", "properties": {"csv": {"type": "string"}}, "additionalProperties": False},
    },
    "required": ["baths"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class Scenario:
    """A configuration resolved into engine inputs for one parameter point."""

    n_qubits: int
    hot: BathSpec
    cold: BathSpec
    parasitic: BathSpec | None
    units: NaturalUnits
    engine: str
    init: InitialBlockWeights | None
    detuned: dict | None
    qubit_frequency_ghz: float | None


def _path(parts) -> str:
    return ".".join(str(p) for p in parts) or "<root>"


def validate(raw: dict) -> None:
    """Schema check plus cross-field rules; raises :class:`ConfigError` with a field path."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ConfigError(err.message, _path(err.absolute_path))
    if "n_qubits" not in raw and "jbar" not in raw:
        raise ConfigError("one of n_qubits or jbar is required", "n_qubits")
    for role, bath in raw["baths"].items():
        temps = [k for k in TEMPERATURE_KEYS if k in bath]
        if len(temps) != 1:
            raise ConfigError(f"exactly one of {TEMPERATURE_KEYS} is required, got {temps}",
                              f"baths.{role}")
        rates = [k for k in RATE_KEYS if k in bath]
        if len(rates) > 1 or (not rates and not (role != "parasitic" and "circuit" in raw)):
            raise ConfigError(f"exactly one of {RATE_KEYS} is required, got {rates}", f"baths.{role}")
    if raw.get("units", "natural") == "si" and "qubit_frequency_ghz" not in raw and "circuit" not in raw:
        raise ConfigError("SI runs need qubit_frequency_ghz or a circuit block", "qubit_frequency_ghz")
    for i, axis in enumerate(raw.get("sweep", {}).get("axes", [])):
        check_parameter(raw, axis["parameter"], f"sweep.axes.{i}.parameter")
        if axis.get("spacing") == "log" and not (axis.get("start", 1) > 0 and axis.get("stop", 1) > 0):
            raise ConfigError("log spacing needs positive start and stop", f"sweep.axes.{i}")


def check_parameter(raw: dict, name: str, where: str) -> None:
    """Reject sweep parameters that do not name a configurable quantity."""
    if name in TOP_LEVEL_SWEEPABLE:
        return
    parts = name.split(".")
    if len(parts) == 2 and parts[0] in ("hot", "cold", "parasitic"):
        if parts[0] not in raw["baths"] and parts[0] != "parasitic":
            raise ConfigError(f"bath {parts[0]!r} is not configured", where)
        if parts[1] in TEMPERATURE_KEYS + RATE_KEYS:
            return
    raise ConfigError(f"unknown sweep parameter {name!r}", where)


def with_override(raw: dict, name: str, value) -> dict:
    """Copy of ``raw`` with one parameter replaced (bath unit keys are swapped, not added)."""
    out = copy.deepcopy(raw)
    if name in TOP_LEVEL_SWEEPABLE:
        if name == "jbar":
            out.pop("n_qubits", None)
        if name == "n_qubits":
            out.pop("jbar", None)
            value = int(round(value))
        if name == "rates_are_angular":
            value = bool(value)
        out[name] = value
        return out
    role, key = name.split(".")
    bath = out["baths"].setdefault(role, {})
    group = TEMPERATURE_KEYS if key in TEMPERATURE_KEYS else RATE_KEYS
    for k in group:
        bath.pop(k, None)
    bath[key] = value
    return out


def load_config(path) -> dict:
    """Read and validate a JSON configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}", str(path)) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})", "<root>") from exc
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object", "<root>")
    validate(raw)
    return raw


def config_hash(raw: dict) -> str:
    """sha256 of the canonical JSON form of ``raw``."""
    return hashlib.sha256(json.dumps(raw, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _parse_j(key: str) -> Fraction:
    try:
        return Fraction(key)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"block key {key!r} is not a number", f"initial_block_weights.{key}") from exc


def _n_qubits(raw: dict) -> int:
    if "n_qubits" in raw:
        return int(raw["n_qubits"])
    twice = 2 * Fraction(raw["jbar"]).limit_denominator(1000)
    if twice.denominator != 1:
        raise ConfigError(f"jbar={raw['jbar']} is not a half-integer", "jbar")
    return int(twice)


def _circuit(raw: dict) -> CircuitParams | None:
    c = raw.get("circuit")
    if c is None:
        return None
    energy = PLANCK * GHZ
    return CircuitParams(
        josephson_energy=c["josephson_energy_ghz"] * energy,
        charging_energy=c["charging_energy_ghz"] * energy,
        resistance=dict(c["resistance_ohm"]),
        resonator_frequency=2.0 * math.pi * c["resonator_frequency_ghz"] * GHZ,
        quality_factor=dict(c["quality_factor"]),
        coupling_capacitance_ratio=dict(c["coupling_capacitance_ratio"]),
        transmon_impedance=c["transmon_impedance_ohm"],
    )


def resolve(raw: dict) -> Scenario:
    """Turn a validated configuration into baths, units and engine inputs."""
    si = raw.get("units", "natural") == "si"
    circuit = _circuit(raw)
    f0 = raw.get("qubit_frequency_ghz")
    if circuit is not None and f0 is None:
        f0 = circuit.qubit_frequency / (2.0 * math.pi * GHZ)
    units = NaturalUnits.si_from_ghz(f0) if si else NaturalUnits.dimensionless()
    t0_kelvin = f0 * KELVIN_PER_GHZ if f0 is not None else None
    rate_factor = 1.0 if raw.get("rates_are_angular", False) else 2.0 * math.pi

    def temperature(bath: dict, role: str) -> float:
        key = next(k for k in TEMPERATURE_KEYS if k in bath)
        value = float(bath[key])
        if key in ("t0_over_t", "t_over_t0"):
            ratio = (math.inf if value == 0 else 1.0 / value) if key == "t0_over_t" else value
            if not si:
                return ratio
            if t0_kelvin is None:
                raise ConfigError("ratios to T0 need qubit_frequency_ghz", f"baths.{role}.{key}")
            return ratio * t0_kelvin
        kelvin = {"temperature_k": 1.0, "temperature_mk": 1e-3, "nu_ghz": KELVIN_PER_GHZ}[key] * value
        if si:
            return kelvin
        if t0_kelvin is None:
            raise ConfigError("absolute temperatures in natural units need qubit_frequency_ghz",
                              f"baths.{role}.{key}")
        return kelvin / t0_kelvin

    def rate(bath: dict, role: str) -> float:
        if "rate" in bath:
            return float(bath["rate"])
        if "rate_ghz" in bath:
            per_second = float(bath["rate_ghz"]) * GHZ * rate_factor
            if si:
                return per_second
            if f0 is None:
                raise ConfigError("rates in GHz with natural units need qubit_frequency_ghz",
                                  f"baths.{role}.rate_ghz")
            return per_second / (2.0 * math.pi * f0 * GHZ)
        # only reachable for hot/cold with a circuit block
        omega0 = 2.0 * math.pi * f0 * GHZ
        per_second = microscopic_rate(omega0, circuit, role)
        return per_second if si else per_second / omega0

    baths = {}
    for role in ("hot", "cold", "parasitic"):
        entry = raw["baths"].get(role)
        if entry is None:
            continue
        try:
            t = temperature(entry, role)
            if math.isinf(t):
                raise ConfigError("bath temperature is infinite", f"baths.{role}")
            baths[role] = BathSpec(t, rate(entry, role), role)
        except ConfigError:
            raise
        except DickeValveError as exc:
            raise ConfigError(str(exc), f"baths.{role}") from exc
    if baths["hot"].temperature < baths["cold"].temperature:
        raise ConfigError("the hot bath must not be colder than the cold bath", "baths.hot")

    n_qubits = _n_qubits(raw)
    init = None
    if "initial_block_weights" in raw:
        try:
            init = InitialBlockWeights.from_mapping({_parse_j(k): v for k, v in raw["initial_block_weights"].items()})
            init.check_support(n_qubits)
        except DickeValveError as exc:
            raise ConfigError(str(exc), "initial_block_weights") from exc
    return Scenario(n_qubits, baths["hot"], baths["cold"], baths.get("parasitic"), units,
                    raw.get("engine", "auto"), init, raw.get("detuned"), f0)
