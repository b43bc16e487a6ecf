"""Physical constants and temperature/frequency unit conversion.

All constants are the exact SI (2019 redefinition) values, so CODATA 2018
and later agree on them.
"""

from __future__ import annotations

import math

from .exceptions import UsageError

PLANCK = 6.62607015e-34           # J s
HBAR = PLANCK / (2.0 * math.pi)   # J s
BOLTZMANN = 1.380649e-23          # J / K
GHZ = 1.0e9

# Kelvin per GHz of the frequency nu_T = k_B T / h.
KELVIN_PER_GHZ = PLANCK * GHZ / BOLTZMANN

_TEMPERATURE_SCALE = {"K": 1.0, "mK": 1.0e-3, "GHz": KELVIN_PER_GHZ}
SUPPORTED_UNITS = ("K", "mK", "GHz", "natural")


def convert_units(value: float, from_unit: str, to_unit: str, reference_ghz: float | None = None) -> float:
    """Convert a temperature between kelvin, millikelvin, GHz and T/T0.

    ``GHz`` means the equivalent frequency ``nu_T = k_B T / h``. ``natural``
    means the ratio ``T / T0`` with ``T0 = h f0 / k_B``; it needs the qubit
    frequency ``f0 = omega0 / 2 pi`` in GHz as ``reference_ghz``.
    """
    for unit in (from_unit, to_unit):
        if unit not in SUPPORTED_UNITS:
            raise UsageError(f"unsupported unit {unit!r}; expected one of {SUPPORTED_UNITS}")
    if value == 0:
        return 0.0
    if from_unit == to_unit:
        return float(value)
    if "natural" in (from_unit, to_unit):
        if reference_ghz is None or not reference_ghz > 0:
            raise UsageError("conversion to or from 'natural' needs a positive reference_ghz")
        t0_kelvin = reference_ghz * KELVIN_PER_GHZ
    if from_unit == "natural":
        kelvin = value * t0_kelvin
    else:
        kelvin = value * _TEMPERATURE_SCALE[from_unit]
    if to_unit == "natural":
        return kelvin / t0_kelvin
    return kelvin / _TEMPERATURE_SCALE[to_unit]
