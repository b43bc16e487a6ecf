"""Map transmon + RLC circuit parameters onto master-equation parameters.

SI throughout: energies in joules, resistances and impedances in ohms,
angular frequencies in rad/s. The coupling ``G_i = 2 (C_c/C_T) sqrt(2 / (hbar Z_T))``
then makes ``gamma_i = 4 hbar omega0 R_i G_i^2 / (1 + Q_i^2 (...)^2)`` a rate
in 1/s. Only dimensionless ratios of these rates are checked against
published numbers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .exceptions import DomainError, ValidityWarning
from .units import HBAR

TRANSMON_RATIO_THRESHOLD = 20.0


@dataclass(frozen=True)
class CircuitParams:
    """Physical parameters of the transmons and of the two RLC baths.

    Per-bath quantities are dicts keyed by ``"hot"`` and ``"cold"``.
    """

    josephson_energy: float
    charging_energy: float
    resistance: dict
    resonator_frequency: float
    quality_factor: dict
    coupling_capacitance_ratio: dict
    transmon_impedance: float

    def __post_init__(self):
        scalars = {
            "josephson_energy": self.josephson_energy,
            "charging_energy": self.charging_energy,
            "resonator_frequency": self.resonator_frequency,
            "transmon_impedance": self.transmon_impedance,
        }
        for name, value in scalars.items():
            if not value > 0:
                raise DomainError(f"{name} must be positive, got {value}")
        for name in ("resistance", "quality_factor", "coupling_capacitance_ratio"):
            table = getattr(self, name)
            for bath in ("hot", "cold"):
                if bath not in table:
                    raise DomainError(f"{name} has no entry for the {bath} bath")
                if not table[bath] > 0:
                    raise DomainError(f"{name}[{bath!r}] must be positive, got {table[bath]}")
        ratio = self.josephson_energy / self.charging_energy
        if ratio < TRANSMON_RATIO_THRESHOLD:
            warnings.warn(f"E_J/E_C = {ratio:.3g} is below the transmon threshold "
                          f"{TRANSMON_RATIO_THRESHOLD:g}", ValidityWarning, stacklevel=3)

    @property
    def qubit_frequency(self) -> float:
        return transmon_frequency(self.josephson_energy, self.charging_energy, warn=False)

    def coupling(self, bath: str) -> float:
        return coupling_strength(self.coupling_capacitance_ratio[bath], self.transmon_impedance)


def transmon_frequency(josephson_energy: float, charging_energy: float,
                       threshold: float = TRANSMON_RATIO_THRESHOLD, warn: bool = True) -> float:
    """Qubit angular frequency ``(sqrt(8 E_J E_C) - E_C) / hbar``.

    A :class:`ValidityWarning` is emitted when ``E_J / E_C`` is below
    ``threshold``; the value is still returned.
    """
    if not (josephson_energy > 0 and charging_energy > 0):
        raise DomainError("E_J and E_C must be positive")
    if warn and josephson_energy / charging_energy < threshold:
        warnings.warn(f"E_J/E_C = {josephson_energy / charging_energy:.3g} is below {threshold:g}; "
                      "the transmon expansion is unreliable", ValidityWarning, stacklevel=2)
    return (math.sqrt(8.0 * josephson_energy * charging_energy) - charging_energy) / HBAR


def josephson_energy_for_frequency(omega: float, charging_energy: float) -> float:
    """Josephson energy that puts the transmon at angular frequency ``omega``."""
    if not (omega > 0 and charging_energy > 0):
        raise DomainError("omega and E_C must be positive")
    return (HBAR * omega + charging_energy) ** 2 / (8.0 * charging_energy)


def coupling_strength(capacitance_ratio: float, transmon_impedance: float) -> float:
    """Qubit-voltage coupling ``G = 2 (C_c / C_T) sqrt(2 / (hbar Z_T))``."""
    return 2.0 * capacitance_ratio * math.sqrt(2.0 / (HBAR * transmon_impedance))


def lorentzian_suppression(omega: float, omega_lc: float, q: float) -> float:
    """``1 / (1 + Q^2 (omega/omega_LC - omega_LC/omega)^2)``."""
    if not (omega > 0 and omega_lc > 0):
        raise DomainError("omega and omega_lc must be positive")
    detuning = omega / omega_lc - omega_lc / omega
    return 1.0 / (1.0 + q * q * detuning * detuning)


def lorentzian_impedance(omega: float, resistance: float, omega_lc: float, q: float) -> float:
    """Real part of the parallel RLC impedance seen by the qubits."""
    return resistance * lorentzian_suppression(omega, omega_lc, q)


def microscopic_rate(omega0: float, circuit: CircuitParams, bath: str) -> float:
    """Dissipation rate ``gamma_i`` of bath ``"hot"`` or ``"cold"`` at qubit frequency ``omega0``."""
    if bath not in ("hot", "cold"):
        raise DomainError(f"bath must be 'hot' or 'cold', got {bath!r}")
    g = circuit.coupling(bath)
    on_resonance = 4.0 * HBAR * omega0 * circuit.resistance[bath] * g * g
    return on_resonance * lorentzian_suppression(omega0, circuit.resonator_frequency,
                                                 circuit.quality_factor[bath])


def detuned_rate(gamma_on_resonance: float, omega: float, omega_lc: float, q: float) -> float:
    """Rate of a qubit detuned to ``omega`` given its on-resonance rate."""
    return gamma_on_resonance * lorentzian_suppression(omega, omega_lc, q)
