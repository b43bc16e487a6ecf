"""Bath thermodynamics: occupations, effective temperatures, thermal blocks.

Every formula here depends on temperature only through the ratio
``x = hbar * omega / (k_B * T)``. :class:`NaturalUnits` carries the constants
that turn temperatures into such ratios, so the same code serves dimensionless
runs (``hbar = k_B = omega0 = 1``) and SI runs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, LimitingCaseWarning
from .spinspace import to_twice
from .units import BOLTZMANN, GHZ, HBAR

ROLES = ("hot", "cold", "parasitic")

# Above this exponent exp() is evaluated in the log domain.
_EXP_LIMIT = 700.0


@dataclass(frozen=True)
class NaturalUnits:
    """Unit system anchored at the qubit splitting ``omega0``.

    Parameters
    ----------
    omega0 : float
        Qubit angular frequency.
    hbar, k_b : float
        Values of the reduced Planck and Boltzmann constants in the chosen
        system. Both are 1 for dimensionless runs.
    """

    omega0: float = 1.0
    hbar: float = 1.0
    k_b: float = 1.0

    def __post_init__(self):
        if not (self.omega0 > 0 and self.hbar > 0 and self.k_b > 0):
            raise DomainError("omega0, hbar and k_b must all be positive")

    @classmethod
    def dimensionless(cls) -> "NaturalUnits":
        return cls(1.0, 1.0, 1.0)

    @classmethod
    def si(cls, omega0: float) -> "NaturalUnits":
        """SI units; ``omega0`` in rad/s."""
        return cls(float(omega0), HBAR, BOLTZMANN)

    @classmethod
    def si_from_ghz(cls, frequency_ghz: float) -> "NaturalUnits":
        """SI units from the ordinary qubit frequency ``omega0 / 2 pi`` in GHz."""
        return cls.si(2.0 * math.pi * frequency_ghz * GHZ)

    @property
    def is_dimensionless(self) -> bool:
        return self.omega0 == 1.0 and self.hbar == 1.0 and self.k_b == 1.0

    @property
    def reference_temperature(self) -> float:
        """``T0 = hbar * omega0 / k_B``."""
        return self.hbar * self.omega0 / self.k_b

    @property
    def hbar_over_kb(self) -> float:
        return self.hbar / self.k_b

    def x(self, temperature: float, omega: float | None = None) -> float:
        """Dimensionless ratio ``hbar * omega / (k_B * T)`` (``omega`` defaults to ``omega0``)."""
        omega = self.omega0 if omega is None else omega
        return _ratio(self.hbar_over_kb * omega, temperature)


@dataclass(frozen=True)
class BathSpec:
    """A thermal bath coupled to the qubits.

    Parameters
    ----------
    temperature : float
        In the temperature unit of the accompanying :class:`NaturalUnits`
        (kelvin for SI, multiples of ``T0`` for dimensionless runs).
    rate : float
        Coupling rate ``gamma`` in the angular-frequency unit of the run.
    role : {"hot", "cold", "parasitic"}
    """

    temperature: float
    rate: float
    role: str = "hot"

    def __post_init__(self):
        if self.role not in ROLES:
            raise DomainError(f"role must be one of {ROLES}, got {self.role!r}")
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise DomainError(f"{self.role} bath temperature must be finite and >= 0, got {self.temperature}")
        if not (self.rate >= 0 and math.isfinite(self.rate)):
            raise DomainError(f"{self.role} bath rate must be finite and >= 0, got {self.rate}")

    def occupation(self, units: NaturalUnits, omega: float | None = None) -> float:
        omega = units.omega0 if omega is None else omega
        return bose_occupation(omega, self.temperature, units.hbar_over_kb)


def _ratio(energy_over_kb: float, temperature: float) -> float:
    if temperature == 0:
        return math.inf
    if math.isinf(temperature):
        return 0.0
    return energy_over_kb / temperature


def inv_expm1(y):
    """``1 / (exp(y) - 1)`` without overflow for large ``y``."""
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    big = y > 30.0
    out[big] = np.exp(-y[big]) / -np.expm1(-y[big])
    small = ~big
    with np.errstate(divide="ignore"):
        out[small] = 1.0 / np.expm1(y[small])
    return out if out.ndim else float(out)


def bose_occupation(omega: float, temperature: float, hbar_over_kb: float = 1.0) -> float:
    """Bose-Einstein occupation ``1 / (exp(hbar omega / k_B T) - 1)``.

    Returns 0 at ``T = 0`` (the continuous limit).
    """
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    if temperature < 0:
        raise DomainError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0:
        return 0.0
    return float(inv_expm1(hbar_over_kb * omega / temperature))


def temperature_from_occupation(occupation: float, omega: float, hbar_over_kb: float = 1.0) -> float:
    """Inverse of :func:`bose_occupation`."""
    if occupation < 0:
        raise DomainError(f"occupation must be >= 0, got {occupation}")
    if occupation == 0:
        return 0.0
    return hbar_over_kb * omega / math.log1p(1.0 / occupation)


def _balance_temperature(up: float, gap: float, energy_over_kb: float) -> float:
    # up / (up + gap) = exp(-E / k_B T*)  =>  T* = E / (k_B log1p(gap / up))
    if up == 0:
        warnings.warn("all occupations vanish; effective temperature is the T = 0 limit",
                      LimitingCaseWarning, stacklevel=3)
        return 0.0
    return energy_over_kb / math.log1p(gap / up)


def effective_temperature(hot: BathSpec, cold: BathSpec, units: NaturalUnits) -> float:
    """Temperature at which the combined hot + cold dissipator obeys detailed balance.

    ``T* = T0 / log[(g_c (1 + n_c) + g_h (1 + n_h)) / (g_c n_c + g_h n_h)]``.
    The result always lies in ``[T_c, T_h]``. If both baths are at zero
    temperature, 0 is returned together with a :class:`LimitingCaseWarning`.
    """
    if not (hot.rate > 0 and cold.rate > 0):
        raise DomainError("effective_temperature needs positive hot and cold rates")
    n_h = hot.occupation(units)
    n_c = cold.occupation(units)
    up = cold.rate * n_c + hot.rate * n_h
    gap = cold.rate + hot.rate
    return _balance_temperature(up, gap, units.reference_temperature)


def effective_temperature_with_parasitic(qubit_omega: float, primary_rate: float | None,
                                         hot: BathSpec, cold: BathSpec, parasitic: BathSpec,
                                         units: NaturalUnits) -> float:
    """Effective temperature of one qubit of frequency ``qubit_omega`` seeing three baths.

    Solves ``(g_k (n_h + n_c) + g_p n_p) / (g_k (n_h + n_c + 2) + g_p (n_p + 1))
    = exp(-hbar omega_k / k_B T*_k)`` for ``T*_k``, with all occupations taken
    at ``qubit_omega``. ``primary_rate`` is the qubit's rate ``g_k`` to both the
    hot and the cold bath; pass ``None`` to use ``hot.rate`` and ``cold.rate``.
    With ``parasitic.rate == 0`` this is bit-for-bit :func:`effective_temperature`.
    """
    g_h = hot.rate if primary_rate is None else primary_rate
    g_c = cold.rate if primary_rate is None else primary_rate
    g_p = parasitic.rate
    if g_h < 0 or g_c < 0:
        raise DomainError("rates must be non-negative")
    if g_h + g_c + g_p == 0:
        raise DomainError("all rates are zero; the effective temperature is undefined")
    n_h = bose_occupation(qubit_omega, hot.temperature, units.hbar_over_kb)
    n_c = bose_occupation(qubit_omega, cold.temperature, units.hbar_over_kb)
    up = g_c * n_c + g_h * n_h
    gap = g_c + g_h
    if g_p != 0:
        up = up + g_p * bose_occupation(qubit_omega, parasitic.temperature, units.hbar_over_kb)
        gap = gap + g_p
    return _balance_temperature(up, gap, units.hbar_over_kb * qubit_omega)


def _thermal_weights(twice_j: int, x: float) -> np.ndarray:
    # Boltzmann weights exp(-m x) shifted so the largest one (at m = -J) is 1.
    twice_m = np.arange(-twice_j, twice_j + 1, 2)
    if math.isinf(x):
        w = np.zeros(twice_m.size)
        w[0] = 1.0
        return w
    return np.exp(-(twice_m + twice_j) * (x / 2.0))


def thermal_block_distribution(j, temperature: float, units: NaturalUnits) -> np.ndarray:
    """Thermal populations ``P(m | J)`` at ``temperature``, ordered by ascending m.

    ``T = 0`` gives a point mass on ``m = -J``; ``T = inf`` the uniform law.
    """
    twice_j = to_twice(j)
    if twice_j < 0:
        raise DomainError("J must be non-negative")
    if temperature < 0:
        raise DomainError("temperature must be >= 0")
    w = _thermal_weights(twice_j, units.x(temperature))
    return w / w.sum()


def log_partition_function(j, temperature: float, units: NaturalUnits) -> float:
    """Natural log of ``Z_{J,T} = sum_m exp(-m T0 / T)`` via the geometric-series closed form."""
    twice_j = to_twice(j)
    if twice_j < 0:
        raise DomainError("J must be non-negative")
    if not temperature > 0:
        raise DomainError("partition_function needs temperature > 0")
    x = units.x(temperature)
    if x == 0:
        return math.log(twice_j + 1)
    # Z = exp(J x) (1 - exp(-(2J+1) x)) / (1 - exp(-x))
    return (twice_j / 2.0) * x + math.log(-math.expm1(-(twice_j + 1) * x)) - math.log(-math.expm1(-x))


def partition_function(j, temperature: float, units: NaturalUnits) -> float:
    """Block partition function ``Z_{J,T}``.

    Raises :class:`OverflowError` when ``Z`` is not representable as a float;
    use :func:`log_partition_function` there.
    """
    log_z = log_partition_function(j, temperature, units)
    if log_z > _EXP_LIMIT:
        raise OverflowError(f"log Z = {log_z:.6g} overflows a float; use log_partition_function")
    return math.exp(log_z)


# Bernoulli-series coefficients of g(y) = 1/(e^y - 1) - 1/y + 1/2 (odd powers).
_G_SERIES = (1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0)


def _g(y):
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    small = np.abs(y) < 0.1
    ys = y[small]
    ys2 = ys * ys
    acc = np.zeros_like(ys)
    for c in reversed(_G_SERIES):
        acc = acc * ys2 + c
    out[small] = acc * ys
    yb = y[~small]
    out[~small] = inv_expm1(yb) - 1.0 / yb + 0.5
    return out


def mean_jz_from_x(twice_j, x):
    """``<J_z>`` of a thermal block as a function of ``x = T0 / T`` (vectorised).

    Uses ``<J_z> = g(x) - (2J + 1) g((2J + 1) x)`` with
    ``g(y) = 1/(e^y - 1) - 1/y + 1/2``, an exact rearrangement of
    ``-J + (2J+1)/(1 - e^{(2J+1)x}) + 1/(e^x - 1)`` that avoids cancellation
    near ``x = 0``.
    """
    tj = np.asarray(twice_j, dtype=float)
    x = np.asarray(x, dtype=float)
    tj, x = np.broadcast_arrays(tj, x)
    out = np.empty(tj.shape)
    inf = np.isinf(x)
    out[inf] = -tj[inf] / 2.0
    fin = ~inf
    k = tj[fin] + 1.0
    out[fin] = _g(x[fin]) - k * _g(k * x[fin])
    return out if out.ndim else float(out)


def mean_jz_thermal(j, temperature: float, units: NaturalUnits) -> float:
    """Thermal average of ``J_z`` inside block J at ``temperature``."""
    twice_j = to_twice(j)
    if twice_j < 0:
        raise DomainError("J must be non-negative")
    if temperature < 0:
        raise DomainError("temperature must be >= 0")
    return float(mean_jz_from_x(twice_j, units.x(temperature)))
