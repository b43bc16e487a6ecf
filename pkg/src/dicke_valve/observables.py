"""Heat currents, baselines, limiting forms and collective-spin moments.

Currents are returned in units of ``hbar * omega0 * gamma`` for dimensionless
runs and in watts for SI runs (rates in 1/s). Positive ``q`` means energy
flowing from the bath into the qubits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .circuitmap import detuned_rate
from .exceptions import DomainError, UsageError, ValidityError, ValidityWarning
from .engines.steady import SteadyDistribution
from .spinspace import to_twice
from .thermo import (BathSpec, NaturalUnits, bose_occupation, effective_temperature,
                     effective_temperature_with_parasitic, mean_jz_from_x)


@dataclass(frozen=True)
class HeatReport:
    """Steady-state energy balance and spin moments of one solved point.

    Attributes
    ----------
    q_hot, q_cold, q_parasitic : float
        Heat current out of each bath. ``q_parasitic`` is evaluated directly
        from the local-channel expectation values.
    q_parasitic_residual : float
        ``-(q_hot + q_cold)``, which equals ``q_parasitic`` at steady state.
    mean_jz, mean_j2, mean_j2_normalized : float
    independent : float
        Independent-qubit baseline without the parasitic bath.
    independent_with_parasitic : float
        Independent-qubit baseline with every qubit also coupled to the
        parasitic bath (equals ``independent`` when there is none).
    enhancement_vs_independent : float
        ``q_hot / independent - 1``.
    enhancement_vs_independent_with_parasitic : float
    units : {"natural", "SI"}
    gross_exchange : float
        Sum of the absolute emission and absorption energy flows of all baths,
        the scale against which the energy balance is judged.
    """

    q_hot: float
    q_cold: float
    q_parasitic: float
    q_parasitic_residual: float
    mean_jz: float
    mean_j2: float
    mean_j2_normalized: float
    independent: float
    independent_with_parasitic: float
    enhancement_vs_independent: float
    enhancement_vs_independent_with_parasitic: float
    units: str
    gross_exchange: float = 0.0

    @property
    def energy_imbalance(self) -> float:
        """``|q_hot + q_cold + q_parasitic|`` relative to :attr:`gross_exchange`."""
        total = abs(self.q_hot + self.q_cold + self.q_parasitic)
        return total / self.gross_exchange if self.gross_exchange > 0 else total

    def as_dict(self) -> dict:
        return asdict(self)


def _energy(units: NaturalUnits, omega: float | None = None) -> float:
    return units.hbar * (units.omega0 if omega is None else omega)


def _ladder_moments(dist: SteadyDistribution) -> tuple[float, float]:
    """``<J+ J->`` and ``<J- J+>``."""
    tj = dist.twice_j.astype(float)
    tm = dist.twice_m.astype(float)
    jj = tj * (tj + 2) / 4.0
    plus_minus = float(np.dot(dist.probabilities, jj - tm * (tm - 2) / 4.0))
    minus_plus = float(np.dot(dist.probabilities, jj - tm * (tm + 2) / 4.0))
    return plus_minus, minus_plus


def mean_jz(dist: SteadyDistribution) -> float:
    return float(np.dot(dist.probabilities, dist.twice_m)) / 2.0


def mean_j2(dist: SteadyDistribution, normalized: bool = False) -> float:
    """``<J^2> = sum p(J, m) J(J+1)``.

    With ``normalized=True`` the value is divided by its maximum
    ``(N/2)(N/2 + 1)``. For single-block results without an ``n_qubits`` the
    largest J present is used instead.
    """
    tj = dist.twice_j.astype(float)
    value = float(np.dot(dist.probabilities, tj * (tj + 2) / 4.0))
    if not normalized:
        return value
    top = dist.n_qubits if dist.n_qubits is not None else int(dist.twice_j.max())
    top_j = top / 2.0
    return value / (top_j * (top_j + 1.0))


def _flows(dist: SteadyDistribution, bath: BathSpec, units: NaturalUnits) -> tuple[float, float]:
    """Energy emitted into and absorbed from ``bath`` per unit time."""
    if bath.rate == 0:
        return 0.0, 0.0
    n = bath.occupation(units)
    if bath.role == "parasitic":
        if dist.n_qubits is None:
            raise UsageError("the parasitic current needs a distribution over a full N-qubit ledger")
        half_n = dist.n_qubits / 2.0
        lowering, raising = half_n + mean_jz(dist), half_n - mean_jz(dist)
    else:
        lowering, raising = _ladder_moments(dist)
    scale = _energy(units) * bath.rate
    return scale * (1.0 + n) * lowering, scale * n * raising


def bath_current(dist: SteadyDistribution, bath: BathSpec, units: NaturalUnits) -> float:
    """Heat current out of ``bath`` in the state ``dist``.

    Hot and cold baths couple through ``J_-``/``J_+``:
    ``q = hbar omega0 gamma [-(1 + n) <J+ J-> + n <J- J+>]``. The parasitic
    bath couples to every qubit separately, so ``<J+ J->`` is replaced by the
    number of excitations ``N/2 + m`` and ``<J- J+>`` by ``N/2 - m``.
    """
    emitted, absorbed = _flows(dist, bath, units)
    return absorbed - emitted


def _pair_rate(hot: BathSpec, cold: BathSpec) -> float:
    if not (hot.rate > 0 and cold.rate > 0):
        raise DomainError("hot and cold rates must be positive")
    return 2.0 * hot.rate * cold.rate / (hot.rate + cold.rate)


def steady_current_collective(dist: SteadyDistribution, hot: BathSpec, cold: BathSpec,
                              units: NaturalUnits) -> float:
    """Hot-bath current from ``<J_z>`` alone, valid at two-bath stationarity.

    ``q_hot = [2 g_h g_c / (g_h + g_c)] hbar omega0 <-J_z> (n_h - n_c)``.
    """
    if dist.has_parasitic:
        warnings.warn("the <J_z> current identity only holds without a parasitic bath",
                      ValidityWarning, stacklevel=2)
    delta_n = hot.occupation(units) - cold.occupation(units)
    return _pair_rate(hot, cold) * _energy(units) * (-mean_jz(dist)) * delta_n


def independent_baseline(n_qubits: int, hot: BathSpec, cold: BathSpec, units: NaturalUnits) -> float:
    """Hot-bath current of ``n_qubits`` qubits each coupled to its own baths."""
    if not (hot.rate > 0 and cold.rate > 0):
        raise DomainError("independent_baseline needs positive hot and cold rates")
    n_h = hot.occupation(units)
    n_c = cold.occupation(units)
    g_h, g_c = hot.rate, cold.rate
    return n_qubits * _energy(units) * g_h * g_c * (n_h - n_c) / (g_c * (2 * n_c + 1) + g_h * (2 * n_h + 1))


def single_qubit_current(omega: float, rate_hot: float, rate_cold: float, hot: BathSpec,
                         cold: BathSpec, parasitic: BathSpec | None, units: NaturalUnits) -> float:
    """Hot-bath current of one qubit of frequency ``omega`` seeing three baths.

    The qubit populations are thermal at its effective temperature ``T*_k``;
    all occupations are taken at ``omega``.
    """
    par = parasitic if parasitic is not None else BathSpec(0.0, 0.0, "parasitic")
    hot_k = BathSpec(hot.temperature, rate_hot, "hot")
    cold_k = BathSpec(cold.temperature, rate_cold, "cold")
    t_star = effective_temperature_with_parasitic(omega, None, hot_k, cold_k, par, units)
    x = units.x(t_star, omega)
    # p0 = 1 / (1 + e^{-x}), p1 = 1 - p0 = 1 / (1 + e^{x})
    p1 = 0.5 * (1.0 - math.tanh(x / 2.0)) if math.isfinite(x) else 0.0
    p0 = 1.0 - p1
    n_h = bose_occupation(omega, hot.temperature, units.hbar_over_kb)
    return _energy(units, omega) * rate_hot * (-(1.0 + n_h) * p1 + n_h * p0)


def independent_with_parasitic(n_qubits: int, hot: BathSpec, cold: BathSpec,
                               parasitic: BathSpec | None, units: NaturalUnits) -> float:
    """Independent baseline with each qubit also coupled locally to the parasitic bath."""
    if not (hot.rate > 0 and cold.rate > 0):
        raise DomainError("independent_with_parasitic needs positive hot and cold rates")
    return n_qubits * single_qubit_current(units.omega0, hot.rate, cold.rate, hot, cold, parasitic, units)


def detuned_two_qubit_current(omega1: float, omega2: float, gamma1: float, q_factor: float,
                              hot: BathSpec, cold: BathSpec, parasitic: BathSpec | None,
                              units: NaturalUnits, omega_lc: float | None = None) -> float:
    """Hot-bath current of two independent qubits, the second detuned from the resonator.

    Qubit 1 couples with ``gamma1`` to both baths; qubit 2's rate follows from
    the Lorentzian filter of a resonator at ``omega_lc`` (default ``omega1``)
    with quality factor ``q_factor``. ``hot.rate`` and ``cold.rate`` are not used.

    Raises
    ------
    ValidityError
        If ``omega1 == omega2``; resonant qubits act collectively.
    """
    if omega1 == omega2:
        raise ValidityError("resonant qubits couple collectively; use the collective engines")
    if not (omega1 > 0 and omega2 > 0 and gamma1 > 0):
        raise DomainError("frequencies and gamma1 must be positive")
    omega_lc = omega1 if omega_lc is None else omega_lc
    gamma1_eff = detuned_rate(gamma1, omega1, omega_lc, q_factor)
    gamma2 = detuned_rate(gamma1, omega2, omega_lc, q_factor)
    gamma_p = parasitic.rate if parasitic is not None else 0.0
    if abs(omega1 - omega2) < 10.0 * max(gamma1_eff, gamma2, gamma_p):
        warnings.warn("detuning is not large compared with the rates; the secular split is doubtful",
                      ValidityWarning, stacklevel=2)
    return sum(single_qubit_current(w, g, g, hot, cold, parasitic, units)
               for w, g in ((omega1, gamma1_eff), (omega2, gamma2)))


def thermodynamic_ratio(t_star: float, units: NaturalUnits) -> float:
    """Large-J ratio ``coth(T0 / 2T*)`` of collective to independent current."""
    if not t_star > 0:
        raise DomainError("t_star must be positive")
    x = units.x(t_star)
    return 1.0 / math.tanh(x / 2.0)


def limit_currents(jbar, hot: BathSpec, cold: BathSpec, units: NaturalUnits) -> tuple[float, float]:
    """Low- and high-temperature asymptotes of the fixed-J current.

    Returns
    -------
    low_t, high_t : float
        ``g hbar omega0 J (n_h - n_c)`` and
        ``g (hbar omega0)^2 / (3 k_B T*) J (J + 1) (n_h - n_c)`` with
        ``g = 2 g_h g_c / (g_h + g_c)``.
    """
    twice_j = to_twice(jbar)
    if twice_j <= 0:
        raise DomainError("jbar must be positive")
    j = twice_j / 2.0
    pref = _pair_rate(hot, cold) * (hot.occupation(units) - cold.occupation(units))
    energy = _energy(units)
    t_star = effective_temperature(hot, cold, units)
    low = pref * energy * j
    high = pref * energy * units.x(t_star) / 3.0 * j * (j + 1.0)
    return low, high


def fixed_subspace_current(jbar, hot: BathSpec, cold: BathSpec, units: NaturalUnits) -> float:
    """Closed-form hot current of a thermal block ``J = jbar`` at ``T*`` (no parasitic bath)."""
    t_star = effective_temperature(hot, cold, units)
    jz = float(mean_jz_from_x(to_twice(jbar), units.x(t_star)))
    delta_n = hot.occupation(units) - cold.occupation(units)
    return _pair_rate(hot, cold) * _energy(units) * (-jz) * delta_n


def heat_report(dist: SteadyDistribution, hot: BathSpec, cold: BathSpec,
                parasitic: BathSpec | None, units: NaturalUnits) -> HeatReport:
    """Collect currents, moments and baselines of a solved point."""
    q_hot = bath_current(dist, hot, units)
    q_cold = bath_current(dist, cold, units)
    has_parasitic = parasitic is not None and parasitic.rate > 0
    q_par = bath_current(dist, parasitic, units) if has_parasitic else 0.0
    n = dist.n_qubits if dist.n_qubits is not None else int(dist.twice_j.max())
    ind = independent_baseline(n, hot, cold, units)
    ind_p = independent_with_parasitic(n, hot, cold, parasitic, units)

    gross = sum(sum(_flows(dist, b, units)) for b in (hot, cold) + ((parasitic,) if has_parasitic else ()))

    def ratio(q, base):
        return q / base - 1.0 if base != 0 else math.nan

    return HeatReport(q_hot, q_cold, q_par, -(q_hot + q_cold), mean_jz(dist), mean_j2(dist),
                      mean_j2(dist, normalized=True), ind, ind_p, ratio(q_hot, ind), ratio(q_hot, ind_p),
                      "natural" if units.is_dimensionless else "SI", gross)
