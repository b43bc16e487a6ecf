"""Closed-form steady states when J is conserved (no parasitic bath)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..spinspace import DickeLedger, to_twice
from ..thermo import BathSpec, NaturalUnits, effective_temperature, thermal_block_distribution
from .generator import block_generator
from .steady import InitialBlockWeights, SteadyDistribution


def _block_residual(twice_j, p, hot, cold, units) -> float:
    w = block_generator(twice_j, hot, cold, units)
    diag = np.abs(w.diagonal())
    scale = diag.max() if diag.size and diag.max() > 0 else 1.0
    return float(np.max(np.abs(w @ p))) / scale


def analytic_fixed_subspace(jbar, hot: BathSpec, cold: BathSpec, units: NaturalUnits) -> SteadyDistribution:
    """Steady state confined to block ``J = jbar``: thermal at the effective temperature."""
    twice_j = to_twice(jbar)
    t_star = effective_temperature(hot, cold, units)
    p = thermal_block_distribution(Fraction(twice_j, 2), t_star, units)
    residual = _block_residual(twice_j, p, hot, cold, units)
    return SteadyDistribution(np.full(p.size, twice_j), np.arange(-twice_j, twice_j + 1, 2), p,
                              residual, "analytic", None, None,
                              {"has_parasitic": False, "t_star": t_star})


def analytic_distribution(ledger: DickeLedger, init: InitialBlockWeights, hot: BathSpec,
                          cold: BathSpec, units: NaturalUnits) -> SteadyDistribution:
    """Block-weighted thermal state over a full ledger."""
    init.check_support(ledger.n_qubits)
    t_star = effective_temperature(hot, cold, units)
    p = np.zeros(ledger.n_states)
    residual = 0.0
    for tj, weight in init.weights.items():
        if weight == 0:
            continue
        block = thermal_block_distribution(Fraction(tj, 2), t_star, units)
        residual = max(residual, _block_residual(tj, block, hot, cold, units))
        p[ledger.block_slice(Fraction(tj, 2))] = weight * block
    p = p / p.sum()
    return SteadyDistribution(np.asarray(ledger.twice_j), np.asarray(ledger.twice_m), p, residual,
                              "analytic", ledger.n_qubits, ledger,
                              {"has_parasitic": False, "t_star": t_star})
