"""Estimator-style front end over the steady-state engines.

:class:`HeatValveModel` follows the scikit-learn parameter conventions
(``get_params`` / ``set_params`` / ``clone``) so parameter grids can be driven
by standard tooling. ``fit`` solves the configured point; ``transform`` and
``predict`` evaluate the model over rows of swept parameter values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, clone

from .engines import (InitialBlockWeights, SteadyDistribution, analytic_distribution, build_generator,
                      full_space_oracle, solve_steady)
from .exceptions import UsageError
from .observables import HeatReport, heat_report
from .spinspace import enumerate_blocks
from .thermo import BathSpec, NaturalUnits, effective_temperature

ENGINE_CHOICES = ("auto", "analytic", "rate", "oracle")

TRANSFORM_COLUMNS = ("q_hot", "q_cold", "q_parasitic", "mean_jz", "mean_j2_normalized", "t_star")


@dataclass(frozen=True)
class PointSolution:
    """A solved point: the distribution, its energy report and bookkeeping."""

    distribution: SteadyDistribution
    report: HeatReport
    engine: str
    t_star: float


def resolve_engine(engine: str, has_parasitic: bool) -> str:
    """Map ``auto`` onto a concrete engine and reject impossible choices."""
    if engine not in ENGINE_CHOICES:
        raise UsageError(f"engine must be one of {ENGINE_CHOICES}, got {engine!r}")
    if engine == "auto":
        return "rate" if has_parasitic else "analytic"
    if engine == "analytic" and has_parasitic:
        raise UsageError("the analytic engine has no parasitic bath; use 'rate' or 'oracle'")
    return engine


def solve_point(n_qubits: int, hot: BathSpec, cold: BathSpec, parasitic: BathSpec | None,
                units: NaturalUnits, engine: str = "auto",
                init: InitialBlockWeights | None = None) -> PointSolution:
    """Solve one parameter point with the requested engine.

    Without a parasitic bath ``init`` defaults to all weight in ``J = N/2``.
    """
    has_parasitic = parasitic is not None and parasitic.rate > 0
    engine = resolve_engine(engine, has_parasitic)
    if not has_parasitic and init is None:
        init = InitialBlockWeights.delta(n_qubits / 2)
    if has_parasitic:
        init = None
    if engine == "analytic":
        dist = analytic_distribution(enumerate_blocks(n_qubits), init, hot, cold, units)
    elif engine == "rate":
        dist = solve_steady(build_generator(enumerate_blocks(n_qubits), hot, cold, parasitic, units), init)
    else:
        dist = full_space_oracle(n_qubits, hot, cold, parasitic, units, init)
    t_star = effective_temperature(hot, cold, units)
    return PointSolution(dist, heat_report(dist, hot, cold, parasitic, units), engine, t_star)


class HeatValveModel(BaseEstimator):
    """Steady-state heat valve of N qubits between a hot, a cold and a parasitic bath.

    Parameters
    ----------
    n_qubits : int
    t_hot, t_cold, t_parasitic : float
        Bath temperatures, in units of ``T0`` when ``qubit_frequency_ghz`` is
        None and in kelvin otherwise.
    gamma_hot, gamma_cold, gamma_parasitic : float
        Coupling rates, in units of ``omega0`` or in 1/s.
    qubit_frequency_ghz : float or None
        ``omega0 / 2 pi``. None selects dimensionless units.
    engine : {"auto", "analytic", "rate", "oracle"}
    initial_block_weights : dict or None
        ``{J: P_J}`` for runs without a parasitic bath.
    feature_names : tuple of str
        Parameter names matched to the columns of ``X`` in
        :meth:`transform` and :meth:`predict`.

    Attributes
    ----------
    distribution_ : SteadyDistribution
    report_ : HeatReport
    engine_ : str
    t_star_ : float
    """

    def __init__(self, n_qubits=2, t_hot=3.0, t_cold=1.0 / 3.0, t_parasitic=1.0, gamma_hot=1.0,
                 gamma_cold=1.0, gamma_parasitic=0.0, qubit_frequency_ghz=None, engine="auto",
                 initial_block_weights=None, feature_names=("t_hot",)):
        self.n_qubits = n_qubits
        self.t_hot = t_hot
        self.t_cold = t_cold
        self.t_parasitic = t_parasitic
        self.gamma_hot = gamma_hot
        self.gamma_cold = gamma_cold
        self.gamma_parasitic = gamma_parasitic
        self.qubit_frequency_ghz = qubit_frequency_ghz
        self.engine = engine
        self.initial_block_weights = initial_block_weights
        self.feature_names = feature_names

    def _units(self) -> NaturalUnits:
        if self.qubit_frequency_ghz is None:
            return NaturalUnits.dimensionless()
        return NaturalUnits.si_from_ghz(self.qubit_frequency_ghz)

    def _baths(self):
        hot = BathSpec(float(self.t_hot), float(self.gamma_hot), "hot")
        cold = BathSpec(float(self.t_cold), float(self.gamma_cold), "cold")
        par = BathSpec(float(self.t_parasitic), float(self.gamma_parasitic), "parasitic")
        return hot, cold, par

    def fit(self, X=None, y=None):
        """Solve the steady state at the current parameters. ``X`` and ``y`` are ignored."""
        hot, cold, par = self._baths()
        init = None
        if self.initial_block_weights is not None:
            init = InitialBlockWeights.from_mapping(self.initial_block_weights)
        sol = solve_point(int(self.n_qubits), hot, cold, par, self._units(), self.engine, init)
        self.distribution_ = sol.distribution
        self.report_ = sol.report
        self.engine_ = sol.engine
        self.t_star_ = sol.t_star
        return self

    def _rows(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != len(self.feature_names):
            raise UsageError(f"X has {X.shape[1]} columns but feature_names has {len(self.feature_names)}")
        for row in X:
            params = dict(zip(self.feature_names, row))
            if "n_qubits" in params:
                params["n_qubits"] = int(round(params["n_qubits"]))
            yield clone(self).set_params(**params).fit()

    def transform(self, X) -> np.ndarray:
        """One row of :data:`TRANSFORM_COLUMNS` per row of ``X``."""
        out = []
        for model in self._rows(X):
            r = model.report_
            out.append([r.q_hot, r.q_cold, r.q_parasitic, r.mean_jz, r.mean_j2_normalized, model.t_star_])
        return np.array(out).reshape(-1, len(TRANSFORM_COLUMNS))

    def predict(self, X) -> np.ndarray:
        """Hot-bath heat current for each row of ``X``."""
        return np.array([model.report_.q_hot for model in self._rows(X)])
