"""Classical rate generator over the (J, m) populations.

Collective hot/cold channels act with ``J_-`` / ``J_+`` inside each block.
The local parasitic channel (``sigma_-`` / ``sigma_+`` on every qubit) moves
population from (J, m) to (J', m -/+ 1) with ``J' in {J-1, J, J+1}``. For the
aggregate population ``p(J, m)`` (summed over the ``d(N, J)`` degenerate
copies) the local-emission rates out of (J, m) are, with ``a = N/2``::

    to (J,   m-1):  (J+m)(J-m+1)   (a+1)     / (2J(J+1))
    to (J-1, m-1):  (J+m)(J+m-1)   (a+J+1)   / (2J(2J+1))
    to (J+1, m-1):  (J-m+1)(J-m+2) (a-J)     / (2(J+1)(2J+1))

times ``gamma_p (1 + n_p)``. They sum to ``a + m``, the number of excited
qubits. Local absorption follows from ``m -> -m`` and ``gamma_p n_p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..exceptions import ConfigError
from ..spinspace import DickeLedger, ladder_squared_array
from ..thermo import BathSpec, NaturalUnits

CHANNELS = (
    ("hot", "emission"), ("hot", "absorption"),
    ("cold", "emission"), ("cold", "absorption"),
    ("parasitic", "emission"), ("parasitic", "absorption"),
)


@dataclass(frozen=True)
class RateGenerator:
    """Sparse master-equation generator ``dp/dt = W p``.

    ``channels[(bath, kind)]`` holds the off-diagonal transition rates of one
    channel (``W[target, source]``); ``matrix`` is their sum with the outflow
    on the diagonal so every column sums to zero.
    """

    ledger: DickeLedger
    matrix: sp.csc_matrix
    channels: dict = field(repr=False)
    hot: BathSpec = None
    cold: BathSpec = None
    parasitic: BathSpec | None = None
    units: NaturalUnits = None

    @property
    def has_parasitic(self) -> bool:
        return self.parasitic is not None and self.parasitic.rate > 0

    @property
    def scale(self) -> float:
        """Largest escape rate, used to make residuals dimensionless."""
        diag = np.abs(self.matrix.diagonal())
        return float(diag.max()) if diag.size and diag.max() > 0 else 1.0

    def block(self, twice_j: int) -> sp.csc_matrix:
        sl = self.ledger.block_slice(twice_j / 2)
        return self.matrix[sl, sl]

    def residual(self, p: np.ndarray) -> float:
        """``max |W p|`` divided by :attr:`scale`."""
        return float(np.max(np.abs(self.matrix @ p))) / self.scale


def _check_bath(bath, role):
    if bath is None:
        raise ConfigError(f"missing {role} bath")
    if not isinstance(bath, BathSpec):
        raise ConfigError(f"{role} bath must be a BathSpec, got {type(bath).__name__}")


def collective_rates(hot: BathSpec, cold: BathSpec, units: NaturalUnits) -> tuple[dict, dict]:
    """Per-bath emission and absorption coefficients ``gamma (1 + n)`` and ``gamma n``."""
    emit, absorb = {}, {}
    for bath in (hot, cold):
        n = bath.occupation(units)
        emit[bath.role] = bath.rate * (1.0 + n)
        absorb[bath.role] = bath.rate * n
    return emit, absorb


def local_branching(n_qubits: int, twice_j: np.ndarray, twice_m: np.ndarray) -> dict:
    """Local-emission branching rates (per unit ``gamma``) out of each state.

    Returns a dict keyed by ``delta_twice_j`` in ``{-2, 0, 2}``; each value is
    an array aligned with the input states. Absorption rates are obtained by
    passing ``-twice_m``.
    """
    tj = np.asarray(twice_j, dtype=float)
    tm = np.asarray(twice_m, dtype=float)
    j, m, a = tj / 2.0, tm / 2.0, n_qubits / 2.0
    out = {}
    with np.errstate(divide="ignore", invalid="ignore"):
        same = (j + m) * (j - m + 1) * (a + 1) / (2.0 * j * (j + 1))
        down = (j + m) * (j + m - 1) * (a + j + 1) / (2.0 * j * (2 * j + 1))
    zero_j = tj == 0
    same[zero_j] = 0.0
    down[zero_j] = 0.0
    up = (j - m + 1) * (j - m + 2) * (a - j) / (2.0 * (j + 1) * (2 * j + 1))
    out[0] = same
    out[-2] = down
    out[2] = up
    return out


def _transition_matrix(ledger, sources, targets_tj, targets_tm, rates):
    keep = rates > 0
    keep &= np.abs(targets_tm) <= targets_tj
    keep &= (targets_tj >= 0) & (targets_tj <= ledger.n_qubits)
    src = sources[keep]
    tj = targets_tj[keep]
    tm = targets_tm[keep]
    rows = ledger.indices(tj, tm)
    n = ledger.n_states
    return sp.csc_matrix((rates[keep], (rows, src)), shape=(n, n))


def build_generator(ledger: DickeLedger, hot: BathSpec, cold: BathSpec,
                    parasitic: BathSpec | None, units: NaturalUnits) -> RateGenerator:
    """Assemble the classical rate generator for the three-bath problem.

    ``parasitic=None`` (or zero parasitic rate) yields a generator that is
    block-diagonal in J.
    """
    _check_bath(hot, "hot")
    _check_bath(cold, "cold")
    if not isinstance(units, NaturalUnits):
        raise ConfigError("units must be a NaturalUnits instance")
    if parasitic is not None and not isinstance(parasitic, BathSpec):
        raise ConfigError("parasitic bath must be a BathSpec or None")

    tj = np.asarray(ledger.twice_j)
    tm = np.asarray(ledger.twice_m)
    sources = np.arange(ledger.n_states)
    lower = ladder_squared_array(tj, tm, "lower")
    raise_ = ladder_squared_array(tj, tm, "raise")

    channels = {}
    emit, absorb = collective_rates(hot, cold, units)
    for role in ("hot", "cold"):
        channels[(role, "emission")] = _transition_matrix(ledger, sources, tj, tm - 2, emit[role] * lower)
        channels[(role, "absorption")] = _transition_matrix(ledger, sources, tj, tm + 2, absorb[role] * raise_)

    if parasitic is not None and parasitic.rate > 0:
        n_p = parasitic.occupation(units)
        for kind, coeff, sign in (("emission", parasitic.rate * (1.0 + n_p), -1),
                                  ("absorption", parasitic.rate * n_p, 1)):
            branches = local_branching(ledger.n_qubits, tj, -sign * tm)
            total = None
            for dj, rate in branches.items():
                part = _transition_matrix(ledger, sources, tj + dj, tm + 2 * sign, coeff * rate)
                total = part if total is None else total + part
            channels[("parasitic", kind)] = total.tocsc()

    offdiag = None
    for mat in channels.values():
        offdiag = mat if offdiag is None else offdiag + mat
    outflow = np.asarray(offdiag.sum(axis=0)).ravel()
    matrix = (offdiag - sp.diags(outflow)).tocsc()
    matrix.sum_duplicates()
    return RateGenerator(ledger, matrix, channels, hot, cold, parasitic, units)


def block_generator(twice_j: int, hot: BathSpec, cold: BathSpec, units: NaturalUnits) -> sp.csc_matrix:
    """Collective-only generator of a single block, states in ascending m."""
    tm = np.arange(-twice_j, twice_j + 1, 2)
    tj = np.full(tm.size, twice_j)
    emit, absorb = collective_rates(hot, cold, units)
    down = (emit["hot"] + emit["cold"]) * ladder_squared_array(tj, tm, "lower")
    up = (absorb["hot"] + absorb["cold"]) * ladder_squared_array(tj, tm, "raise")
    # column s: s -> s-1 at rate down[s], s -> s+1 at rate up[s]
    w = sp.diags([down[1:], -(down + up), up[:-1]], [1, 0, -1], shape=(tm.size, tm.size))
    return w.tocsc()
