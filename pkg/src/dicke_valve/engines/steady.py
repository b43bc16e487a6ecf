"""Stationary distributions of the classical rate generator."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import splu

from ..exceptions import DomainError, NumericalDegeneracyError, SolverError, UsageError
from ..spinspace import DickeLedger, allowed_twice_j, degeneracy, from_twice, to_twice
from .generator import RateGenerator

RESIDUAL_TOLERANCE = 1e-11
NEGATIVE_TOLERANCE = 1e-14
ENGINES = ("analytic", "rate_equation", "full_oracle")


@dataclass(frozen=True)
class SteadyDistribution:
    """Normalised populations over (J, m) states.

    Populations aggregate all ``d(N, J)`` degenerate copies of a state.
    ``n_qubits`` is ``None`` for pure single-block results that do not refer
    to a particular N.
    """

    twice_j: np.ndarray
    twice_m: np.ndarray
    probabilities: np.ndarray
    residual: float
    engine: str
    n_qubits: int | None = None
    ledger: DickeLedger | None = field(default=None, repr=False)
    metadata: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise DomainError(f"engine must be one of {ENGINES}")
        total = float(np.sum(self.probabilities))
        if abs(total - 1.0) > 1e-12:
            raise SolverError(f"probabilities sum to {total!r}, not 1")

    @property
    def j(self) -> np.ndarray:
        return self.twice_j / 2.0

    @property
    def m(self) -> np.ndarray:
        return self.twice_m / 2.0

    @property
    def has_parasitic(self) -> bool:
        return bool(self.metadata.get("has_parasitic", False))

    def probability(self, j, m) -> float:
        mask = (self.twice_j == to_twice(j)) & (self.twice_m == to_twice(m))
        return float(self.probabilities[mask].sum())

    def block_weights(self) -> dict:
        """``{J: P_J}`` with J as :class:`fractions.Fraction`."""
        out = {}
        for tj in np.unique(self.twice_j)[::-1]:
            out[from_twice(tj)] = float(self.probabilities[self.twice_j == tj].sum())
        return out

    def block(self, j) -> np.ndarray:
        """Populations of block J in ascending m (not renormalised)."""
        return self.probabilities[self.twice_j == to_twice(j)]


@dataclass(frozen=True)
class InitialBlockWeights:
    """Occupation ``P_J`` of each conserved J block, keyed by twice-J."""

    weights: dict

    def __post_init__(self):
        if not self.weights:
            raise DomainError("at least one block weight is required")
        for tj, w in self.weights.items():
            if not isinstance(tj, (int, np.integer)) or tj < 0:
                raise DomainError(f"block keys are non-negative twice-J integers, got {tj!r}")
            if not (w >= 0 and math.isfinite(w)):
                raise DomainError(f"block weight for J={from_twice(tj)} must be finite and >= 0")
        total = sum(self.weights.values())
        if abs(total - 1.0) > 1e-9:
            raise DomainError(f"block weights must sum to 1, got {total!r}")

    @classmethod
    def delta(cls, j) -> "InitialBlockWeights":
        return cls({to_twice(j): 1.0})

    @classmethod
    def from_mapping(cls, mapping: dict) -> "InitialBlockWeights":
        """Build from ``{J: weight}``; weights are renormalised to sum to 1."""
        total = float(sum(mapping.values()))
        if not total > 0:
            raise DomainError("block weights must have a positive sum")
        return cls({to_twice(j): float(w) / total for j, w in mapping.items()})

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "InitialBlockWeights":
        """Weights ``d(N, J)(2J + 1) / 2^N`` of the infinite-temperature state."""
        dim = 2 ** n_qubits
        return cls({tj: degeneracy(n_qubits, Fraction(tj, 2)) * (tj + 1) / dim
                    for tj in allowed_twice_j(n_qubits)})

    def check_support(self, n_qubits: int):
        allowed = set(allowed_twice_j(n_qubits))
        for tj, w in self.weights.items():
            if w > 0 and tj not in allowed:
                raise DomainError(f"J={from_twice(tj)} is not allowed for N={n_qubits}")


def closed_class_count(matrix: sp.spmatrix) -> int:
    """Number of closed communicating classes of the chain with generator ``matrix``.

    The stationary distribution is unique iff this is 1.
    """
    offdiag = sp.csr_matrix(matrix, copy=True)
    offdiag.setdiag(0)
    offdiag.eliminate_zeros()
    # edge source -> target where W[target, source] > 0
    graph = (offdiag.T > 0).astype(np.int8).tocsr()
    n_comp, labels = connected_components(graph, directed=True, connection="strong")
    coo = graph.tocoo()
    leaves = np.ones(n_comp, dtype=bool)
    crossing = labels[coo.row] != labels[coo.col]
    leaves[np.unique(labels[coo.row[crossing]])] = False
    return int(leaves.sum())


def kernel_gap(matrix: sp.spmatrix) -> float:
    """Second-smallest singular value of a (small) generator over its largest one."""
    s = scipy.linalg.svdvals(matrix.toarray())
    if s.size < 2 or s[0] == 0:
        return 0.0
    return float(s[-2] / s[0])


def stationary_vector(matrix: sp.spmatrix, refine_steps: int = 3) -> np.ndarray:
    """Normalised null vector of a generator with a unique stationary state.

    One balance row is replaced by the normalisation row and the resulting
    square system is solved by sparse LU with iterative refinement.
    """
    n = matrix.shape[0]
    if n == 1:
        return np.ones(1)
    diag = np.abs(matrix.diagonal())
    scale = diag.max() if diag.max() > 0 else 1.0
    w = sp.csr_matrix(matrix / scale)
    k = int(np.argmax(diag))
    keep = np.ones(n)
    keep[k] = 0.0
    norm_row = sp.csr_matrix((np.ones(n), (np.full(n, k), np.arange(n))), shape=(n, n))
    a = (sp.diags(keep) @ w + norm_row).tocsc()
    b = np.zeros(n)
    b[k] = 1.0
    try:
        lu = splu(a)
    except RuntimeError as exc:
        raise NumericalDegeneracyError(f"balance system is singular: {exc}") from exc
    p = lu.solve(b)
    for _ in range(refine_steps):
        r = b - a @ p
        if np.max(np.abs(r)) <= 1e-15:
            break
        p = p + lu.solve(r)
    if not np.all(np.isfinite(p)):
        raise SolverError("stationary solve produced non-finite values")
    return p


def _clean(p: np.ndarray) -> np.ndarray:
    worst = p.min()
    if worst < -NEGATIVE_TOLERANCE * max(1.0, np.abs(p).max()):
        raise SolverError(f"stationary vector has a negative entry {worst:.3e}")
    if worst < -1e-15:
        warnings.warn(f"clipping negative populations down to {worst:.2e}", RuntimeWarning, stacklevel=3)
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def solve_steady(gen: RateGenerator, init: InitialBlockWeights | None = None,
                 tolerance: float = RESIDUAL_TOLERANCE) -> SteadyDistribution:
    """Stationary populations of ``gen``.

    With a parasitic bath the stationary state is unique and ``init`` is
    ignored (with a warning if given). Without it J is conserved, so ``init``
    must supply the block occupations and each block is solved separately.
    """
    ledger = gen.ledger
    if gen.has_parasitic:
        if init is not None:
            warnings.warn("a parasitic bath erases the initial state; init is ignored",
                          UserWarning, stacklevel=2)
        if closed_class_count(gen.matrix) != 1:
            raise NumericalDegeneracyError("generator has more than one closed class despite the parasitic bath")
        p = _clean(stationary_vector(gen.matrix))
    else:
        if init is None:
            raise UsageError("without a parasitic bath J is conserved; initial block weights are required")
        init.check_support(ledger.n_qubits)
        p = np.zeros(ledger.n_states)
        for tj, weight in init.weights.items():
            if weight == 0:
                continue
            sl = ledger.block_slice(Fraction(tj, 2))
            block = gen.matrix[sl, sl]
            if closed_class_count(block) != 1:
                raise NumericalDegeneracyError(f"block J={from_twice(tj)} has no unique stationary state")
            p[sl] = weight * _clean(stationary_vector(block))
        p = p / p.sum()
    residual = gen.residual(p)
    if residual > tolerance:
        raise SolverError(f"steady-state residual {residual:.3e} exceeds {tolerance:.1e}")
    return SteadyDistribution(np.asarray(ledger.twice_j), np.asarray(ledger.twice_m), p, residual,
                              "rate_equation", ledger.n_qubits, ledger,
                              {"has_parasitic": gen.has_parasitic})
