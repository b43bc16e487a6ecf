"""Exact steady state of the Lindblad equation in the full 2^N Hilbert space.

This is a brute-force reference for small N. It builds the Hamiltonian,
collective and local jump operators from Pauli matrices, forms the
Liouvillian superoperator, finds its stationary density matrix and projects
that onto (J, m) populations through an explicit diagonalisation of J^2.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from ..exceptions import NumericalDegeneracyError, SizeError, SolverError, UsageError
from ..spinspace import enumerate_blocks
from ..thermo import BathSpec, NaturalUnits
from .steady import InitialBlockWeights, SteadyDistribution

MAX_ORACLE_QUBITS = 6
KERNEL_TOLERANCE = 1e-10

# Single-qubit basis: index 0 = excited, index 1 = ground.
_SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]])
_SIGMA_MINUS = _SIGMA_PLUS.T
_SIGMA_Z = np.diag([1.0, -1.0])


def site_operator(op: np.ndarray, site: int, n_qubits: int) -> sp.csr_matrix:
    """``op`` acting on qubit ``site`` of ``n_qubits``."""
    out = sp.identity(1, format="csr")
    for k in range(n_qubits):
        out = sp.kron(out, sp.csr_matrix(op) if k == site else sp.identity(2, format="csr"), format="csr")
    return out


def collective_operators(n_qubits: int) -> dict:
    """Sparse ``J_+``, ``J_-``, ``J_z`` and ``J^2`` for ``n_qubits`` qubits."""
    jp = sum(site_operator(_SIGMA_PLUS, k, n_qubits) for k in range(n_qubits))
    jm = sum(site_operator(_SIGMA_MINUS, k, n_qubits) for k in range(n_qubits))
    jz = 0.5 * sum(site_operator(_SIGMA_Z, k, n_qubits) for k in range(n_qubits))
    j2 = (jp @ jm + jz @ jz - jz).tocsr()
    return {"plus": jp.tocsr(), "minus": jm.tocsr(), "z": jz.tocsr(), "j2": j2}


def dissipator_superop(op: sp.spmatrix, rate: float) -> sp.csr_matrix:
    """Column-stacked superoperator of ``rate * (L rho L^+ - {L^+ L, rho}/2)``."""
    dim = op.shape[0]
    eye = sp.identity(dim, format="csr")
    op = sp.csr_matrix(op)
    ldl = (op.conj().T @ op).tocsr()
    return rate * (sp.kron(op.conj(), op) - 0.5 * sp.kron(eye, ldl) - 0.5 * sp.kron(ldl.T, eye)).tocsr()


def apply_dissipator(op, rate: float, rho: np.ndarray) -> np.ndarray:
    op = op.toarray() if sp.issparse(op) else op
    ldl = op.conj().T @ op
    return rate * (op @ rho @ op.conj().T - 0.5 * (ldl @ rho + rho @ ldl))


def _channels(n_qubits, hot, cold, parasitic, units, ops):
    """``{role: [(jump operator, rate), ...]}`` for every bath."""
    out = {}
    for bath in (hot, cold):
        n = bath.occupation(units)
        out[bath.role] = [(ops["minus"], bath.rate * (1.0 + n)), (ops["plus"], bath.rate * n)]
    if parasitic is not None and parasitic.rate > 0:
        n = parasitic.occupation(units)
        terms = []
        for k in range(n_qubits):
            terms.append((site_operator(_SIGMA_MINUS, k, n_qubits), parasitic.rate * (1.0 + n)))
            terms.append((site_operator(_SIGMA_PLUS, k, n_qubits), parasitic.rate * n))
        out["parasitic"] = terms
    return out


def liouvillian(n_qubits: int, hot: BathSpec, cold: BathSpec, parasitic: BathSpec | None,
                units: NaturalUnits, ops: dict | None = None) -> sp.csr_matrix:
    """Full Liouvillian acting on column-stacked density matrices."""
    ops = collective_operators(n_qubits) if ops is None else ops
    dim = 2 ** n_qubits
    eye = sp.identity(dim, format="csr")
    # -(i/hbar)[H0, rho] with H0 = hbar omega0 J_z
    h = units.omega0 * ops["z"]
    total = -1j * (sp.kron(eye, h) - sp.kron(h.T, eye))
    for terms in _channels(n_qubits, hot, cold, parasitic, units, ops).values():
        for op, rate in terms:
            if rate > 0:
                total = total + dissipator_superop(op, rate)
    return total.tocsr()


def dicke_projectors(n_qubits: int, ops: dict | None = None) -> dict:
    """Orthonormal bases of each joint (J, m) eigenspace, keyed by twice-(J, m).

    ``J_z`` is diagonal in the computational basis, so ``J^2`` is diagonalised
    inside each ``J_z`` eigenspace and its eigenvalues ``J(J+1)`` are read off.
    """
    ops = collective_operators(n_qubits) if ops is None else ops
    twice_m_diag = np.rint(2 * ops["z"].diagonal().real).astype(int)
    j2 = ops["j2"].toarray().real
    out = {}
    for tm in np.unique(twice_m_diag):
        idx = np.flatnonzero(twice_m_diag == tm)
        evals, evecs = np.linalg.eigh(j2[np.ix_(idx, idx)])
        twice_j = np.rint(np.sqrt(1.0 + 4.0 * evals) - 1.0).astype(int)
        for tj in np.unique(twice_j):
            cols = evecs[:, twice_j == tj]
            vec = np.zeros((2 ** n_qubits, cols.shape[1]))
            vec[idx] = cols
            out[(int(tj), int(tm))] = vec
    return out


def _excitation_sector(n_qubits: int) -> np.ndarray:
    """Column-stacked indices of ``|a><b|`` with equal excitation numbers in a and b."""
    dim = 2 ** n_qubits
    exc = np.array([n_qubits - bin(a).count("1") for a in range(dim)])
    rows, cols = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    vec_index = rows + dim * cols
    return np.sort(vec_index[exc[rows] == exc[cols]])


def full_space_oracle(n_qubits: int, hot: BathSpec, cold: BathSpec, parasitic: BathSpec | None,
                      units: NaturalUnits, init: InitialBlockWeights | None = None) -> SteadyDistribution:
    """Steady (J, m) populations from the exact 2^N Lindblad equation.

    The Liouvillian conserves the difference of excitation numbers between
    ket and bra, so the stationary state is sought in the sector where that
    difference vanishes (an exact restriction, not an approximation). With a
    parasitic bath the stationary state is unique. Without one, ``init`` fixes
    the weight of each conserved J block and the minimum-norm stationary state
    with those weights is returned (maximally mixed over degenerate copies).

    ``metadata`` carries the density matrix and the heat current of every bath
    computed directly as ``Tr[H0 D_i(rho)]``.
    """
    if not 1 <= n_qubits <= MAX_ORACLE_QUBITS:
        raise SizeError(f"the full-space oracle supports 1 <= N <= {MAX_ORACLE_QUBITS}, got {n_qubits}")
    has_parasitic = parasitic is not None and parasitic.rate > 0
    if not has_parasitic and init is None:
        raise UsageError("without a parasitic bath the oracle needs initial block weights")
    dim = 2 ** n_qubits
    ops = collective_operators(n_qubits)
    lv = liouvillian(n_qubits, hot, cold, parasitic, units, ops)
    sector = _excitation_sector(n_qubits)
    lsub = lv[sector][:, sector]
    scale = float(np.max(np.abs(lsub.diagonal())))
    lsub = lsub / scale
    diag_pos = np.flatnonzero(np.isin(sector, np.arange(dim) * (dim + 1)))
    projectors = dicke_projectors(n_qubits, ops)

    if has_parasitic:
        k = diag_pos[0]
        a = sp.lil_matrix(lsub)
        a[k, :] = 0
        a[k, diag_pos] = 1.0
        b = np.zeros(sector.size, dtype=complex)
        b[k] = 1.0
        try:
            x = splu(sp.csc_matrix(a)).solve(b)
        except RuntimeError as exc:
            raise NumericalDegeneracyError(f"Liouvillian kernel is degenerate: {exc}") from exc
    else:
        init.check_support(n_qubits)
        rows, rhs = [], []
        for tj, weight in init.weights.items():
            proj = sum(v @ v.T for (bj, _), v in projectors.items() if bj == tj)
            rows.append(proj.reshape(-1, order="F")[sector])
            rhs.append(weight)
        for tj in {bj for bj, _ in projectors} - set(init.weights):
            proj = sum(v @ v.T for (bj, _), v in projectors.items() if bj == tj)
            rows.append(proj.reshape(-1, order="F")[sector])
            rhs.append(0.0)
        # J is conserved, so the kernel holds A_J (x) sigma_J for any multiplicity-space
        # matrix A_J. The minimum-norm kernel element with the requested block traces
        # has A_J proportional to the identity, i.e. no coherence between copies.
        _, s, vh = scipy.linalg.svd(lsub.toarray())
        null = s <= KERNEL_TOLERANCE * s[0]
        basis = vh[null].conj().T
        if basis.shape[1] == 0:
            raise NumericalDegeneracyError("no stationary state found in the Liouvillian kernel")
        coeffs = np.linalg.pinv(np.array(rows, dtype=complex) @ basis) @ np.array(rhs, dtype=complex)
        x = basis @ coeffs

    full = np.zeros(dim * dim, dtype=complex)
    full[sector] = x
    rho = full.reshape(dim, dim, order="F")
    trace = np.trace(rho)
    hermiticity = float(np.max(np.abs(rho - rho.conj().T)))
    if abs(trace - 1.0) > 1e-8 or hermiticity > 1e-8:
        raise SolverError(f"oracle state is not a density matrix (trace {trace}, hermiticity {hermiticity:.2e})")
    rho = 0.5 * (rho + rho.conj().T)
    residual = float(np.max(np.abs(lv @ rho.reshape(-1, order="F")))) / scale

    ledger = enumerate_blocks(n_qubits)
    p = np.zeros(ledger.n_states)
    for (tj, tm), vec in projectors.items():
        p[ledger.index(Fraction(tj, 2), Fraction(tm, 2))] = np.real(np.einsum("ai,ab,bi->", vec, rho, vec))
    p = p / p.sum()

    h0 = units.hbar * units.omega0 * ops["z"].toarray()
    currents = {}
    for role, terms in _channels(n_qubits, hot, cold, parasitic, units, ops).items():
        d_rho = sum(apply_dissipator(op, rate, rho) for op, rate in terms)
        currents[role] = float(np.real(np.trace(h0 @ d_rho)))
    currents.setdefault("parasitic", 0.0)
    return SteadyDistribution(np.asarray(ledger.twice_j), np.asarray(ledger.twice_m), p, residual,
                              "full_oracle", n_qubits, ledger,
                              {"has_parasitic": has_parasitic, "density_matrix": rho,
                               "currents": currents, "hermiticity_error": hermiticity,
                               "trace_error": float(abs(trace - 1.0))})
