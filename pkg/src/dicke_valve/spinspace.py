"""Permutation-symmetric state space of N spin-1/2 qubits.

Collective spin quantum numbers are half-integers. They are stored exactly as
"twice" integers (``twice_j = 2*J``, ``twice_m = 2*m``) so that block identity
never depends on floating-point comparisons. Public functions accept ``J`` and
``m`` as ints, floats, or :class:`fractions.Fraction` and convert them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator

import numpy as np

from .exceptions import DomainError, SizeError

DEFAULT_MAX_QUBITS = 4096


def to_twice(value) -> int:
    """Return ``2*value`` as an exact integer, rejecting non half-integers."""
    if isinstance(value, (int, np.integer)):
        return 2 * int(value)
    if isinstance(value, Fraction):
        twice = 2 * value
        if twice.denominator != 1:
            raise DomainError(f"{value} is not a half-integer")
        return int(twice)
    twice = 2.0 * float(value)
    rounded = round(twice)
    if not np.isfinite(twice) or abs(twice - rounded) > 1e-9:
        raise DomainError(f"{value!r} is not a half-integer")
    return int(rounded)


def from_twice(twice: int) -> Fraction:
    return Fraction(int(twice), 2)


@dataclass(frozen=True)
class SpinBlock:
    """One collective-spin multiplet family: value of J and its multiplicity."""

    twice_j: int
    degeneracy: int

    @property
    def j(self) -> Fraction:
        return from_twice(self.twice_j)

    @property
    def twice_m_values(self) -> tuple[int, ...]:
        return tuple(range(-self.twice_j, self.twice_j + 1, 2))

    @property
    def m_values(self) -> tuple[Fraction, ...]:
        return tuple(from_twice(t) for t in self.twice_m_values)

    @property
    def size(self) -> int:
        return self.twice_j + 1


@dataclass(frozen=True)
class DickeLedger:
    """Enumeration of the (J, m) states reachable by N qubits.

    States are ordered by descending J and, inside a block, ascending m. The
    flat index of a state is its position in that order.

    Attributes
    ----------
    n_qubits : int
    blocks : tuple of SpinBlock
    twice_j, twice_m : ndarray of int
        Per-state quantum numbers (times two), aligned with the flat index.
    """

    n_qubits: int
    blocks: tuple[SpinBlock, ...]
    twice_j: np.ndarray = field(repr=False, compare=False)
    twice_m: np.ndarray = field(repr=False, compare=False)
    _offsets: dict = field(repr=False, compare=False)

    @property
    def n_states(self) -> int:
        return int(self.twice_j.size)

    @property
    def j(self) -> np.ndarray:
        """Per-state J as floats (exact for half-integers)."""
        return self.twice_j / 2.0

    @property
    def m(self) -> np.ndarray:
        return self.twice_m / 2.0

    def block(self, j) -> SpinBlock:
        twice_j = to_twice(j)
        for b in self.blocks:
            if b.twice_j == twice_j:
                return b
        raise DomainError(f"J={from_twice(twice_j)} is not allowed for N={self.n_qubits}")

    def block_slice(self, j) -> slice:
        twice_j = to_twice(j)
        if twice_j not in self._offsets:
            raise DomainError(f"J={from_twice(twice_j)} is not allowed for N={self.n_qubits}")
        start = self._offsets[twice_j]
        return slice(start, start + twice_j + 1)

    def index(self, j, m) -> int:
        """Flat index of state (J, m)."""
        twice_j, twice_m = to_twice(j), to_twice(m)
        if twice_j not in self._offsets:
            raise DomainError(f"J={from_twice(twice_j)} is not allowed for N={self.n_qubits}")
        if abs(twice_m) > twice_j or (twice_j - twice_m) % 2:
            raise DomainError(f"m={from_twice(twice_m)} is not a projection of J={from_twice(twice_j)}")
        return self._offsets[twice_j] + (twice_m + twice_j) // 2

    def indices(self, twice_j, twice_m) -> np.ndarray:
        """Vectorised flat index for valid twice-integer quantum numbers (no checks)."""
        tj = np.asarray(twice_j, dtype=np.int64)
        tm = np.asarray(twice_m, dtype=np.int64)
        before = (self.n_qubits - tj) // 2
        offset = before * (self.n_qubits + 1) - before * (before - 1)
        return offset + (tm + tj) // 2

    def state(self, index: int) -> tuple[Fraction, Fraction]:
        """Inverse of :meth:`index`."""
        return from_twice(self.twice_j[index]), from_twice(self.twice_m[index])

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction]]:
        for tj, tm in zip(self.twice_j, self.twice_m):
            yield from_twice(tj), from_twice(tm)

    def __len__(self) -> int:
        return self.n_states

    def hilbert_dimension(self) -> int:
        return sum(b.degeneracy * b.size for b in self.blocks)


def allowed_twice_j(n_qubits: int) -> range:
    """Twice-J values for N qubits in descending order: N, N-2, ..., 0 or 1."""
    return range(n_qubits, -1, -2)


def _check_n(n_qubits, max_qubits=DEFAULT_MAX_QUBITS) -> int:
    if isinstance(n_qubits, bool) or int(n_qubits) != n_qubits:
        raise SizeError(f"n_qubits must be an integer, got {n_qubits!r}")
    n_qubits = int(n_qubits)
    if n_qubits < 1:
        raise SizeError(f"n_qubits must be >= 1, got {n_qubits}")
    if n_qubits > max_qubits:
        raise SizeError(f"n_qubits={n_qubits} exceeds the cap of {max_qubits}")
    return n_qubits


def degeneracy(n_qubits: int, j) -> int:
    """Number of spin-J multiplets in the decomposition of N spin-1/2s.

    ``d(N, J) = C(N, N/2 - J) - C(N, N/2 - J - 1)``, computed with exact
    integers.
    """
    n_qubits = _check_n(n_qubits)
    twice_j = to_twice(j)
    if twice_j < 0 or twice_j > n_qubits or (n_qubits - twice_j) % 2:
        raise DomainError(f"J={from_twice(twice_j)} is not allowed for N={n_qubits}")
    k = (n_qubits - twice_j) // 2
    return comb(n_qubits, k) - (comb(n_qubits, k - 1) if k >= 1 else 0)


def enumerate_blocks(n_qubits: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> DickeLedger:
    """Build the ledger of collective-spin blocks for ``n_qubits`` qubits."""
    n_qubits = _check_n(n_qubits, max_qubits)
    blocks = tuple(SpinBlock(tj, degeneracy(n_qubits, Fraction(tj, 2)))
                   for tj in allowed_twice_j(n_qubits))
    offsets = {}
    tj_parts, tm_parts = [], []
    start = 0
    for b in blocks:
        offsets[b.twice_j] = start
        tj_parts.append(np.full(b.size, b.twice_j, dtype=np.int64))
        tm_parts.append(np.arange(-b.twice_j, b.twice_j + 1, 2, dtype=np.int64))
        start += b.size
    twice_j = np.concatenate(tj_parts)
    twice_m = np.concatenate(tm_parts)
    twice_j.setflags(write=False)
    twice_m.setflags(write=False)
    return DickeLedger(n_qubits, blocks, twice_j, twice_m, offsets)


def ladder_squared(j, m, direction: str) -> float:
    """Squared matrix element ``|<J, m±1| J± |J, m>|^2``.

    Parameters
    ----------
    j, m : half-integer
    direction : {"raise", "lower"}

    Returns
    -------
    float
        ``J(J+1) - m(m+1)`` when raising, ``J(J+1) - m(m-1)`` when lowering.
    """
    twice_j, twice_m = to_twice(j), to_twice(m)
    if twice_j < 0 or abs(twice_m) > twice_j:
        raise DomainError(f"|m| <= J violated for J={from_twice(twice_j)}, m={from_twice(twice_m)}")
    if direction == "raise":
        quarter = twice_j * (twice_j + 2) - twice_m * (twice_m + 2)
    elif direction == "lower":
        quarter = twice_j * (twice_j + 2) - twice_m * (twice_m - 2)
    else:
        raise DomainError(f"direction must be 'raise' or 'lower', got {direction!r}")
    return quarter / 4.0


def ladder_squared_array(twice_j: np.ndarray, twice_m: np.ndarray, direction: str) -> np.ndarray:
    """Vectorised :func:`ladder_squared` over twice-integer arrays."""
    tj = np.asarray(twice_j, dtype=np.int64)
    tm = np.asarray(twice_m, dtype=np.int64)
    step = 2 if direction == "raise" else -2
    if direction not in ("raise", "lower"):
        raise DomainError(f"direction must be 'raise' or 'lower', got {direction!r}")
    return (tj * (tj + 2) - tm * (tm + step)) / 4.0
