from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_force_operators
from dicke_valve.exceptions import DomainError, SizeError
from dicke_valve.spinspace import (SpinBlock, allowed_twice_j, degeneracy, enumerate_blocks, from_twice,
                                   ladder_squared, ladder_squared_array, to_twice)


def test_to_twice_accepts_exact_half_integers():
    assert to_twice(Fraction(3, 2)) == 3
    assert to_twice(2) == 4
    assert to_twice(0.5) == 1
    with pytest.raises(DomainError):
        to_twice(0.3)
    with pytest.raises(DomainError):
        to_twice(Fraction(1, 3))


def test_from_twice_roundtrip():
    for t in range(-7, 8):
        assert to_twice(from_twice(t)) == t


@pytest.mark.parametrize("n,expected", [(1, {1: 1}), (2, {2: 1, 0: 1}), (3, {3: 1, 1: 2}),
                                        (4, {4: 1, 2: 3, 0: 2})])
def test_degeneracy_small_tables(n, expected):
    assert {tj: degeneracy(n, Fraction(tj, 2)) for tj in allowed_twice_j(n)} == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_degeneracy_matches_j2_spectrum(n):
    # count J(J+1) eigenvalues of the explicit 2^N operator and divide by 2J+1
    evals = np.linalg.eigvalsh(brute_force_operators(n)["j2"])
    twice_j = np.rint(np.sqrt(1 + 4 * evals) - 1).astype(int)
    for tj in allowed_twice_j(n):
        assert np.sum(twice_j == tj) == degeneracy(n, Fraction(tj, 2)) * (tj + 1)


@given(st.integers(1, 300))
def test_dimension_sums_to_hilbert_space(n):
    ledger = enumerate_blocks(n)
    assert ledger.hilbert_dimension() == 2 ** n
    assert sum(b.degeneracy for b in ledger.blocks) == comb(n, n // 2)


def test_degeneracy_errors():
    with pytest.raises(DomainError):
        degeneracy(3, 1)
    with pytest.raises(DomainError):
        degeneracy(2, 2)
    with pytest.raises(SizeError):
        degeneracy(0, 0)


def test_enumerate_blocks_order_and_caps():
    ledger = enumerate_blocks(3)
    assert [b.twice_j for b in ledger.blocks] == [3, 1]
    assert list(ledger.twice_j) == [3, 3, 3, 3, 1, 1]
    assert list(ledger.twice_m) == [-3, -1, 1, 3, -1, 1]
    with pytest.raises(SizeError):
        enumerate_blocks(5000)
    with pytest.raises(SizeError):
        enumerate_blocks(10, max_qubits=8)
    with pytest.raises(SizeError):
        enumerate_blocks(2.5)


@given(st.integers(1, 60))
def test_index_roundtrip_and_vectorised_index(n):
    ledger = enumerate_blocks(n)
    for k, (j, m) in enumerate(ledger):
        assert ledger.index(j, m) == k
        assert ledger.state(k) == (j, m)
    assert np.array_equal(ledger.indices(ledger.twice_j, ledger.twice_m), np.arange(ledger.n_states))
    assert ledger.n_states == len(ledger) == sum(b.size for b in ledger.blocks)


def test_index_errors():
    ledger = enumerate_blocks(4)
    with pytest.raises(DomainError):
        ledger.index(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(DomainError):
        ledger.index(1, 2)
    with pytest.raises(DomainError):
        ledger.block(3)
    assert ledger.block_slice(1) == slice(5, 8)


def test_spin_block_properties():
    b = SpinBlock(3, 2)
    assert b.j == Fraction(3, 2)
    assert b.m_values == (Fraction(-3, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2))
    assert b.size == 4


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ladder_squared_matches_matrix_elements(n):
    # <J+ J-> in a (J, m) eigenvector equals J(J+1) - m(m-1)
    ops = brute_force_operators(n)
    jz, j2 = ops["z"], ops["j2"]
    pm = ops["plus"] @ ops["minus"]
    mp = ops["minus"] @ ops["plus"]
    evals, vecs = np.linalg.eigh(j2 + 1e-3 * jz)
    for v in vecs.T:
        m = v @ jz @ v
        jj = v @ j2 @ v
        j = (np.sqrt(1 + 4 * jj) - 1) / 2
        assert v @ pm @ v == pytest.approx(ladder_squared(round(2 * j) / 2, round(2 * m) / 2, "lower"), abs=1e-9)
        assert v @ mp @ v == pytest.approx(ladder_squared(round(2 * j) / 2, round(2 * m) / 2, "raise"), abs=1e-9)


def test_ladder_squared_edges():
    assert ladder_squared(Fraction(1, 2), Fraction(-1, 2), "lower") == 0
    assert ladder_squared(Fraction(1, 2), Fraction(1, 2), "raise") == 0
    assert ladder_squared(1, 0, "lower") == 2
    with pytest.raises(DomainError):
        ladder_squared(1, 2, "lower")
    with pytest.raises(DomainError):
        ladder_squared(1, 0, "sideways")
    tj = np.array([4, 4, 4])
    tm = np.array([-4, 0, 4])
    assert list(ladder_squared_array(tj, tm, "lower")) == [0.0, 6.0, 4.0]
    assert list(ladder_squared_array(tj, tm, "raise")) == [4.0, 6.0, 0.0]
