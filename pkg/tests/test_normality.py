import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqnormal.blocks import CanonicalForm, BlockS1, BlockLambda, assemble
from sqnormal.generators import random_canonical_a, random_unitary
from sqnormal.normality import is_normal, is_squared_normal, normality_defect, squared_normality_defect


def jordan(n):
    return np.eye(n, k=1)


def test_identity_defect_zero():
    assert normality_defect(np.eye(3)) == 0


def test_nilpotent_2x2_defect():
    # M*M = diag(0, 1), MM* = diag(1, 0)
    assert normality_defect(jordan(2)) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_rotation_is_normal():
    assert normality_defect(np.array([[0, -2], [2, 0]])) == 0


def test_is_normal_examples():
    assert is_normal(np.diag([1, 2j, -3]))
    assert not is_normal(jordan(2))
    U = random_unitary(4, 3)
    assert is_normal(U.conj().T @ np.diag([1, 2, 3j, -1]) @ U)


def test_squared_normal_examples():
    assert is_squared_normal(jordan(2))
    # J3^2 = E13, whose defect is sqrt(2)
    assert squared_normality_defect(jordan(3)) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert not is_squared_normal(jordan(3))


def test_assembled_forms_are_squared_normal():
    for seed in range(50):
        assert is_squared_normal(assemble(random_canonical_a(1 + seed % 9, seed)))
    assert is_squared_normal(assemble(CanonicalForm((BlockS1(1j, 100.0), BlockLambda(-2)))))


def test_scale_invariance():
    A = assemble(random_canonical_a(6, 1))
    for c in (1e-8, 1.0, 1e6):
        assert is_squared_normal(c * A)
        assert not is_squared_normal(c * jordan(3))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_defect_unitarily_invariant(n, seed):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    U = random_unitary(n, seed)
    d1, d2 = normality_defect(M), normality_defect(U.conj().T @ M @ U)
    assert abs(d1 - d2) <= 1e-12 * np.linalg.norm(M) ** 2


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_normal_families_have_tiny_defect(n, seed):
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = G + G.conj().T
    U = random_unitary(n, seed)
    D = np.diag(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    for M in (H, U, D):
        assert normality_defect(M) <= 1e-13 * max(1.0, np.linalg.norm(M) ** 2)
        assert is_normal(M)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_squared_normality_invariant_under_conjugation(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    F = assemble(random_canonical_a(n, seed))
    U = random_unitary(n, seed + 1)
    for M in (A, F):
        assert is_squared_normal(M) == is_squared_normal(U.conj().T @ M @ U)
