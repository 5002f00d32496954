import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffcanon.errors import NotSPDError, ShapeMismatchError, ZeroMatrixError
from cliffcanon.linalg import (EPS, SIGMA, TAU, Tolerance, anticommutes, commutes, is_orthogonal,
                               kron, numerical_rank, orth, residual_max, spd_factor)

from oracles import CL3_GENERATORS, k3


def test_pauli_products():
    assert np.array_equal(SIGMA @ TAU, EPS)
    assert np.array_equal(SIGMA @ EPS, TAU)
    assert np.array_equal(EPS @ TAU, SIGMA)
    assert np.array_equal(EPS @ EPS, -np.eye(2))


def test_constants_read_only():
    with pytest.raises(ValueError):
        SIGMA[0, 0] = 2.0


def test_kron_examples():
    assert np.array_equal(kron(SIGMA, EPS), CL3_GENERATORS[0])
    assert np.array_equal(kron(EPS, np.eye(2)), CL3_GENERATORS[1])
    b = np.arange(9.0).reshape(3, 3)
    assert np.array_equal(kron(np.eye(1), b), b)


def test_kron_block_convention():
    b = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.array_equal(kron(EPS, b), np.block([[np.zeros((2, 2)), b], [-b, np.zeros((2, 2))]]))
    assert np.array_equal(kron(SIGMA, EPS, TAU), k3(SIGMA, EPS, TAU))


def test_kron_needs_factor():
    with pytest.raises(ValueError):
        kron()


def test_orth_examples():
    assert np.allclose(orth(np.eye(4)), np.eye(4))
    v = orth(np.array([[3.0], [4.0]]))
    assert np.allclose(v[:, 0], [0.6, 0.8])


def test_orth_sign_convention():
    v = orth(np.array([[-3.0], [-4.0]]))
    assert np.allclose(v[:, 0], [0.6, 0.8])


def test_orth_zero_raises():
    with pytest.raises(ZeroMatrixError):
        orth(np.zeros((3, 3)))


def test_orth_rank_deficient():
    rng = np.random.default_rng(1)
    q = rng.standard_normal((6, 2)) @ rng.standard_normal((2, 6))
    basis = orth(q)
    assert basis.shape == (6, 2)
    assert np.allclose(basis.T @ basis, np.eye(2))
    # range is preserved
    assert np.allclose(basis @ basis.T @ q, q)


def test_rank_cutoff_counts_atol():
    m = np.diag([1e-12, 1e-12, 1e-20])
    assert numerical_rank(m, Tolerance(atol=1e-9)) == 0
    assert numerical_rank(np.diag([1.0, 1e-8, 1e-12])) == 2


def test_spd_factor_examples():
    assert np.allclose(spd_factor(np.eye(3)), np.eye(3))
    assert np.allclose(spd_factor(np.diag([1.25, 5.0])), np.diag([np.sqrt(5) / 2, np.sqrt(5)]))
    assert np.allclose(spd_factor(4 * np.eye(3)), 2 * np.eye(3))


def test_spd_factor_rejects():
    with pytest.raises(NotSPDError):
        spd_factor(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(NotSPDError):
        spd_factor(np.diag([1.0, -1.0]))


def test_predicates():
    assert anticommutes(SIGMA, EPS)
    assert not anticommutes(SIGMA, SIGMA)
    assert commutes(SIGMA, SIGMA)
    assert is_orthogonal(np.eye(5))
    assert not is_orthogonal(2 * np.eye(2))
    assert residual_max(np.eye(2), np.zeros((2, 2))) == 1.0


def test_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        residual_max(np.eye(2), np.eye(3))
    with pytest.raises(ShapeMismatchError):
        anticommutes(np.eye(2), np.eye(3))
    with pytest.raises(ShapeMismatchError):
        is_orthogonal(np.ones((2, 3)))


def test_tolerance_validation():
    assert Tolerance.for_dim(8).atol == pytest.approx(8e-9)
    with pytest.raises(ValueError):
        Tolerance(atol=0.0)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 8), k=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_orth_spans_range(n, k, seed):
    rng = np.random.default_rng(seed)
    rank = min(n, k)
    q = rng.standard_normal((n, rank)) @ rng.standard_normal((rank, k))
    basis = orth(q)
    assert basis.shape[1] == numerical_rank(q)
    assert np.allclose(basis.T @ basis, np.eye(basis.shape[1]), atol=1e-12)
    assert np.allclose(basis @ (basis.T @ q), q, atol=1e-9 * max(1.0, np.abs(q).max()))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 10), seed=st.integers(0, 2**32 - 1))
def test_spd_factor_reconstructs(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    s = a.T @ a + n * np.eye(n)
    r = spd_factor(s)
    assert np.allclose(np.triu(r), r)
    assert np.allclose(r.T @ r, s)
