"""Dense matrix kernels shared by every other module.

Matrices are plain ``numpy.ndarray`` objects.  The 2x2 Pauli-type matrices
follow the sign conventions used throughout the package::

    SIGMA = [[1, 0], [0, -1]]    EPS = [[0, 1], [-1, 0]]    TAU = [[0, 1], [1, 0]]

with ``SIGMA @ TAU == EPS``, ``SIGMA @ EPS == TAU`` and ``EPS @ TAU == SIGMA``.
Kronecker products use the block convention where the left factor indexes
the blocks, so ``kron(EPS, b) == [[0, b], [-b, 0]]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.linalg as spla

from .errors import NotSPDError, ShapeMismatchError, ZeroMatrixError

SIGMA = np.array([[1, 0], [0, -1]], dtype=float)
EPS = np.array([[0, 1], [-1, 0]], dtype=float)
TAU = np.array([[0, 1], [1, 0]], dtype=float)
I2 = np.eye(2)

for _m in (SIGMA, EPS, TAU, I2):
    _m.setflags(write=False)


@dataclass(frozen=True)
class Tolerance:
    """Absolute entrywise tolerance plus a relative singular-value cutoff."""

    atol: float = 1e-9
    rank_rtol: float = 1e-10

    def __post_init__(self):
        if not (self.atol > 0 and self.rank_rtol > 0):
            raise ValueError("atol and rank_rtol must be positive")

    @classmethod
    def for_dim(cls, n: int) -> "Tolerance":
        """Default tolerance for checks on ``n x n`` matrices."""
        return cls(atol=1e-9 * max(n, 1))


def kron(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor outermost."""
    if not factors:
        raise ValueError("kron needs at least one factor")
    return reduce(np.kron, (np.asarray(f) for f in factors))


def identity(n: int) -> np.ndarray:
    return np.eye(n)


def _check_square(*mats: np.ndarray) -> None:
    shape = None
    for m in mats:
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeMismatchError(f"expected a square matrix, got shape {m.shape}")
        if shape is not None and m.shape != shape:
            raise ShapeMismatchError(f"shape {m.shape} does not match {shape}")
        shape = m.shape


def residual_max(a: np.ndarray, b: np.ndarray) -> float:
    """Largest absolute entry of ``a - b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shapes {a.shape} and {b.shape} differ")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def is_orthogonal(p: np.ndarray, tol: Tolerance | None = None) -> bool:
    p = np.asarray(p)
    _check_square(p)
    tol = tol or Tolerance.for_dim(p.shape[0])
    return residual_max(p.T @ p, np.eye(p.shape[0])) <= tol.atol


def anticommutes(a: np.ndarray, b: np.ndarray, tol: Tolerance | None = None) -> bool:
    a = np.asarray(a)
    b = np.asarray(b)
    _check_square(a, b)
    tol = tol or Tolerance.for_dim(a.shape[0])
    return float(np.max(np.abs(a @ b + b @ a))) <= tol.atol


def commutes(a: np.ndarray, b: np.ndarray, tol: Tolerance | None = None) -> bool:
    a = np.asarray(a)
    b = np.asarray(b)
    _check_square(a, b)
    tol = tol or Tolerance.for_dim(a.shape[0])
    return float(np.max(np.abs(a @ b - b @ a))) <= tol.atol


def numerical_rank(q: np.ndarray, tol: Tolerance | None = None) -> int:
    q = np.atleast_2d(np.asarray(q, dtype=float))
    tol = tol or Tolerance.for_dim(q.shape[0])
    sv = spla.svdvals(q)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    # values within the entrywise tolerance are noise, however small sv[0] is relative to them
    return int(np.count_nonzero(sv > max(tol.rank_rtol * sv[0], tol.atol)))


def orth(q: np.ndarray, tol: Tolerance | None = None) -> np.ndarray:
    """Orthonormal basis for the range of ``q``.

    The rank counts singular values above ``max(rank_rtol * s_max, atol)``;
    the basis itself comes from a column-pivoted QR factorization, so the
    columns are a deterministic function of the input.  Each column is signed so that
    its largest-magnitude entry (first one on ties) is positive.

    Raises
    ------
    ZeroMatrixError
        If every singular value falls below the cutoff.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim == 1:
        q = q[:, None]
    tol = tol or Tolerance.for_dim(q.shape[0])
    k = numerical_rank(q, tol)
    if k == 0:
        raise ZeroMatrixError("matrix is numerically zero")
    basis, _, _ = spla.qr(q, mode="economic", pivoting=True)
    basis = basis[:, :k]
    lead = np.argmax(np.abs(basis) > np.abs(basis).max(axis=0) * (1 - 1e-12), axis=0)
    signs = np.sign(basis[lead, np.arange(k)])
    signs[signs == 0] = 1.0
    return basis * signs


def spd_factor(s: np.ndarray, tol: Tolerance | None = None) -> np.ndarray:
    """Upper-triangular ``R`` with ``R.T @ R == s`` for symmetric positive definite ``s``."""
    s = np.asarray(s, dtype=float)
    _check_square(s)
    tol = tol or Tolerance.for_dim(s.shape[0])
    scale = 1.0 + float(np.max(np.abs(s)))
    if residual_max(s, s.T) > tol.atol * scale:
        raise NotSPDError("matrix is not symmetric")
    try:
        r = spla.cholesky(s, lower=False)
    except spla.LinAlgError as exc:
        raise NotSPDError(f"matrix is not positive definite: {exc}") from None
    if np.any(np.diag(r) <= 0):
        raise NotSPDError("non-positive pivot")
    return r
