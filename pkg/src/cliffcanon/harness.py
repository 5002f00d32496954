"""Seeded scrambling and relation reports."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .algebra import AlgebraType, classify
from .construct import Representation, volume
from .linalg import Tolerance, residual_max


def haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix from the QR factorization of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def random_invertible(n: int, cond: float, rng: np.random.Generator) -> np.ndarray:
    """Random matrix with 2-norm condition number exactly ``cond``."""
    u = haar_orthogonal(n, rng)
    v = haar_orthogonal(n, rng)
    sv = np.geomspace(1.0, 1.0 / cond, n) if n > 1 else np.ones(1)
    return (u * sv) @ v.T


def scramble(rep: Representation, seed: int, invertible: bool = False,
             cond: float = 100.0) -> Representation:
    """Conjugate every generator by the same random matrix drawn from ``seed``.

    The default is ``Q.T @ A @ Q`` with ``Q`` Haar-orthogonal; with
    ``invertible=True`` it is ``M^{-1} @ A @ M`` for a matrix of condition
    number ``cond``.
    """
    rng = np.random.default_rng(seed)
    if not invertible:
        q = haar_orthogonal(rep.dim, rng)
        return rep.conjugate(q)
    m = random_invertible(rep.dim, cond, rng)
    return rep.conjugate(m, np.linalg.inv(m))


@dataclass(frozen=True)
class VerifyReport:
    relation_residual: float
    symmetry_residual: float
    trace_max: float
    volume_scalar: float | None
    classified: AlgebraType
    atol: float
    passed: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["classified"] = {**asdict(self.classified), "name": str(self.classified)}
        out["pass"] = out.pop("passed")
        return out


def symmetry_residual(rep: Representation) -> float:
    """Max entry of ``G.T - G`` for positive squares and ``G.T + G`` for negative ones."""
    worst = 0.0
    for g, sq in zip(rep.generators, rep.squares()):
        worst = max(worst, residual_max(g.T, sq * g))
    return worst


def verify(rep: Representation, tol: Tolerance | None = None) -> VerifyReport:
    """Residuals of the Clifford relations, (skew-)symmetry and traces."""
    tol = tol or Tolerance.for_dim(rep.dim)
    rel = rep.relation_residual()
    sym = symmetry_residual(rep)
    trace = max((abs(float(np.trace(g))) for g in rep.generators), default=0.0) if rep.signature.n >= 2 else 0.0
    vol = None
    if rep.signature.n % 2 == 1:
        v = volume(rep)
        lam = float(np.mean(np.diag(v)))
        if residual_max(v, lam * np.eye(rep.dim)) <= tol.atol:
            vol = lam
    ok = max(rel, sym, trace) <= tol.atol
    return VerifyReport(rel, sym, trace, vol, classify(rep.signature), tol.atol, ok)
