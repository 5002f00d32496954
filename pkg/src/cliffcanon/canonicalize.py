"""Orthogonal change of basis taking an irreducible representation to canonical form.

The targets ("canonical-T" forms) are deterministic per signature:

* ``s >= 1``: peel off a generator pair as ``eps (x) I`` / ``tau (x) I`` (or
  ``sigma (x) I`` / ``tau (x) I`` when ``r == 0``) and recurse on the
  half-size diagonal blocks.
* ``s == 0``: find the common ``+1`` eigenspace of an abelian family of
  odd generator words, pick a unit vector ``X`` in it and act on ``X`` with
  words in the free generators to produce the basis.  For ``r = 7`` the
  result is ``-sigma(x)sigma(x)eps, -sigma(x)eps(x)1, ...``; for ``r = 3``
  it is ``sigma(x)eps, eps(x)1, tau(x)eps``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg as spla

from .algebra import (GeneratorWord, Signature, as_signature, classify, commutation_sign,
                      irreducible_dim, word_product)
from .construct import Representation, build_canonical, volume
from .errors import (NotInCommutantError, NotOrthonormalError, RankError, RankMismatchError,
                     ReducibleError, RelationError, UnsupportedCError)
from .linalg import Tolerance, orth, residual_max, spd_factor

FIX_DIM = {0: 1, 1: 2, 2: 4, 3: 4, 4: 4, 5: 2, 6: 1, 7: 1}


@dataclass(frozen=True)
class ChangeOfBasis:
    """Columns of ``p`` are the new basis; a matrix ``A`` becomes ``p_inv @ A @ p``."""

    p: np.ndarray
    p_inv: np.ndarray | None = None

    def __post_init__(self):
        if self.p_inv is None:
            object.__setattr__(self, "p_inv", self.p.T)

    def apply(self, a: np.ndarray) -> np.ndarray:
        return self.p_inv @ a @ self.p

    def orthogonality_residual(self) -> float:
        return residual_max(self.p.T @ self.p, np.eye(self.p.shape[0]))

    def compose(self, inner: "ChangeOfBasis") -> "ChangeOfBasis":
        """Apply ``self`` first, then ``inner``."""
        return ChangeOfBasis(self.p @ inner.p, inner.p_inv @ self.p_inv)


@dataclass(frozen=True)
class AbelianPlan:
    signature: Signature
    mus: tuple[GeneratorWord, ...]
    free: tuple[int, ...]
    expected_fix_dim: int


class CanonicalResult(NamedTuple):
    rep: Representation
    change: ChangeOfBasis
    class_sign: int


def _tol(rep: Representation, tol: Tolerance | None) -> Tolerance:
    return tol or Tolerance.for_dim(rep.dim)


# symmetrization -----------------------------------------------------------

def word_gram(generators: Sequence[np.ndarray], dim: int | None = None) -> np.ndarray:
    """``sum_w w.T @ w`` over all ``2**n`` sorted generator words.

    Splitting the words by whether they end in the last generator gives
    ``S_k = S_{k-1} + A_k.T @ S_{k-1} @ A_k``, so the sum costs ``2n`` products.
    """
    dim = dim or np.asarray(generators[0]).shape[0]
    s = np.eye(dim)
    for a in generators:
        s = s + a.T @ s @ a
    return s


def symmetrize(rep: Representation, tol: Tolerance | None = None) -> tuple[Representation, np.ndarray]:
    """Make every generator skew (square ``-I``) or symmetric (square ``+I``).

    Returns the conjugated representation ``R A R^{-1}`` and the upper
    triangular Cholesky factor ``R`` of the averaged Gram matrix.
    """
    tol = _tol(rep, tol)
    s = word_gram(rep.generators, rep.dim)
    s = (s + s.T) / 2
    r = spd_factor(s, Tolerance(atol=tol.atol * float(np.max(np.abs(s)))))

    def conj(a):
        # R a R^{-1} == (R^{-T} (R a)^T)^T
        return spla.solve_triangular(r, (r @ a).T, trans="T").T

    return rep.map(conj), r


# generator pairs ----------------------------------------------------------

def split_pair(a: np.ndarray | None, b: np.ndarray, c: np.ndarray | None, mode: str,
               tol: Tolerance | None = None) -> ChangeOfBasis:
    """Orthonormal basis putting two anticommuting generators in block form.

    ``mode="i"``:   ``b -> sigma (x) I``, ``c -> tau (x) I``  (both square ``+I``)
    ``mode="ii"``:  ``a -> eps (x) I``,   ``b -> sigma (x) I``
    ``mode="iii"``: ``a -> eps (x) I``,   ``b -> tau (x) I``
    """
    n = b.shape[0]
    tol = tol or Tolerance.for_dim(n)
    x = orth(b + np.eye(n), tol)
    if 2 * x.shape[1] != n:
        raise RankError(f"+1 eigenspace has dimension {x.shape[1]}, expected {n // 2}")
    if mode == "i":
        p = np.hstack([x, c @ x])
    elif mode == "ii":
        p = np.hstack([x, -(a @ x)])
    elif mode == "iii":
        ax = a @ x
        p = np.hstack([x + ax, x - ax]) / np.sqrt(2.0)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return ChangeOfBasis(p)


def _rs_basis(rep: Representation, tol: Tolerance, x_coeffs=None) -> np.ndarray:
    r, s, n = rep.r, rep.s, rep.dim
    if s == 0:
        return _r0_basis(rep, tol, x_coeffs)
    if r == 0 and s == 1:
        return np.eye(n)
    h = n // 2
    gens = rep.generators
    if r >= 1:
        top = split_pair(gens[r - 1], gens[-1], None, "iii", tol)
        rest = list(gens[: r - 1]) + list(gens[r:-1])
        half_sig = Signature(r - 1, s - 1)
        block = (slice(0, h), slice(0, h))
    else:
        top = split_pair(None, gens[-1], gens[-2], "i", tol)
        rest = list(gens[:-2])
        half_sig = Signature(s - 2, 0)
        block = (slice(0, h), slice(h, n))
    half = Representation(half_sig, tuple(top.apply(g)[block] for g in rest), h)
    p_half = _rs_basis(half, Tolerance(atol=tol.atol / 2, rank_rtol=tol.rank_rtol), x_coeffs)
    return top.p @ np.kron(np.eye(2), p_half)


def canonicalize_rs(rep: Representation, tol: Tolerance | None = None) -> tuple[Representation, ChangeOfBasis]:
    """Canonical-T form for ``s >= 1`` (expects symmetrized input)."""
    tol = _tol(rep, tol)
    if rep.dim != irreducible_dim(rep.signature):
        raise ReducibleError(f"dimension {rep.dim} is not the irreducible dimension "
                             f"{irreducible_dim(rep.signature)} of {rep.signature}")
    p = ChangeOfBasis(_rs_basis(rep, tol))
    return rep.conjugate(p.p, p.p_inv), p


# Cl(r, 0) -------------------------------------------------------------------

def abelian_plan(sig) -> AbelianPlan:
    """Commuting odd words (``mu``), free generators and expected fixed-space size."""
    sig = as_signature(sig)
    if sig.s != 0:
        raise ValueError("abelian plans are defined for Cl(r, 0) only")
    d, c = divmod(sig.r, 8)
    if c == 3:
        raise UnsupportedCError("r = 8d + 3: drop the last generator and plan for 8d + 2")
    mus: list[GeneratorWord] = []
    free: list[int] = []
    triples = ((1, 2, 3), (1, 4, 5), (2, 4, 6))
    for k in range(d):
        base = 8 * k
        prefix = tuple(range(1, base + 1))
        for t in triples:
            mus.append(GeneratorWord(prefix + tuple(base + i for i in t)))
        mus.append(GeneratorWord(prefix + tuple(base + i for i in range(1, 8))))
        free.extend(base + i for i in (1, 2, 4, 8))
    base = 8 * d
    prefix = tuple(range(1, base + 1))
    for t in triples[: max(0, min(c, 6) - 3)]:
        mus.append(GeneratorWord(prefix + tuple(base + i for i in t)))
    free.extend(base + i for i in (1, 2, 4)[: {0: 0, 1: 1, 2: 2}.get(c, 3)])
    plan = AbelianPlan(sig, tuple(mus), tuple(free), FIX_DIM[c])
    for i, u in enumerate(plan.mus):
        for v in plan.mus[:i]:
            assert commutation_sign(u, v) == 1
    return plan


def common_fixed_space(rep: Representation, plan: AbelianPlan, tol: Tolerance | None = None) -> np.ndarray:
    """Orthonormal basis of the common ``+1`` eigenspace of the plan words."""
    tol = _tol(rep, tol)
    n = rep.dim
    eye = np.eye(n)
    mats = [word_product(rep.generators, w, n) for w in plan.mus]
    for w, m in zip(plan.mus, mats):
        if residual_max(m, m.T) > tol.atol or residual_max(m @ m, eye) > tol.atol:
            raise RelationError(f"word {w} is not a symmetric involution")
    for i, m in enumerate(mats):
        for k in mats[:i]:
            if residual_max(m @ k, k @ m) > tol.atol:
                raise RelationError("plan words do not commute")
    q = eye
    for m in mats:
        q = q @ (m + eye)
    if abs(np.trace(q)) < 0.5:
        raise RankMismatchError("product of (mu + I) has zero trace")
    fixed = orth(q, tol)
    if fixed.shape[1] != plan.expected_fix_dim:
        raise RankMismatchError(f"fixed space has dimension {fixed.shape[1]}, "
                                f"expected {plan.expected_fix_dim}")
    return fixed


# base block columns as (word applied to X, sign); words are right-to-left
# index lists.  Fallbacks use mu_1 X = mu_2 X = mu_3 X = X.
_BASE_BLOCK = [
    ((), 1), ((1,), 1), ((2,), 1), ((3,), 1), ((4,), 1), ((5,), 1), ((6,), 1), ((7,), 1),
]
_BASE_FALLBACK = {3: ((1, 2), -1), 5: ((1, 4), -1), 6: ((2, 4), -1), 7: ((1, 2, 4), -1)}


def build_basis(rep: Representation, x: np.ndarray, plan: AbelianPlan,
                tol: Tolerance | None = None) -> ChangeOfBasis:
    """Basis obtained by acting on ``x`` with words in the free generators."""
    tol = _tol(rep, tol)
    gens = rep.generators
    r = rep.r
    d, c = divmod(r, 8)

    def act(word, sign, v):
        for i in reversed(word):
            v = gens[i - 1] @ v
        return sign * v

    x = np.asarray(x, dtype=float).reshape(-1)
    if d == 0 and c < 4:
        words = {0: [((), 1)],
                 1: [((), 1), ((1,), -1)],
                 2: [((), 1), ((1,), -1), ((2,), -1), ((1, 2), -1)]}[min(c, 2)]
        cols = [act(w, sg, x) for w, sg in words]
        p = np.column_stack(cols)
        doubling: list[int] = []
    else:
        cols = []
        for (w, sg) in _BASE_BLOCK:
            if w and w[0] > r:
                w, sg = _BASE_FALLBACK[w[0]]
            cols.append(act(w, sg, x))
        p = np.column_stack(cols)
        doubling = [i for i in plan.free if i > 4]
    for i in doubling:
        p = np.hstack([p, gens[i - 1] @ p])
    if p.shape[1] != rep.dim:
        raise NotOrthonormalError(f"basis has {p.shape[1]} columns for dimension {rep.dim}")
    if residual_max(p.T @ p, np.eye(rep.dim)) > tol.atol:
        raise NotOrthonormalError("basis vectors are not orthonormal")
    return ChangeOfBasis(p)


def _r0_basis(rep: Representation, tol: Tolerance, x_coeffs=None) -> np.ndarray:
    r = rep.r
    if r == 0:
        return np.eye(rep.dim)
    if r % 8 in (3, 7):
        rep = rep.truncated(r - 1)
    plan = abelian_plan(rep.signature)
    fixed = common_fixed_space(rep, plan, tol)
    if x_coeffs is None:
        x = fixed[:, 0]
    else:
        coeffs = np.asarray(x_coeffs, dtype=float)
        x = fixed @ (coeffs / np.linalg.norm(coeffs))
    return build_basis(rep, x, plan, tol).p


def _volume_scalar(rep: Representation, tol: Tolerance) -> float | None:
    v = volume(rep)
    lam = float(np.mean(np.diag(v)))
    return lam if residual_max(v, lam * np.eye(rep.dim)) <= tol.atol else None


def reference_volume_scalar(sig) -> float | None:
    """Volume scalar of the ``class_sign=+1`` canonical build (None if not scalar)."""
    rep = build_canonical(sig).rep
    return _volume_scalar(rep, Tolerance.for_dim(rep.dim))


def class_sign_of(rep: Representation, tol: Tolerance | None = None) -> int:
    """``+1``/``-1`` for the two inequivalent classes of a direct-sum algebra, else ``+1``."""
    tol = _tol(rep, tol)
    if not classify(rep.signature).is_direct_sum:
        return 1
    v = _volume_scalar(rep, tol)
    if v is None or abs(abs(v) - 1) > tol.atol:
        raise RelationError("volume element is not +-I for a direct-sum signature")
    return 1 if v * reference_volume_scalar(rep.signature) > 0 else -1


def canonicalize(rep: Representation, tol: Tolerance | None = None,
                 x_coeffs: Sequence[float] | None = None) -> CanonicalResult:
    """Canonical-T form of an irreducible representation.

    Parameters
    ----------
    rep
        Any representation satisfying the Clifford relations; generators need
        not be (skew-)symmetric.
    tol
        Tolerance; defaults to ``Tolerance.for_dim(rep.dim)``.
    x_coeffs
        Coordinates of the seed vector in the fixed-space basis for
        ``Cl(r, 0)`` factors with a fixed space of dimension > 1.  The
        output generators do not depend on it; the change of basis differs
        by an element of the commutant.

    Returns
    -------
    CanonicalResult
        ``(rep_T, change, class_sign)`` with ``change.apply(A_i) == rep_T.generators[i]``.
    """
    tol = _tol(rep, tol)
    sig = rep.signature
    if rep.relation_residual() > tol.atol:
        raise RelationError("generators violate the Clifford relations")
    if rep.dim != irreducible_dim(sig):
        raise ReducibleError(f"dimension {rep.dim} is not the irreducible dimension "
                             f"{irreducible_dim(sig)} of {sig}")
    sym, r_factor = symmetrize(rep, tol)
    class_sign = class_sign_of(sym, tol)
    p = _rs_basis(sym, tol, x_coeffs)
    rep_t = sym.conjugate(p)
    if sig.s == 0 and sig.r % 8 in (3, 7):
        gens = list(rep_t.generators)
        v = class_sign * reference_volume_scalar(sig)
        prod = np.eye(rep.dim)
        for g in gens[:-1]:
            prod = prod @ g
        gens[-1] = v * prod.T
        rep_t = Representation(sig, tuple(gens), rep.dim)
    # symmetrize conjugated by R; rescale so orthogonal input gives orthogonal P
    m = r_factor / np.sqrt(2.0 ** sig.n)
    full_p = spla.solve_triangular(m, p)
    full_inv = p.T @ m
    return CanonicalResult(rep_t, ChangeOfBasis(full_p, full_inv), class_sign)


def canonical_target(sig, class_sign: int = 1) -> Representation:
    """Canonical-T generators of a signature, rounded to exact integers."""
    res = canonicalize(build_canonical(sig, class_sign).rep)
    return res.rep.map(np.rint)


def commutant_quotient(p1: ChangeOfBasis, p2: ChangeOfBasis, rep_t: Representation,
                       tol: Tolerance | None = None) -> np.ndarray:
    """``p1^{-1} p2``, which must commute with every canonical-T generator."""
    tol = _tol(rep_t, tol)
    q = p1.p_inv @ p2.p
    for g in rep_t.generators:
        if residual_max(q @ g, g @ q) > tol.atol:
            raise NotInCommutantError("quotient does not commute with the generators")
    return q
