"""Canonical representations of Cl(r, s) built from Pauli tensor products."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .algebra import Signature, as_signature, classify, irreducible_dim
from .errors import InvalidClassSignError, ShapeMismatchError
from .linalg import EPS, I2, SIGMA, TAU, Tolerance, kron


def _frozen(m) -> np.ndarray:
    a = np.array(m, dtype=np.result_type(np.asarray(m).dtype, float)) + 0.0  # drop -0.0
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Representation:
    """Generator matrices of a real representation, negatives first."""

    signature: Signature
    generators: tuple[np.ndarray, ...]
    dim: int = field(default=0)

    def __post_init__(self):
        sig = as_signature(self.signature)
        object.__setattr__(self, "signature", sig)
        gens = tuple(_frozen(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if len(gens) != sig.n:
            raise ShapeMismatchError(f"{sig} needs {sig.n} generators, got {len(gens)}")
        dim = self.dim or (gens[0].shape[0] if gens else 1)
        object.__setattr__(self, "dim", int(dim))
        for g in gens:
            if g.shape != (dim, dim):
                raise ShapeMismatchError(f"generator shape {g.shape} is not ({dim}, {dim})")

    @property
    def r(self) -> int:
        return self.signature.r

    @property
    def s(self) -> int:
        return self.signature.s

    def squares(self) -> list[int]:
        return [-1] * self.r + [1] * self.s

    def relation_residual(self) -> float:
        """Max entry of ``G_i^2 -/+ I`` and of ``G_i G_j + G_j G_i`` over all pairs."""
        eye = np.eye(self.dim)
        worst = 0.0
        gens = self.generators
        for i, (g, sq) in enumerate(zip(gens, self.squares())):
            worst = max(worst, float(np.max(np.abs(g @ g - sq * eye))))
            for h in gens[:i]:
                worst = max(worst, float(np.max(np.abs(g @ h + h @ g))))
        return worst

    def satisfies_relations(self, tol: Tolerance | None = None) -> bool:
        tol = tol or Tolerance.for_dim(self.dim)
        return self.relation_residual() <= tol.atol

    def map(self, fn) -> "Representation":
        return Representation(self.signature, tuple(fn(g) for g in self.generators), self.dim)

    def conjugate(self, p: np.ndarray, p_inv: np.ndarray | None = None) -> "Representation":
        """Generators ``p^{-1} G p`` (``p.T`` is used as the inverse unless given)."""
        p_inv = p.T if p_inv is None else p_inv
        return self.map(lambda g: p_inv @ g @ p)

    def truncated(self, count: int) -> "Representation":
        """First ``count`` negative-square generators only (requires ``s == 0``)."""
        if self.s != 0:
            raise ValueError("truncation is only defined for Cl(r, 0)")
        return Representation(Signature(count, 0), self.generators[:count], self.dim)


@dataclass(frozen=True)
class CanonicalPackage:
    rep: Representation
    commutant: tuple[np.ndarray, ...] = ()
    complementary: tuple[np.ndarray, ...] = ()
    class_sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "commutant", tuple(_frozen(m) for m in self.commutant))
        object.__setattr__(self, "complementary", tuple(_frozen(m) for m in self.complementary))


def volume(rep: Representation) -> np.ndarray:
    """Ordered product of all generators (identity when there are none)."""
    out = np.eye(rep.dim)
    for g in rep.generators:
        out = out @ g
    return out


# (r, 0) chain -------------------------------------------------------------

@dataclass
class _Stage:
    gens: list
    commutant: list
    complementary: list

    @property
    def dim(self):
        return self.gens[0].shape[0] if self.gens else self.complementary[0].shape[0]


@lru_cache(maxsize=None)
def _chain(d: int) -> dict[int, _Stage]:
    """Chain stages Cl(8k + c, 0), c in {0, 1, 3, 7}, for all k <= d."""
    stages: dict[int, _Stage] = {}
    a: list = []
    alpha = np.ones((1, 1))
    for k in range(d + 1):
        n = alpha.shape[0]
        stages[8 * k] = _Stage(list(a), [], [alpha])

        b = [kron(SIGMA, g) for g in a] + [kron(EPS, np.eye(n))]
        j = kron(EPS, alpha)
        beta1 = kron(TAU, np.eye(n))
        beta2 = kron(SIGMA, alpha)
        stages[8 * k + 1] = _Stage(b, [j], [beta1, beta2])

        c = [kron(SIGMA, g) for g in b] + [kron(EPS, np.eye(2 * n)), kron(TAU, j)]
        js = [kron(I2, j), kron(EPS, beta1), kron(EPS, beta2)]
        stages[8 * k + 3] = _Stage(c, js, [])

        dd = [kron(SIGMA, g) for g in c] + [kron(EPS, np.eye(4 * n))] + [kron(TAU, jj) for jj in js]
        stages[8 * k + 7] = _Stage(dd, [], [])

        a = [kron(SIGMA, g) for g in dd] + [kron(EPS, np.eye(8 * n))]
        alpha = kron(TAU, np.eye(8 * n))
    return stages


def _pairwise_anticommuting(cands: list[np.ndarray]) -> list[np.ndarray]:
    chosen: list[np.ndarray] = []
    for m in cands:
        if all(not np.any(m @ x + x @ m) for x in chosen):
            chosen.append(m)
    return chosen


def _truncation_extras(stage: _Stage, keep: int) -> tuple[list, list]:
    """Commutant and complementary generators for the first ``keep`` chain generators.

    Candidates are the words in the dropped generators, optionally multiplied by
    one commutant or complementary element of the full chain stage.  Entries
    are integers, so the filters below are exact.
    """
    kept, rest = stage.gens[:keep], stage.gens[keep:]
    eye = np.eye(stage.dim)
    words = [eye]
    for k in range(1, len(rest) + 1):
        for combo in combinations(rest, k):
            w = eye
            for g in combo:
                w = w @ g
            words.append(w)
    factors = [eye] + stage.commutant + stage.complementary
    commutant, complementary = [], []
    for f in factors:
        for w in words:
            m = w @ f
            if np.array_equal(m, eye):
                continue
            sq = m @ m
            if np.array_equal(sq, -eye) and all(np.array_equal(m @ g, g @ m) for g in kept):
                commutant.append(m)
            elif np.array_equal(sq, eye) and all(np.array_equal(m @ g, -g @ m) for g in kept):
                complementary.append(m)
    return _pairwise_anticommuting(commutant), _pairwise_anticommuting(complementary)


def _build_r0(r: int) -> CanonicalPackage:
    d, c = divmod(r, 8)
    target = {0: 0, 1: 1, 2: 3, 3: 3, 4: 7, 5: 7, 6: 7, 7: 7}[c]
    stage = _chain(d)[8 * d + target]
    sig = Signature(r, 0)
    if target == c:
        return CanonicalPackage(Representation(sig, tuple(stage.gens), stage.dim),
                                tuple(stage.commutant), tuple(stage.complementary))
    commutant, complementary = _truncation_extras(stage, r)
    return CanonicalPackage(Representation(sig, tuple(stage.gens[:r]), stage.dim),
                            tuple(commutant), tuple(complementary))


@lru_cache(maxsize=None)
def _build_plus(r: int, s: int) -> CanonicalPackage:
    if s == 0:
        return _build_r0(r)
    if r == 0 and s == 1:
        return CanonicalPackage(Representation(Signature(0, 1), (np.ones((1, 1)),), 1))
    sig = Signature(r, s)
    if r >= 1:
        half = _build_plus(r - 1, s - 1)
        rep = half.rep
        n = rep.dim
        neg = [kron(SIGMA, g) for g in rep.generators[: rep.r]] + [kron(EPS, np.eye(n))]
        pos = [kron(SIGMA, g) for g in rep.generators[rep.r:]] + [kron(TAU, np.eye(n))]
        return CanonicalPackage(
            Representation(sig, tuple(neg + pos), 2 * n),
            tuple(kron(I2, j) for j in half.commutant),
            tuple(kron(SIGMA, b) for b in half.complementary),
        )
    # r == 0, s >= 2: twisted step from Cl(s - 2, 0)
    half = _build_plus(s - 2, 0)
    rep = half.rep
    n = rep.dim
    pos = [kron(EPS, g) for g in rep.generators] + [kron(SIGMA, np.eye(n)), kron(TAU, np.eye(n))]
    return CanonicalPackage(
        Representation(sig, tuple(pos), 2 * n),
        tuple(kron(I2, j) for j in half.commutant),
        (),
    )


def build_canonical(sig, class_sign: int = 1) -> CanonicalPackage:
    """Canonical irreducible representation of Cl(r, s) with its commutant and
    complementary generators.

    ``class_sign=-1`` selects the second, inequivalent representation of a
    direct-sum algebra; it is obtained by negating the last generator.
    """
    sig = as_signature(sig)
    if class_sign not in (1, -1):
        raise InvalidClassSignError(f"class_sign must be +1 or -1, got {class_sign}")
    if class_sign == -1 and not classify(sig).is_direct_sum:
        raise InvalidClassSignError(f"{sig} is not a direct sum; class_sign must be +1")
    pkg = _build_plus(sig.r, sig.s)
    assert pkg.rep.dim == irreducible_dim(sig)
    if class_sign == 1:
        return pkg
    gens = list(pkg.rep.generators)
    gens[-1] = -gens[-1]
    return CanonicalPackage(Representation(sig, tuple(gens), pkg.rep.dim),
                            pkg.commutant, pkg.complementary, -1)


def build_complex(n: int) -> list[np.ndarray]:
    """Generators of an irreducible complex representation of Cl_c(n).

    All squares are ``-I`` and distinct generators anticommute.  Matrices
    have size ``2**(n // 2)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return [np.array([[1j]])]
    if n == 3:
        return [1j * TAU.astype(complex), EPS.astype(complex), 1j * SIGMA.astype(complex)]
    inner: Sequence[np.ndarray] = [] if n == 2 else build_complex(n - 2)
    size = inner[0].shape[0] if inner else 1
    one = np.eye(size)
    return ([np.kron(SIGMA, a) for a in inner]
            + [np.kron(EPS, one).astype(complex), 1j * np.kron(TAU, one)])
