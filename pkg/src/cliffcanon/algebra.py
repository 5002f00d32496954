"""Signatures, classification of Cl(r, s), and signed generator words.

Generator ordering is fixed package-wide: the ``r`` generators squaring to
``-1`` come first, followed by the ``s`` generators squaring to ``+1``.
Word indices are 1-based positions in that ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRangeError, ShapeMismatchError

FIELD_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class Signature:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError(f"signature counts must be non-negative, got ({self.r}, {self.s})")

    @property
    def n(self) -> int:
        return self.r + self.s

    def square(self, index: int) -> int:
        """Square (+1 or -1) of the generator at 1-based ``index``."""
        if not 1 <= index <= self.n:
            raise IndexOutOfRangeError(f"generator index {index} outside 1..{self.n}")
        return -1 if index <= self.r else 1

    def __str__(self):
        return f"Cl({self.r},{self.s})"


def as_signature(sig) -> Signature:
    if isinstance(sig, Signature):
        return sig
    r, s = sig
    return Signature(int(r), int(s))


@dataclass(frozen=True)
class AlgebraType:
    """``K(2^block_log2)``, or the direct sum of two copies when ``is_direct_sum``."""

    field: str
    block_log2: int
    is_direct_sum: bool

    @property
    def block_size(self) -> int:
        return 2 ** self.block_log2

    def __str__(self):
        one = f"{self.field}({self.block_size})"
        return f"{one}+{one}" if self.is_direct_sum else one


def classify(sig) -> AlgebraType:
    """Matrix algebra isomorphic to Cl(r, s)."""
    sig = as_signature(sig)
    n, m = sig.n, (sig.s - sig.r) % 8
    if m in (0, 2):
        return AlgebraType("R", n // 2, False)
    if m == 1:
        return AlgebraType("R", (n - 1) // 2, True)
    if m in (3, 7):
        return AlgebraType("C", (n - 1) // 2, False)
    if m in (4, 6):
        return AlgebraType("H", (n - 2) // 2, False)
    return AlgebraType("H", (n - 3) // 2, True)


def rep_type(sig) -> str:
    """'R', 'C' or 'H' according to ``(s - r) mod 8``."""
    sig = as_signature(sig)
    m = (sig.s - sig.r) % 8
    if m in (0, 1, 2):
        return "R"
    if m in (3, 7):
        return "C"
    return "H"


def irreducible_dim(sig) -> int:
    """Real dimension of an irreducible representation of Cl(r, s)."""
    t = classify(sig)
    return FIELD_DIM[t.field] * t.block_size


def radon_hurwitz(n: int) -> int:
    """Radon-Hurwitz number: the maximal ``r`` with Cl(r, 0) acting on R^n."""
    if n < 1:
        raise ValueError("n must be positive")
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    d, c = divmod(e, 4)
    return 8 * d + 2 ** c - 1


def volume_square(sig) -> int:
    sig = as_signature(sig)
    n = sig.n
    return -1 if (n * (n + 1) // 2 + sig.s) % 2 else 1


def volume_is_central(sig) -> bool:
    sig = as_signature(sig)
    return sig.n % 2 == 1 or sig.n == 0


@dataclass(frozen=True)
class GeneratorWord:
    """A signed product ``sign * e_{i1} e_{i2} ... e_{ik}`` with ``i1 < ... < ik``."""

    indices: tuple[int, ...] = ()
    sign: int = 1

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"word indices must be strictly increasing, got {idx}")
        if idx and idx[0] < 1:
            raise ValueError("word indices are 1-based")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def of(cls, *indices: int, sign: int = 1) -> "GeneratorWord":
        return cls(tuple(indices), sign)

    @property
    def order(self) -> int:
        return len(self.indices)

    def __neg__(self):
        return GeneratorWord(self.indices, -self.sign)

    def __str__(self):
        body = "".join(f"e{i}" for i in self.indices) or "1"
        return ("-" if self.sign < 0 else "") + body


def multiply_words(u: GeneratorWord, v: GeneratorWord, sig) -> GeneratorWord:
    """Product ``u * v`` reduced to sorted form using the relations of ``sig``."""
    sig = as_signature(sig)
    sign = u.sign * v.sign
    swaps = sum(1 for a in u.indices for b in v.indices if a > b)
    if swaps % 2:
        sign = -sign
    common = set(u.indices) & set(v.indices)
    for i in common:
        sign *= sig.square(i)
    return GeneratorWord(tuple(sorted(set(u.indices) ^ set(v.indices))), sign)


def commutation_sign(u: GeneratorWord, v: GeneratorWord) -> int:
    """``+1`` if ``u`` and ``v`` commute, ``-1`` if they anticommute.

    For orders ``a + b`` and ``a + c`` with a common factor of order ``a`` the
    sign is ``(-1)**(a*b + a*c + b*c)``; it does not depend on the signature.
    """
    a = len(set(u.indices) & set(v.indices))
    b = u.order - a
    c = v.order - a
    return -1 if (a * b + a * c + b * c) % 2 else 1


def word_square(w: GeneratorWord, sig) -> int:
    """Scalar value of ``w @ w``."""
    return multiply_words(w, w, sig).sign


def word_transpose_sign(w: GeneratorWord, sig) -> int:
    """``+1`` if ``w`` is represented by a symmetric matrix, ``-1`` if skew.

    Assumes each generator is symmetric (square +1) or skew (square -1).
    """
    sig = as_signature(sig)
    k = w.order
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    for i in w.indices:
        sign *= sig.square(i)
    return sign


def word_product(generators: Sequence[np.ndarray], w: GeneratorWord, dim: int | None = None) -> np.ndarray:
    """Evaluate ``w`` on a list of generator matrices, multiplying left to right."""
    if dim is None:
        if not generators:
            raise ShapeMismatchError("dim is required when there are no generators")
        dim = np.asarray(generators[0]).shape[0]
    out = None
    for i in w.indices:
        if not 1 <= i <= len(generators):
            raise IndexOutOfRangeError(f"generator index {i} outside 1..{len(generators)}")
        g = np.asarray(generators[i - 1])
        out = g.copy() if out is None else out @ g
    if out is None:
        out = np.eye(dim, dtype=np.result_type(*generators) if generators else float)
    return out if w.sign > 0 else -out
