"""Real Clifford algebras Cl(r, s): classification, canonical representations
and an explicit orthogonal change of basis to canonical form."""
from .algebra import (AlgebraType, GeneratorWord, Signature, classify, commutation_sign,
                      irreducible_dim, multiply_words, radon_hurwitz, rep_type, volume_is_central,
                      volume_square, word_product, word_square, word_transpose_sign)
from .canonicalize import (AbelianPlan, CanonicalResult, ChangeOfBasis, abelian_plan,
                           build_basis, canonical_target, canonicalize, canonicalize_rs,
                           class_sign_of, common_fixed_space, commutant_quotient, split_pair,
                           symmetrize, word_gram)
from .construct import CanonicalPackage, Representation, build_canonical, build_complex, volume
from .errors import *  # noqa: F401,F403
from .harness import VerifyReport, scramble, verify
from .linalg import EPS, SIGMA, TAU, Tolerance, kron, orth

__version__ = "0.1.0"
