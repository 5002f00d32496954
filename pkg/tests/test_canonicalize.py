import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffcanon.algebra import GeneratorWord, Signature, classify, word_product
from cliffcanon.canonicalize import (ChangeOfBasis, abelian_plan, build_basis, canonical_target,
                                     canonicalize, canonicalize_rs, class_sign_of,
                                     common_fixed_space, commutant_quotient, split_pair,
                                     symmetrize, word_gram)
from cliffcanon.construct import Representation, build_canonical, volume
from cliffcanon.errors import (NotInCommutantError, RankMismatchError, ReducibleError,
                               RelationError, UnsupportedCError)
from cliffcanon.harness import haar_orthogonal, scramble
from cliffcanon.linalg import EPS, SIGMA, TAU, kron, orth

from oracles import CL3_GENERATORS, CL7_GENERATORS, brute_word_gram


def w(*idx):
    return GeneratorWord(tuple(idx))


def target_rep(mats):
    return Representation(Signature(len(mats), 0), tuple(np.asarray(m, float) for m in mats))


# symmetrization

@pytest.mark.parametrize("sig", [(1, 0), (2, 1), (3, 0), (0, 3), (2, 2)])
def test_word_gram_matches_enumeration(sig):
    rng = np.random.default_rng(3)
    rep = build_canonical(sig).rep
    m = rng.standard_normal((rep.dim, rep.dim)) + 3 * np.eye(rep.dim)
    gens = rep.conjugate(m, np.linalg.inv(m)).generators
    assert np.allclose(word_gram(gens), brute_word_gram(gens))


def test_symmetrize_canonical_is_identity():
    rep = build_canonical((2, 3)).rep
    assert np.array_equal(word_gram(rep.generators), 2 ** 5 * np.eye(rep.dim))
    sym, r = symmetrize(rep)
    assert np.allclose(r, np.sqrt(32) * np.eye(rep.dim))
    for a, b in zip(sym.generators, rep.generators):
        assert np.allclose(a, b)


def test_symmetrize_hand_example():
    rep = Representation(Signature(1, 0), (np.array([[0.0, 2.0], [-0.5, 0.0]]),))
    s = word_gram(rep.generators)
    assert np.allclose(s, np.diag([1.25, 5.0]))
    sym, r = symmetrize(rep)
    assert np.allclose(r, np.diag([np.sqrt(5) / 2, np.sqrt(5)]))
    assert np.allclose(sym.generators[0], EPS)


# generator pairs

def test_split_pair_examples():
    assert np.allclose(split_pair(None, SIGMA, TAU, "i").p, np.eye(2))
    assert np.allclose(split_pair(EPS, SIGMA, None, "ii").p, np.eye(2))


@pytest.mark.parametrize("seed", range(5))
def test_split_pair_random(seed):
    q = haar_orthogonal(4, np.random.default_rng(seed))
    a = q.T @ kron(EPS, np.eye(2)) @ q
    b = q.T @ kron(SIGMA, np.eye(2)) @ q
    p = split_pair(a, b, None, "ii")
    assert np.allclose(p.apply(a), kron(EPS, np.eye(2)))
    assert np.allclose(p.apply(b), kron(SIGMA, np.eye(2)))
    c = q.T @ kron(TAU, np.eye(2)) @ q
    p = split_pair(a, c, None, "iii")
    assert np.allclose(p.apply(a), kron(EPS, np.eye(2)))
    assert np.allclose(p.apply(c), kron(TAU, np.eye(2)))
    p = split_pair(None, b, c, "i")
    assert np.allclose(p.apply(b), kron(SIGMA, np.eye(2)))
    assert np.allclose(p.apply(c), kron(TAU, np.eye(2)))


def test_split_pair_bad_mode():
    with pytest.raises(ValueError):
        split_pair(EPS, SIGMA, None, "iv")


def test_canonicalize_rs_examples():
    rep = build_canonical((1, 1)).rep
    rep_t, p = canonicalize_rs(rep)
    assert np.allclose(p.p, np.eye(2))
    rep = build_canonical((1, 3)).rep
    rep_t, p = canonicalize_rs(scramble(rep, 11))
    assert np.allclose(rep_t.generators[-1], kron(TAU, np.eye(rep.dim // 2)))
    assert np.allclose(rep_t.generators[0], kron(EPS, np.eye(rep.dim // 2)))
    assert p.orthogonality_residual() < 1e-12


def test_canonicalize_rs_reducible():
    rep = Representation(Signature(1, 1), (kron(np.eye(2), EPS), kron(np.eye(2), TAU)))
    with pytest.raises(ReducibleError):
        canonicalize_rs(rep)


# abelian plans

def test_abelian_plan_examples():
    p7 = abelian_plan((7, 0))
    assert p7.mus == (w(1, 2, 3), w(1, 4, 5), w(2, 4, 6))
    assert p7.free == (1, 2, 4) and p7.expected_fix_dim == 1
    p8 = abelian_plan((8, 0))
    assert p8.mus == p7.mus + (w(*range(1, 8)),)
    assert p8.free == (1, 2, 4, 8) and p8.expected_fix_dim == 1
    p9 = abelian_plan((9, 0))
    assert p9.mus == p8.mus and p9.free == (1, 2, 4, 8, 9) and p9.expected_fix_dim == 2
    p15 = abelian_plan((15, 0))
    head = tuple(range(1, 9))
    assert p15.mus[4:] == (w(*head, 9, 10, 11), w(*head, 9, 12, 13), w(*head, 10, 12, 14))
    assert p15.free == (1, 2, 4, 8, 9, 10, 12) and p15.expected_fix_dim == 1


def test_abelian_plan_rejects():
    with pytest.raises(UnsupportedCError):
        abelian_plan((11, 0))
    with pytest.raises(ValueError):
        abelian_plan((2, 1))


def test_fixed_space_cl7_target():
    fixed = common_fixed_space(target_rep(CL7_GENERATORS[:6]), abelian_plan((6, 0)))
    assert fixed.shape == (8, 1)
    assert np.allclose(np.abs(fixed[:, 0]), np.eye(8)[0])


def test_fixed_space_product_orth():
    rep = target_rep(CL7_GENERATORS)
    q = np.eye(8)
    for m in abelian_plan((7, 0)).mus:
        q = q @ (word_product(rep.generators, m) + np.eye(8))
    x = orth(q)
    assert x.shape == (8, 1) and np.allclose(np.abs(x[:, 0]), np.eye(8)[0])


@pytest.mark.parametrize("r, k", [(9, 2), (10, 4), (12, 4), (13, 2), (14, 1), (15, 1)])
def test_fixed_space_dims(r, k):
    rep = build_canonical((r, 0)).rep
    sig_r = r - 1 if r % 8 in (3, 7) else r
    fixed = common_fixed_space(rep.truncated(sig_r), abelian_plan((sig_r, 0)))
    assert fixed.shape[1] == k
    assert np.allclose(fixed.T @ fixed, np.eye(k))


def test_fixed_space_cl11_rank_4():
    # the 8d+3 case drops its last generator and plans for 8d+2
    rep = build_canonical((11, 0)).rep.truncated(10)
    assert common_fixed_space(rep, abelian_plan((10, 0))).shape[1] == 4


def test_fixed_space_wrong_rank():
    plan = abelian_plan((6, 0))
    bad = plan.__class__(plan.signature, plan.mus, plan.free, 2)
    with pytest.raises(RankMismatchError):
        common_fixed_space(target_rep(CL7_GENERATORS[:6]), bad)


# bases

def test_build_basis_cl3_signs():
    rep = build_canonical((3, 0)).rep
    sym = rep.truncated(2)
    x = common_fixed_space(sym, abelian_plan((2, 0)))[:, 0]
    a1, a2, _ = rep.generators
    p = build_basis(sym, x, abelian_plan((2, 0))).p
    assert np.allclose(p, np.column_stack([x, -a1 @ x, -a2 @ x, -a1 @ a2 @ x]))
    for g, ref in zip(rep.conjugate(p).generators, CL3_GENERATORS):
        assert np.allclose(g, ref)


def test_build_basis_cl7():
    rep = scramble(build_canonical((7, 0)).rep, 5)
    six = rep.truncated(6)
    x = common_fixed_space(six, abelian_plan((6, 0)))[:, 0]
    p = build_basis(six, x, abelian_plan((6, 0))).p
    assert np.allclose(p[:, 0], x)
    got = rep.conjugate(p).generators
    for g, ref in zip(got[:6], CL7_GENERATORS[:6]):
        assert np.allclose(g, ref, atol=1e-10)
    assert np.allclose(got[3], -kron(EPS, np.eye(4)))


def test_build_basis_cl8_doubles_cl7():
    rep = scramble(build_canonical((8, 0)).rep, 9)
    plan8 = abelian_plan((8, 0))
    x = common_fixed_space(rep, plan8)[:, 0]
    p8 = build_basis(rep, x, plan8).p
    p7 = np.column_stack([x] + [a @ x for a in rep.generators[:7]])
    assert np.allclose(p8, np.hstack([p7, rep.generators[7] @ p7]))


# full pipeline

@pytest.mark.parametrize("sig", [(3, 0), (7, 0), (9, 0), (2, 2), (0, 3), (1, 0)])
def test_canonicalize_idempotent_on_target(sig):
    target = canonical_target(sig)
    res = canonicalize(target)
    for a, b in zip(res.rep.generators, target.generators):
        assert np.allclose(a, b, atol=1e-12)
    assert res.change.orthogonality_residual() < 1e-12
    for a in target.generators:
        assert np.allclose(res.change.apply(a), a, atol=1e-12)


def test_canonicalize_cl7_target():
    res = canonicalize(scramble(build_canonical((7, 0)).rep, 1234))
    for g, ref in zip(res.rep.generators, CL7_GENERATORS):
        assert np.max(np.abs(g - ref)) <= 1e-8


def test_canonicalize_cl3_classes():
    plus = canonical_target((3, 0))
    minus = canonical_target((3, 0), -1)
    for g, ref in zip(plus.generators, CL3_GENERATORS):
        assert np.array_equal(g, ref)
    res = canonicalize(scramble(build_canonical((3, 0), -1).rep, 77))
    assert res.class_sign == -1
    for a, b in zip(res.rep.generators, minus.generators):
        assert np.allclose(a, b, atol=1e-12)
    assert np.array_equal(volume(minus), np.eye(4))
    assert np.array_equal(minus.generators[2], -plus.generators[2])


def test_canonicalize_apply_matches_output():
    rep = scramble(build_canonical((4, 2)).rep, 8)
    res = canonicalize(rep)
    for a, t in zip(rep.generators, res.rep.generators):
        assert np.allclose(res.change.apply(a), t, atol=1e-10)


def test_canonicalize_rejects_reducible():
    g = build_canonical((2, 0)).rep.generators
    rep = Representation(Signature(2, 0), tuple(np.kron(np.eye(2), a) for a in g))
    assert rep.satisfies_relations()
    with pytest.raises(ReducibleError):
        canonicalize(rep)


def test_canonicalize_rejects_bad_relations():
    g = list(build_canonical((2, 1)).rep.generators)
    g[1] = g[0]
    with pytest.raises(RelationError):
        canonicalize(Representation(Signature(2, 1), tuple(g)))


def test_class_sign_of_conjugation_invariant():
    for sign in (1, -1):
        rep = build_canonical((4, 1), sign).rep
        assert class_sign_of(scramble(rep, 3)) == sign
    assert class_sign_of(build_canonical((2, 0)).rep) == 1


# commutant quotient

def test_quotient_same_basis():
    res = canonicalize(scramble(build_canonical((5, 0)).rep, 2))
    assert np.allclose(commutant_quotient(res.change, res.change, res.rep), np.eye(res.rep.dim))


def test_quotient_cl9_two_seeds():
    rep = scramble(build_canonical((9, 0)).rep, 21)
    r1 = canonicalize(rep, x_coeffs=[1.0, 0.0])
    r2 = canonicalize(rep, x_coeffs=[0.3, -0.8])
    for a, b in zip(r1.rep.generators, r2.rep.generators):
        assert np.allclose(a, b, atol=1e-10)
    q = commutant_quotient(r1.change, r2.change, r1.rep)
    assert not np.allclose(q, np.eye(q.shape[0]))
    assert np.allclose(q.T @ q, np.eye(q.shape[0]))


def test_quotient_cl8_is_sign():
    rep = scramble(build_canonical((8, 0)).rep, 4)
    r1 = canonicalize(rep)
    r2 = canonicalize(rep, x_coeffs=[-2.0])
    q = commutant_quotient(r1.change, r2.change, r1.rep)
    assert np.allclose(q, -np.eye(16))


def test_quotient_rejects_non_commuting():
    res = canonicalize(build_canonical((2, 1)).rep)
    other = ChangeOfBasis(kron(SIGMA, np.eye(2)))
    with pytest.raises(NotInCommutantError):
        commutant_quotient(res.change, other, res.rep)


def test_change_of_basis_compose():
    rng = np.random.default_rng(0)
    p = ChangeOfBasis(haar_orthogonal(4, rng))
    q = ChangeOfBasis(haar_orthogonal(4, rng))
    a = rng.standard_normal((4, 4))
    assert np.allclose(p.compose(q).apply(a), q.apply(p.apply(a)))


SIGS = [Signature(r, s) for r in range(9) for s in range(9) if 1 <= r + s <= 8]


@settings(max_examples=60, deadline=None)
@given(sig=st.sampled_from(SIGS), seed=st.integers(0, 2**64 - 1), flip=st.booleans())
def test_roundtrip_independent_of_scramble(sig, seed, flip):
    sign = -1 if flip and classify(sig).is_direct_sum else 1
    target = canonical_target(sig, sign)
    res = canonicalize(scramble(build_canonical(sig, sign).rep, seed))
    assert res.class_sign == sign
    for a, b in zip(res.rep.generators, target.generators):
        assert np.max(np.abs(a - b)) <= 1e-8
    assert res.change.orthogonality_residual() <= 1e-10 * target.dim
