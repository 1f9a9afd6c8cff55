import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from banachlab.errors import PreconditionError
from banachlab.norms import BasisFamily, BlockEuclidean, Lp, OrliczGauge
from banachlab.seqcore import BlockStructure, Sampler
from banachlab.uncond import (absoluteness_estimate, absoluteness_ratio, equivalence_constant,
                              equivalence_ratio, extract_block_basis, hermitian_stress, joint_basis,
                              prop26_matching, random_hilbertian_section, shift_constant, shift_ratio,
                              sign_patterns, ubc_estimate, ubc_ratio)

seeds = st.integers(0, 2**32 - 1)


def summing_basis(n, p=1.0):
    return BasisFamily.from_matrix(np.tril(np.ones((n, n))).T, Lp(p))


def test_sign_patterns_exhaustive_up_to_symmetry():
    pats, exhaustive = sign_patterns(4, Sampler(0))
    assert exhaustive and pats.shape == (8, 4)
    full = {tuple(p) for p in pats} | {tuple(-p) for p in pats}
    assert full == set(itertools.product([-1.0, 1.0], repeat=4))


def test_sign_patterns_sampled_keep_fixed_patterns():
    pats, exhaustive = sign_patterns(30, Sampler(0), exhaustive_limit=20)
    assert not exhaustive
    assert np.all(pats[0] == 1) and np.all(pats[2] == (-1.0) ** np.arange(30))


def test_ubc_oracle_l1():
    fam = BasisFamily.from_matrix([[1.0, 0.0], [1.0, 1.0]], Lp(1))
    est = ubc_estimate(fam, Sampler(0, count=64))
    assert 2.95 <= est.lower_bound <= 3.0 + 1e-12
    assert est.exhaustive_signs


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, math.inf])
def test_canonical_basis_is_unconditional(p):
    fam = BasisFamily.from_matrix(np.eye(6), Lp(p))
    assert abs(ubc_estimate(fam, Sampler(1, count=64)).lower_bound - 1.0) <= 1e-9


def test_summing_basis_grows():
    vals = [ubc_estimate(summing_basis(n), Sampler(0, count=64)).lower_bound for n in (2, 4, 8)]
    assert vals[0] < vals[1] < vals[2]


@settings(max_examples=25)
@given(seeds, st.integers(2, 6))
def test_ubc_witness_replays(seed, n):
    rng = np.random.default_rng(seed)
    fam = BasisFamily.from_matrix(rng.standard_normal((n, n)) + 3 * np.eye(n), Lp(1.5))
    est = ubc_estimate(fam, Sampler(seed, count=16))
    w = est.witness
    r = ubc_ratio(fam, w["coefficients"], w["signs"])
    assert max(r, 1.0) == pytest.approx(est.lower_bound, rel=1e-12)


def test_ubc_deterministic():
    fam = summing_basis(5, 2.0)
    a = ubc_estimate(fam, Sampler(9, count=32))
    b = ubc_estimate(fam, Sampler(9, count=32))
    assert a.lower_bound == b.lower_bound


def test_ubc_hint_width_checked():
    with pytest.raises(PreconditionError):
        ubc_estimate(summing_basis(3), Sampler(0), hints=np.ones((1, 4)))


def test_absoluteness_coordinate_blocks_l1():
    bs = BlockStructure.coordinate([1, 1, 1])
    est = absoluteness_estimate(bs, Lp(1), Sampler(0, count=32))
    assert est.lower_bound == pytest.approx(1.0, abs=1e-12)


def test_absoluteness_l2_sum_of_two_blocks():
    # blocks of width two in l_1 with Euclidean direction freedom: l_1 vs l_2 in each block
    bs = BlockStructure.coordinate([2, 2])
    est = absoluteness_estimate(bs, Lp(1), Sampler(0, count=64))
    assert 1.0 <= est.lower_bound <= 1.0 + 1e-9


def test_absoluteness_witness_replays():
    bs = BlockStructure.coordinate([2, 2, 2])
    est = absoluteness_estimate(bs, Lp(2), Sampler(4, count=16))
    w = est.witness
    if est.lower_bound > 1:
        r = absoluteness_ratio(bs, Lp(2), w["coefficients"], w["directions"])
        assert r == pytest.approx(est.lower_bound, rel=1e-12)


def test_shift_constant_of_canonical_basis_is_one():
    fam = BasisFamily.from_matrix(np.eye(6), Lp(2))
    assert shift_constant(fam, Sampler(0, count=32)).lower_bound == pytest.approx(1.0, abs=1e-12)


def test_shift_constant_weighted_basis():
    fam = BasisFamily.from_matrix(np.diag([1.0, 2.0, 4.0]), Lp(1))
    est = shift_constant(fam, Sampler(0, count=32))
    assert est.lower_bound == pytest.approx(2.0, rel=1e-9)
    assert shift_ratio(fam, est.witness["coefficients"]) == pytest.approx(est.lower_bound, rel=1e-12)


def test_shift_needs_two_vectors():
    with pytest.raises(PreconditionError):
        shift_constant(BasisFamily.from_matrix([[1.0]], Lp(2)), Sampler(0))


def test_equivalence_l1_vs_l2():
    b1 = BasisFamily.from_matrix(np.eye(4), Lp(1))
    b2 = BasisFamily.from_matrix(np.eye(4), Lp(2))
    est = equivalence_constant(b1, b2, Sampler(0, count=64))
    assert est.lower_bound == pytest.approx(2.0, rel=1e-6)
    assert equivalence_ratio(b1, b2, est.witness["coefficients"]) == pytest.approx(est.lower_bound)


@settings(max_examples=60)
@given(seeds, st.integers(1, 7))
def test_matching_equals_brute_force(seed, d):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((d, d))
    m = prop26_matching(A)
    prods = [np.prod(np.abs(A[np.arange(d), list(s)])) for s in itertools.permutations(range(d))]
    assert m.product == pytest.approx(max(prods), rel=1e-12)
    assert m.product >= m.bound * (1 - 1e-12)


def test_matching_rejects_singular():
    with pytest.raises(PreconditionError):
        prop26_matching([[1.0, 2.0], [2.0, 4.0]])


def test_matching_with_zero_entries():
    m = prop26_matching([[0.0, 3.0], [2.0, 0.0]])
    assert m.sigma == (1, 0) and m.product == 6.0


def test_extract_identity_projection():
    bs = BlockStructure.coordinate([2, 3])
    out = extract_block_basis(bs, np.eye(5))
    assert [len(p) for p in out.pivots] == [2, 3]
    assert all(a >= 0.5 - 1e-12 for a in out.alphas[0])


def test_extract_rank_one_projection():
    bs = BlockStructure.coordinate([2])
    v = np.array([1.0, 1.0]) / math.sqrt(2)
    out = extract_block_basis(bs, np.outer(v, v), norm=Lp(2))
    assert out.alphas[0] == [pytest.approx(0.5, rel=1e-14)]
    np.testing.assert_allclose(out.vectors[0][:, 0], v, rtol=1e-14)


def test_extract_rejects_non_invariant():
    bs = BlockStructure.coordinate([1, 1])
    with pytest.raises(PreconditionError):
        extract_block_basis(bs, np.array([[1.0, 0.0], [1.0, 0.0]]))


@settings(max_examples=40)
@given(seeds, st.integers(1, 8))
def test_joint_basis_residuals(seed, d):
    rng = np.random.default_rng(seed)
    X, Y = rng.standard_normal((2, d, d))
    g2 = X @ X.T + d * np.eye(d)
    gE = Y @ Y.T + d * np.eye(d)
    (B,) = joint_basis(None, [g2], [gE])
    np.testing.assert_allclose(B.T @ gE @ B, np.eye(d), atol=1e-10)
    D = B.T @ g2 @ B
    np.testing.assert_allclose(D - np.diag(np.diag(D)), 0.0, atol=1e-10 * np.abs(D).max())
    assert np.all(np.diff(np.diag(D)) >= -1e-12)


def test_joint_basis_rejects_indefinite():
    with pytest.raises(PreconditionError):
        joint_basis(None, [np.eye(2)], [np.diag([1.0, -1.0])])


def test_hermitian_stress_identity_grams_in_l2():
    bs = BlockStructure.coordinate([2, 2])
    est = hermitian_stress(bs, Lp(2), Sampler(0, count=16))
    assert est.lower_bound == pytest.approx(1.0, abs=1e-9)


def test_hermitian_stress_in_l1_exceeds_one():
    bs = BlockStructure.coordinate([2, 2])
    assert hermitian_stress(bs, Lp(1), Sampler(0, count=16)).lower_bound > 1.1


def test_random_hilbertian_section_respects_distortion():
    rng = np.random.default_rng(5)
    bs, g2, gE, dist = random_hilbertian_section(rng, 6, probes=500)
    assert bs.n_blocks == 6 and max(dist) <= 2.0
    spec = BlockEuclidean(bs, tuple(gE))
    X = np.random.default_rng(6).standard_normal((50, bs.dim))
    for n in range(bs.n_blocks):
        Xn = np.zeros_like(X)
        w = bs.window(n)
        Xn[:, w] = X[:, w] @ np.linalg.pinv(bs.blocks[n]).T @ bs.blocks[n].T
        ratio = spec.norms(Xn) / OrliczGauge().norms(Xn)
        assert ratio.min() >= 0.9 and ratio.max() <= 2.2
