import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from banachlab.errors import ConditioningError, PreconditionError
from banachlab.norms import BasisFamily, Lp, OrliczGauge
from banachlab.orlicz import G, constant_block
from banachlab.seqcore import BlockStructure, Decomposition, Sampler, SeqVector
from banachlab.verify import (k_cap, lemma41_check, lemma41_slack, lemma42_equivalence,
                              lemma42_modular_identity, lemma310_check, thm24_sandwich)

seeds = st.integers(0, 2**32 - 1)


def skewed_pair(theta):
    c, s = math.cos(theta), math.sin(theta)
    b1 = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]])
    b2 = np.array([[c, 0.0], [0.0, c], [s, 0.0], [0.0, s]])
    return Decomposition((b1, b2))


def test_g_inequality_single_term_slack():
    a, t = np.array([[0.5]]), np.array([[2.0]])
    slack, lhs = lemma41_slack(a, t, 2.0)
    assert slack[0] == pytest.approx(2.0 * 2.0 * float(G(np.array(0.5))))
    assert lhs[0] == pytest.approx(float(G(np.array(1.0))))


@settings(max_examples=40)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=8),
       st.lists(st.floats(1e-6, 1e3), min_size=8, max_size=8), st.sampled_from([1.0, 2.0, 4.0]))
def test_g_inequality_holds(a, t, p):
    a = np.array(a)
    nrm = np.sum(a ** p) ** (1 / p)
    if nrm > 1:
        a = a / nrm
    t = np.array(t[:a.size])
    slack, lhs = lemma41_slack(a, t, p)
    assert slack[0] >= -1e-12 * max(1.0, lhs[0])


@pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
def test_g_inequality_small_run(p):
    rep = lemma41_check(p, Sampler(0, count=2000), hunt=True)
    assert rep.ok and rep.instances == 2001
    assert rep.notes["hunt_lhs_over_rhs"] <= 1.0 + 1e-12


def test_g_inequality_deterministic():
    a = lemma41_check(2.0, Sampler(5, count=500))
    b = lemma41_check(2.0, Sampler(5, count=500))
    assert a.worst_slack == b.worst_slack


def test_g_inequality_rejects_small_p():
    with pytest.raises(PreconditionError):
        lemma41_check(0.5, Sampler(0))


@pytest.mark.parametrize("p,m", [(1.5, 4), (2.0, 16), (4.0, 1)])
def test_duality_inequality_small_run(p, m):
    rep = lemma310_check(p, m, Sampler(0, count=300))
    assert rep.ok and rep.instances + rep.skipped == 300


def test_duality_inequality_rejects_p_one():
    with pytest.raises(PreconditionError):
        lemma310_check(1.0, 3, Sampler(0))


@settings(max_examples=60)
@given(seeds)
def test_modular_identity_on_constant_blocks(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 6))
    blocks, start = [], 1
    for _ in range(k):
        m = int(rng.integers(1, 6))
        blocks.append(constant_block(m, start, rng.choice([-1.0, 1.0], size=m)))
        start += m
    t = rng.uniform(-1, 1, size=k)
    rep = lemma42_modular_identity(blocks, t)
    assert rep.ok


def test_modular_identity_preconditions():
    b = constant_block(2)
    with pytest.raises(PreconditionError):
        lemma42_modular_identity([b], [1.5])
    with pytest.raises(PreconditionError):
        lemma42_modular_identity([SeqVector.from_dense([2.0])], [0.5])
    with pytest.raises(PreconditionError):
        lemma42_modular_identity([b, b], [0.5, 0.5])


def test_equivalence_within_cap():
    b1 = BasisFamily.from_matrix(np.eye(4), OrliczGauge())
    b2 = BasisFamily.from_matrix(np.diag([1.0, 1.5, 1.0, 1.5]), OrliczGauge())
    est = lemma42_equivalence(b1, b2, 1.5, Sampler(0, count=64))
    assert est.notes["within_cap"] and est.notes["l2_pairing_checked"]
    assert est.lower_bound == pytest.approx(1.5, rel=1e-9)


def test_equivalence_rejects_unpaired_norms():
    b1 = BasisFamily.from_matrix(np.eye(2), Lp(2))
    b2 = BasisFamily.from_matrix(np.diag([1.0, 3.0]), Lp(2))
    with pytest.raises(PreconditionError):
        lemma42_equivalence(b1, b2, 2.0, Sampler(0))


def test_equivalence_cap_enforced():
    n = 16
    b1 = BasisFamily.from_matrix(np.eye(n), Lp(1))
    b2 = BasisFamily.from_matrix(np.eye(n), Lp(math.inf))
    with pytest.raises(ConditioningError):
        lemma42_equivalence(b1, b2, 1.0, Sampler(0, count=32))
    est = lemma42_equivalence(b1, b2, 1.0, Sampler(0, count=32), enforce=False)
    assert not est.notes["within_cap"] and est.lower_bound > k_cap(1.0)


@pytest.mark.parametrize("space", ["l1", "l2", "max"])
def test_sandwich_is_one_on_disjoint_blocks(space):
    bs = BlockStructure.coordinate([2, 1, 3])
    est = thm24_sandwich(space, bs, Sampler(0, count=64))
    assert est.lower_bound == pytest.approx(1.0, abs=1e-9)


def test_sandwich_orthogonal_blocks_in_l2():
    Q, _ = np.linalg.qr(np.random.default_rng(0).standard_normal((5, 5)))
    dec = Decomposition((Q[:, :2], Q[:, 2:]))
    assert thm24_sandwich("l2", dec, Sampler(0, count=64)).lower_bound == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("theta", [1.0, 0.5, 0.1])
def test_sandwich_skewed_blocks_closed_form(theta):
    est = thm24_sandwich("l2", skewed_pair(theta), Sampler(0, count=64))
    assert est.lower_bound == pytest.approx(1.0 / math.sqrt(1.0 - math.cos(theta)), rel=1e-6)


def test_sandwich_rejects_unknown_space():
    with pytest.raises(PreconditionError):
        thm24_sandwich("l3", BlockStructure.coordinate([1]), Sampler(0))
