"""Lp norms and the inequality suite."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nclab import nclp, sampling
from nclab.algebra import BlockAlgebra, BlockOperator, simple

ALG = BlockAlgebra(((2, 1.0), (3, 0.5)))
INF = math.inf


def test_identity_norm_counts_weighted_dimension():
    alg = simple(4)
    ident = BlockOperator.identity(alg)
    for p in (1.0, 1.5, 2.0, 3.0):
        assert nclp.lp_norm(ident, p) == pytest.approx(4.0 ** (1.0 / p))
    assert nclp.lp_norm(ident, INF) == pytest.approx(1.0)


def test_diag_two_norm_hand_value():
    alg = simple(2)
    a = BlockOperator(alg, [np.diag([2.0, 1.0]).astype(complex)])
    assert nclp.lp_norm(a, 2.0) == pytest.approx(math.sqrt(5.0))
    assert nclp.lp_norm(a, INF) == pytest.approx(2.0)


def test_norm_star_and_abs_invariance(rng):
    a = sampling.random_operator(ALG, rng)
    absa = a.H @ a
    from nclab.matcore import sqrt_psd

    absa = BlockOperator(ALG, [sqrt_psd(b, psd_tol=np.inf) for b in absa.blocks])
    for p in (1.0, 1.7, 2.0, 3.0, INF):
        n = nclp.lp_norm(a, p)
        assert nclp.lp_norm(a.H, p) == pytest.approx(n, rel=1e-11)
        assert nclp.lp_norm(absa, p) == pytest.approx(n, rel=1e-11)
    assert nclp.lp_norm(BlockOperator.zeros(ALG), 2.0) == 0.0


def test_p_validation():
    a = BlockOperator.identity(ALG)
    with pytest.raises(nclp.PIndexError):
        nclp.lp_norm(a, 0.5)


def test_holder_identity_equality():
    alg = simple(2)
    ident = BlockOperator.identity(alg)
    rep = nclp.holder_check([ident, ident], [2.0, 2.0], r=1.0)
    assert rep["passed"]
    assert rep["lhs"] == pytest.approx(2.0)
    assert rep["rhs"] == pytest.approx(2.0)


def test_holder_random_and_three_factors(rng):
    for _ in range(25):
        a = sampling.random_operator(ALG, rng)
        b = sampling.random_operator(ALG, rng)
        assert nclp.holder_check([a, b], [3.0, 1.5], r=1.0)["passed"]
    factors = [sampling.random_operator(ALG, rng) for _ in range(3)]
    assert nclp.holder_check(factors, [3.0, 3.0, 3.0], r=1.0)["passed"]
    with pytest.raises(nclp.PIndexError):
        nclp.holder_check(factors, [3.0, 3.0, 3.0], r=2.0)


def test_minkowski_optimizer_hand_case():
    alg = simple(2)
    a = BlockOperator(alg, [np.diag([2.0, 1.0]).astype(complex)])
    b = nclp.minkowski_optimizer(a, 2.0)
    assert np.allclose(b.blocks[0], np.diag([2.0, 1.0]) / math.sqrt(5.0))
    assert nclp.duality_pairing(a, b).real == pytest.approx(math.sqrt(5.0))


def test_minkowski_optimizer_unitary_and_rank_one(rng):
    alg = simple(3)
    u = sampling.random_unitary(alg, rng)
    for p in (1.5, 2.0, 4.0):
        b = nclp.minkowski_optimizer(u, p)
        assert abs(nclp.duality_pairing(u, b)) == pytest.approx(
            3.0 ** (1.0 / p), rel=1e-10
        )
    r1 = BlockOperator(alg, [np.outer([1, 1j, 0], [0.5, 0, -1]).astype(complex)])
    p = 2.5
    b = nclp.minkowski_optimizer(r1, p)
    assert abs(nclp.duality_pairing(r1, b)) == pytest.approx(
        nclp.lp_norm(r1, p), rel=1e-10
    )
    assert nclp.lp_norm(b, nclp.conjugate_index(p)) == pytest.approx(1.0, abs=1e-10)


def test_variational_norm(rng):
    zero = BlockOperator.zeros(ALG)
    assert nclp.variational_norm(zero, 2.0, 4, rng, include_optimizer=False) == 0.0
    a = sampling.random_operator(ALG, rng)
    exact = nclp.lp_norm(a, 3.0)
    with_opt = nclp.variational_norm(a, 3.0, 16, rng)
    assert with_opt == pytest.approx(exact, abs=1e-10)
    without = nclp.variational_norm(a, 3.0, 16, rng, include_optimizer=False)
    assert without <= exact + 1e-12


def test_interpolation(rng):
    ident = BlockOperator.identity(ALG)
    rep = nclp.interpolation_check(ident, 1.0, 4.0, 2.0)
    assert rep["passed"] and rep["lhs"] == pytest.approx(rep["rhs"], rel=1e-12)
    for _ in range(20):
        a = sampling.random_operator(ALG, rng)
        assert nclp.interpolation_check(a, 1.0, INF, 2.0)["passed"]
        assert nclp.interpolation_check(a, 1.5, 5.0, 3.0)["passed"]
    # diagonal scalar reduction, two entries by hand
    alg = simple(2)
    d = BlockOperator(alg, [np.diag([0.7, 2.2]).astype(complex)])
    rep = nclp.interpolation_check(d, 1.0, 3.0, 2.0)
    lhs_hand = (0.7 ** 2 + 2.2 ** 2) ** 0.5
    assert rep["lhs"] == pytest.approx(lhs_hand)
    assert rep["passed"]
    with pytest.raises(nclp.PIndexError):
        nclp.interpolation_check(d, 2.0, 3.0, 1.5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=8, max_size=8),
       st.lists(st.floats(-2, 2), min_size=8, max_size=8),
       st.sampled_from([1.0, 1.5, 2.0, 3.0, INF]))
def test_triangle_inequality_hypothesis(xs, ys, p):
    alg = simple(2)
    a = BlockOperator(alg, [(np.array(xs[:4]) + 1j * np.array(xs[4:])).reshape(2, 2)])
    b = BlockOperator(alg, [(np.array(ys[:4]) + 1j * np.array(ys[4:])).reshape(2, 2)])
    lhs = nclp.lp_norm(a + b, p)
    rhs = nclp.lp_norm(a, p) + nclp.lp_norm(b, p)
    assert lhs <= rhs + 1e-11 * max(1.0, rhs)
