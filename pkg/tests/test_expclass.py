"""Exponentiable classes: matrix and commutative series, the two worked
examples, geometric structure and the boundedness characterization."""

import math

import numpy as np
import pytest

from nclab import expclass, matcore, nclp, sampling
from nclab.algebra import BlockAlgebra, BlockOperator, simple

ALG = BlockAlgebra(((2, 1.0), (3, 0.5)))


def test_matrix_series_zero_and_identity():
    alg = simple(4)
    zero = BlockOperator.zeros(alg)
    assert expclass.exp_series_matrix(zero, 1.0, 1.0).total == 0.0
    for lam in (0.5, 1.0, 2.0):
        v = expclass.exp_series_matrix(BlockOperator.identity(alg), 1.0, lam)
        assert v.total == pytest.approx(4.0 * math.expm1(lam), rel=1e-12)


def test_matrix_two_route_agreement(rng):
    for p in (1.0, 2.0, 3.0):
        a = sampling.random_operator(ALG, rng, 0.7)
        spectral = expclass.exp_series_matrix(a, p, 1.0).total
        absa = BlockOperator(ALG, [matcore.abs_matrix(b) for b in a.blocks])
        power = BlockOperator.identity(ALG)
        termwise = 0.0
        for n in range(1, 30):
            power = power @ absa
            termwise += nclp.lp_norm(power, p) / math.factorial(n)
        assert spectral == pytest.approx(termwise, rel=1e-10)


def test_single_atom_closed_form():
    f = expclass.StepMeasure(atoms=[(2.0, 0.3)])
    v = expclass.exp_series_commutative(f, 1.0, 0.9)
    assert v.total == pytest.approx(0.3 * math.expm1(0.9 * 2.0), rel=1e-14)


def test_factorial_family_series_matches_closed_form():
    for lam in (0.5, 1.0, 2.0):
        f = expclass.StepMeasure(tail=expclass.factorial_step_family())
        got = expclass.exp_series_commutative(f, 1.0, lam)
        assert got.converged
        assert got.total == pytest.approx(expclass.factorial_family_value(lam), rel=1e-11)


def test_factorial_family_brute_force_oracle():
    # independent double-sum evaluation, frozen against the closed form
    lam = 0.7
    tot = 0.0
    for n in range(1, 120):
        inner = sum(
            (lam * m) ** n * 2.0 * m / math.factorial(m + 1) for m in range(1, 60)
        )
        tot += inner / math.factorial(n)
    assert tot == pytest.approx(expclass.factorial_family_value(lam), rel=1e-12)
    f = expclass.StepMeasure(tail=expclass.factorial_step_family())
    assert expclass.exp_series_commutative(f, 1.0, lam).total == pytest.approx(
        tot, rel=1e-11
    )


def test_geometric_family_value_and_doubling_gap():
    f = expclass.StepMeasure(tail=expclass.geometric_step_family())
    got = expclass.exp_series_commutative(f, 1.0, 1.0)
    assert got.total == pytest.approx(expclass.geometric_family_value(), rel=1e-11)
    rep = expclass.divergence_check_double(threshold=1e3)
    assert rep["passed"]
    assert rep["witness"] is not None and rep["witness"] < 200
    # halving the values keeps the series convergent (balancedness)
    half = expclass.exp_series_commutative(f.scale_values(0.5), 1.0, 1.0)
    assert half.converged


def test_geometric_family_doubled_diverges_with_witness():
    f = expclass.StepMeasure(tail=expclass.geometric_step_family()).scale_values(2.0)
    verdict = expclass.exp_series_commutative(f, 1.0, 1.0, threshold=50.0)
    assert not verdict.converged
    assert verdict.divergence_witness is not None
    # partial sums are monotone up to the witness
    sums = verdict.partial_sums
    assert all(b >= a for a, b in zip(sums, sums[1:]))


def test_p_greater_one_commutative(rng):
    f = expclass.StepMeasure(atoms=[(0.5, 1.0), (1.5, 0.25)])
    v = expclass.exp_series_commutative(f, 2.0, 1.0)
    # direct termwise evaluation
    direct = sum(
        (1.0 * (1.0 * 0.5 ** (2 * n) + 0.25 * 1.5 ** (2 * n)) ** 0.5)
        / math.factorial(n)
        for n in range(1, 60)
    )
    assert v.total == pytest.approx(direct, rel=1e-9)


def test_lambda_monotonicity():
    f = expclass.StepMeasure(tail=expclass.factorial_step_family())
    small = expclass.exp_series_commutative(f, 1.0, 0.5)
    big = expclass.exp_series_commutative(f, 1.0, 1.5)
    assert all(
        s <= b + 1e-12 for s, b in zip(small.partial_sums, big.partial_sums)
    )
    assert small.total <= big.total


def test_exconvex_checks(rng):
    a = sampling.random_operator(ALG, rng, 0.6)
    b = sampling.random_operator(ALG, rng, 0.6)
    rep = expclass.exconvex_property_check(a=a, b=b, p=2.0, lam=1.0)
    assert rep["passed"], rep
    assert rep["product_split_dominated"]
    f = expclass.StepMeasure(tail=expclass.factorial_step_family())
    rep = expclass.exconvex_property_check(measures=(f, f), p=1.0, lam=1.0, mix=0.5)
    assert rep["passed"]


def test_exconvex_scalar_product_split():
    # commuting diagonal pair: the split is the scalar Hoelder inequality
    alg = simple(2)
    a = BlockOperator(alg, [np.diag([0.8, 0.3]).astype(complex)])
    b = BlockOperator(alg, [np.diag([0.2, 0.9]).astype(complex)])
    rep = expclass.exconvex_property_check(a=a, b=b, p=2.0, lam=1.0)
    assert rep["product_split_dominated"]


def test_boundedness_characterization(rng):
    alg = simple(3)
    ident = BlockOperator.identity(alg)
    rep = expclass.boundedness_characterization(a=ident)
    assert rep["passed"] and rep["constant"] == pytest.approx(3.0)
    zero = BlockOperator.zeros(alg)
    assert expclass.boundedness_characterization(a=zero)["constant"] == 0.0
    a = sampling.random_operator(ALG, rng)
    assert expclass.boundedness_characterization(a=a)["passed"]
    witness = expclass.boundedness_characterization(
        measure=expclass.StepMeasure(tail=expclass.factorial_step_family()),
        m_candidate=10.0,
    )
    assert witness["passed"] and witness["witness_n"] >= 1


def test_step_measure_json_round_trip():
    f = expclass.StepMeasure(atoms=[(1.0, 0.5)], tail=expclass.geometric_step_family())
    data = f.to_json()
    back = expclass.StepMeasure.from_json(data)
    assert back.atoms == f.atoms
    assert back.tail.name == "example62"
    with pytest.raises(expclass.ExpClassError):
        expclass.StepMeasure.from_json(
            {"atoms": [], "tail": {"family": "uncertified", "params": {}}}
        )


def test_measure_validation():
    with pytest.raises(expclass.ExpClassError):
        expclass.StepMeasure(atoms=[(-1.0, 0.5)])
    with pytest.raises(expclass.ExpClassError):
        expclass.StepMeasure(atoms=[(1.0, 0.0)])
    f = expclass.StepMeasure(atoms=[(1.0, 0.5)])
    with pytest.raises(expclass.ExpClassError):
        expclass.exp_series_commutative(f, 1.0, -1.0)
