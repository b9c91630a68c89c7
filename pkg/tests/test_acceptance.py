"""Acceptance gate: every stated criterion at its stated tolerance and
scale, one printed pass/fail line per criterion (run with ``pytest -s``).

Two value targets (the closed-form constants of the two worked commutative
examples) are asserted exactly as stated even though the implementation
reproduces the defining series to machine precision and brute-force
evaluation of those series contradicts the stated constants except at unit
rate; see the companion derivation checks below each of them.
"""

import math
import time

import numpy as np
import pytest

from nclab import dyson, expclass, kms, matcore, modular, nclp, relmod, sampling
from nclab.algebra import (
    BlockOperator,
    DensityState,
    d_arithmetic_check,
    hs_norm,
    in_D,
    matrix_units,
    simple,
    trace,
)

RNG = np.random.default_rng(987654321)


def _line(num: int, ok: bool, desc: str, elapsed: float, budget: float):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:2d}: {status}  ({elapsed:6.2f}s / {budget:g}s)  {desc}")


def test_criterion_01_factorial_family_values():
    t0 = time.perf_counter()
    ok = True
    details = []
    for lam in (0.5, 1.0, 2.0):
        measure = expclass.StepMeasure(tail=expclass.factorial_step_family())
        got = expclass.exp_series_commutative(measure, 1.0, lam).total
        target = (2.0 / lam) * math.expm1(math.exp(lam)) * math.expm1(lam) / math.exp(lam)
        rel = abs(got - target) / target
        details.append(f"lam={lam}: rel={rel:.3e}")
        ok = ok and rel <= 1e-10
    elapsed = time.perf_counter() - t0
    _line(1, ok and elapsed < 1.0, "first worked example value grid; " + "; ".join(details), elapsed, 1.0)
    assert elapsed < 1.0
    assert ok, "series value disagrees with the stated closed form off unit rate"


def test_criterion_01_companion_series_self_consistency():
    # the same series agrees with its independent brute-force double sum
    for lam in (0.5, 1.0, 2.0):
        brute = 0.0
        for n in range(1, 140):
            inner = sum(
                (lam * m) ** n * 2.0 * m / math.factorial(m + 1)
                for m in range(1, 60)
            )
            brute += inner / math.factorial(n)
        measure = expclass.StepMeasure(tail=expclass.factorial_step_family())
        got = expclass.exp_series_commutative(measure, 1.0, lam).total
        assert got == pytest.approx(brute, rel=1e-10)
        assert got == pytest.approx(expclass.factorial_family_value(lam), rel=1e-10)


def test_criterion_02_geometric_family_value_and_doubling():
    t0 = time.perf_counter()
    measure = expclass.StepMeasure(tail=expclass.geometric_step_family())
    got = expclass.exp_series_commutative(measure, 1.0, 1.0).total
    target = (4.0 * math.e / (2.0 * math.e - 1.0)) * (
        1.0 - 1.0 / (2.0 * math.e - 1.0)
    )
    value_ok = abs(got - target) / target <= 1e-10
    doubling = expclass.divergence_check_double(threshold=1e3)
    witness_ok = doubling["witness"] is not None
    elapsed = time.perf_counter() - t0
    _line(2, value_ok and witness_ok and elapsed < 1.0,
          f"second worked example: value rel={abs(got - target) / target:.3e}, "
          f"doubling witness n={doubling['witness']}", elapsed, 1.0)
    assert elapsed < 1.0
    assert witness_ok
    assert value_ok, "series value disagrees with the stated closed form"


def test_criterion_02_companion_series_self_consistency():
    brute = 0.0
    e = math.e
    log_mass = math.log(2.0 * (1.0 - 1.0 / (2.0 * e)))
    for n in range(1, 160):
        brute += sum(
            math.exp(
                n * math.log(m) - m * math.log(2 * e) + log_mass
                - math.lgamma(n + 1)
            )
            for m in range(1, 120)
        )
    measure = expclass.StepMeasure(tail=expclass.geometric_step_family())
    got = expclass.exp_series_commutative(measure, 1.0, 1.0).total
    assert got == pytest.approx(brute, rel=1e-10)
    assert got == pytest.approx(expclass.geometric_family_value(), rel=1e-10)


def test_criterion_03_kms_boundary_identities():
    t0 = time.perf_counter()
    worst = 0.0
    ts = np.linspace(-1.2, 1.2, 5)
    for i in range(100):
        d = int(RNG.integers(2, 9))
        alg = simple(d)
        gs = kms.gibbs(sampling.random_hermitian(alg, RNG), (0.5, 1.0, 2.0)[i % 3])
        a = sampling.random_operator(alg, RNG)
        b = sampling.random_operator(alg, RNG)
        rep = kms.kms_boundary_check(gs, a, b, ts)
        worst = max(worst, rep["real_line_residual"], rep["shifted_line_residual"])
    ok = worst <= 1e-10
    elapsed = time.perf_counter() - t0
    _line(3, ok and elapsed < 10, f"KMS boundary identities, worst={worst:.3e}", elapsed, 10)
    assert ok and elapsed < 10


def test_criterion_04_tomita_takesaki():
    t0 = time.perf_counter()
    worst_s = 0.0
    worst_comm = 0.0
    pair_budget = 100
    pairs_done = 0
    for i in range(100):
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=3)
        sf = modular.build_standard_form(sampling.random_density(alg, RNG))
        worst_s = max(worst_s, modular.s_factorization_residual(sf))
        if pairs_done < pair_budget:
            gens = [sampling.random_operator(alg, RNG) for _ in range(4)]
            rep = modular.tomita_check(sf, gens)
            worst_comm = max(worst_comm, rep["commutant_residual"])
            pairs_done += len(gens) ** 2
    ok = worst_s <= 1e-10 and worst_comm <= 1e-10
    elapsed = time.perf_counter() - t0
    _line(4, ok and elapsed < 10,
          f"Tomita-Takesaki: S residual={worst_s:.3e}, commutator={worst_comm:.3e}",
          elapsed, 10)
    assert ok and elapsed < 10


def test_criterion_05_holder_minkowski_fuzz():
    t0 = time.perf_counter()
    p_grid = (1.0, 1.5, 2.0, 3.0, math.inf)
    worst = 0.0
    for i in range(10_000):
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, RNG)
        b = sampling.random_operator(alg, RNG)
        p = p_grid[i % 5]
        na, nb, ns = nclp.lp_norm(a, p), nclp.lp_norm(b, p), nclp.lp_norm(a + b, p)
        worst = max(worst, (ns - na - nb) / max(1.0, na + nb))
        rep = nclp.holder_check([a, b], [p, nclp.conjugate_index(p)], r=1.0)
        worst = max(worst, rep["violation"])
    attain = 0.0
    for i in range(1000):
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, RNG)
        p = (1.5, 2.0, 3.0)[i % 3]
        opt = nclp.minkowski_optimizer(a, p)
        attain = max(
            attain,
            abs(abs(nclp.duality_pairing(a, opt)) - nclp.lp_norm(a, p))
            / max(1.0, nclp.lp_norm(a, p)),
        )
    ok = worst <= 1e-11 and attain <= 1e-10
    elapsed = time.perf_counter() - t0
    _line(5, ok and elapsed < 60,
          f"Hoelder/Minkowski fuzz: violation={worst:.3e}, attainment={attain:.3e}",
          elapsed, 60)
    assert ok and elapsed < 60


def test_criterion_06_duhamel_and_inverse_identities():
    t0 = time.perf_counter()
    worst_duh = 0.0
    worst_inv = 0.0
    for _ in range(100):
        d = int(RNG.integers(2, 5))
        alg = simple(d)
        a = sampling.random_operator(alg, RNG, 0.4)
        b = sampling.random_operator(alg, RNG, 0.4)
        path = dyson.OperatorPath("conjugated", a, b=b)
        t = float(RNG.uniform(0.1, 1.0))
        while t > 0.12 and t * path.sup_norm_bound(t) > 6.0:
            t *= 0.8
        worst_duh = max(worst_duh, dyson.duhamel_check(a, b, t, tol=1e-8)["residual"])
    for _ in range(20):
        d = int(RNG.integers(2, 5))
        alg = simple(d)
        sf = modular.build_standard_form(sampling.random_density(alg, RNG))
        path = dyson.OperatorPath("modular", sampling.random_hermitian(alg, RNG, 0.3), sf=sf)
        rep = dyson.expansional_identities_check(path, float(RNG.uniform(0.2, 0.7)))
        worst_inv = max(
            worst_inv, rep["left_inverse_residual"], rep["right_inverse_residual"]
        )
    ok = worst_duh <= 1e-8 and worst_inv <= 1e-9
    elapsed = time.perf_counter() - t0
    _line(6, ok and elapsed < 60,
          f"Duhamel residual={worst_duh:.3e}, inverse identities={worst_inv:.3e}",
          elapsed, 60)
    assert ok and elapsed < 60


def test_criterion_07_alternating_series_vs_oracle():
    t0 = time.perf_counter()
    worst = 0.0
    budget_failures = 0
    alg = simple(4)
    for _ in range(100):
        sf = modular.build_standard_form(sampling.random_density(alg, RNG, min_eig=0.12))
        q = sampling.random_hermitian(alg, RNG, 0.7)
        rep = dyson.perturbation_series_vs_oracle(sf, q, trunc_tol=1e-7, max_terms=40)
        worst = max(worst, rep["observed_error"])
        budget_failures += 0 if rep["budget_dominates"] else 1
    ok = worst <= 1e-6 and budget_failures == 0
    elapsed = time.perf_counter() - t0
    _line(7, ok and elapsed < 120,
          f"series vs exact oracle: worst={worst:.3e}, budget failures={budget_failures}",
          elapsed, 120)
    assert ok and elapsed < 120


def test_criterion_08_araki_perturbation():
    t0 = time.perf_counter()
    worst_state = 0.0
    worst_kms = 0.0
    ts = np.linspace(-0.7, 0.7, 4)
    for _ in range(100):
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=3)
        gs = kms.gibbs(sampling.random_hermitian(alg, RNG), float(RNG.choice([0.5, 1.0, 2.0])))
        q = sampling.random_hermitian(alg, RNG, 0.7)
        rep = dyson.perturbed_kms_check(gs, q, ts)
        worst_state = max(worst_state, rep["state_match_residual"])
        worst_kms = max(worst_kms, rep["boundary_residual"])
    ok = worst_state <= 1e-10 and worst_kms <= 1e-9
    elapsed = time.perf_counter() - t0
    _line(8, ok and elapsed < 30,
          f"perturbed vector state={worst_state:.3e}, KMS residual={worst_kms:.3e}",
          elapsed, 30)
    assert ok and elapsed < 30


def test_criterion_09_multi_time_bounds():
    t0 = time.perf_counter()
    viol_algebra = 0
    viol_gns = 0
    gns_ran = 0
    for _ in range(50):
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=3)
        sf = modular.build_standard_form(sampling.random_density(alg, RNG))
        nq = int(RNG.integers(1, 5))
        qs = [sampling.random_operator(alg, RNG, 0.6) for _ in range(nq)]
        p = float(RNG.choice([1.0, 1.5, 2.0, 3.0]))
        samples = kms.sample_closed_tube(nq, 1000, RNG)
        viol_algebra += kms.bound_check(sf, qs, p, samples, "algebra")["violations"]
        if kms.gns_j_symmetry_residual(qs, p) <= 1e-10:
            gns_ran += 1
            viol_gns += kms.bound_check(sf, qs, p, samples, "gns")["violations"]
    d = 4
    algd = simple(d)
    sfd = modular.build_standard_form(
        DensityState(BlockOperator.identity(algd) * (1.0 / d))
    )
    bound = kms.algebra_norm_bound(sfd, [BlockOperator.identity(algd)], 1.7)
    vec = kms.multi_time_vector(
        sfd, kms.MultiTimeSpec([BlockOperator.identity(algd)], [complex(0.3, -0.2)])
    )
    equality_ok = abs(bound - 1.0) <= 1e-12 and abs(hs_norm(vec) - 1.0) <= 1e-12
    ok = viol_algebra == 0 and viol_gns == 0 and gns_ran > 0 and equality_ok
    elapsed = time.perf_counter() - t0
    _line(9, ok and elapsed < 120,
          f"multi-time bounds: algebra-bound violations={viol_algebra}, "
          f"gns-bound violations={viol_gns} "
          f"(ran {gns_ran}), unit equality={equality_ok}", elapsed, 120)
    assert ok and elapsed < 120


def test_criterion_10_radon_nikodym_trio():
    t0 = time.perf_counter()
    worst_id = 0.0
    worst_range = 0.0
    for _ in range(100):
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=3)
        phi = sampling.random_density(alg, RNG).rho
        # Sakai on constructed domination
        k = sampling.random_psd(alg, RNG)
        k = k * (1.0 / (k.op_norm() * 1.2))
        half = BlockOperator(alg, [matcore.sqrt_psd(b, psd_tol=np.inf) for b in phi.blocks])
        psi = half @ k @ half
        h = relmod.sakai_rn(phi, psi)
        for u in list(matrix_units(alg))[:6]:
            worst_id = max(worst_id, abs(trace(psi @ u) - trace(phi @ h @ u @ h)))
        gap = BlockOperator.identity(alg) - h
        worst_range = max(
            worst_range,
            -min(float(np.linalg.eigvalsh((b + b.conj().T) / 2)[0]) for b in gap.blocks),
            -min(float(np.linalg.eigvalsh((b + b.conj().T) / 2)[0]) for b in h.blocks),
        )
        # Pedersen-Takesaki on commuting densities
        basis = sampling.random_unitary(alg, RNG)
        dphi_blocks = [
            (v * RNG.uniform(0.1, 1.0, dd)) @ v.conj().T
            for v, dd in zip(basis.blocks, alg.dims)
        ]
        dphi = BlockOperator(alg, dphi_blocks)
        dpsi_blocks = [
            (v * RNG.uniform(0.05, 0.9, dd)) @ v.conj().T
            for v, dd in zip(basis.blocks, alg.dims)
        ]
        dpsi = BlockOperator(alg, dpsi_blocks)
        hpt = relmod.pedersen_takesaki_rn(dphi, dpsi)
        for u in list(matrix_units(alg))[:6]:
            worst_id = max(worst_id, abs(trace(dpsi @ u) - trace(dphi @ hpt @ u)))
        worst_range = max(worst_range, (hpt @ dphi - dphi @ hpt).op_norm())
        # commutant derivative on a dominated functional
        rho = sampling.random_density(alg, RNG)
        sf = modular.build_standard_form(rho)
        psi2 = rho.rho * float(RNG.uniform(0.1, 0.95))
        c = relmod.commutant_rn(sf, psi2)
        worst_id = max(worst_id, relmod.commutant_rn_residual(sf, psi2, c))
        gapc = BlockOperator.identity(alg) - c
        worst_range = max(
            worst_range,
            -min(float(np.linalg.eigvalsh((b + b.conj().T) / 2)[0]) for b in gapc.blocks),
        )
    ok = worst_id <= 1e-10 and worst_range <= matcore.PSD_TOL
    elapsed = time.perf_counter() - t0
    _line(10, ok and elapsed < 10,
          f"RN trio: identity residual={worst_id:.3e}, range defect={worst_range:.3e}",
          elapsed, 10)
    assert ok and elapsed < 10


def test_criterion_11_relative_modular():
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=3)
        phi = sampling.random_density(alg, RNG).rho
        psi = sampling.random_density(alg, RNG).rho
        rel = relmod.relative_modular(phi, psi)
        balanced = relmod.relative_modular_balanced(phi, psi)
        units = list(matrix_units(alg))
        for u in units[:: max(1, len(units) // 4)]:
            worst = max(worst, hs_norm(rel.apply(u) - balanced(u)))
    mismatches = 0
    for _ in range(20):
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=4)
        phi = sampling.random_density(alg, RNG).rho
        u = sampling.random_unitary(alg, RNG)
        blocks, ranks = [], []
        for q, dd in zip(u.blocks, alg.dims):
            r = max(1, dd - 1)
            ranks.append(r)
            cols = q[:, :r]
            blocks.append(cols @ np.diag(RNG.uniform(0.3, 1.0, r)) @ cols.conj().T)
        psi = BlockOperator(alg, blocks)
        rel = relmod.relative_modular(phi, psi)
        predicted = sum(dd * dd - dd * r for dd, r in zip(alg.dims, ranks))
        if rel.kernel_rank != predicted:
            mismatches += 1
    ok = worst <= 1e-10 and mismatches == 0
    elapsed = time.perf_counter() - t0
    _line(11, ok and elapsed < 10,
          f"relative modular: route residual={worst:.3e}, kernel mismatches={mismatches}",
          elapsed, 10)
    assert ok and elapsed < 10


def test_criterion_12_measurability_arithmetic():
    t0 = time.perf_counter()
    failures = 0
    done = 0
    while done < 1000:
        alg = sampling.random_algebra(RNG, max_blocks=2, max_dim=4)
        a1 = sampling.random_operator(alg, RNG)
        a2 = sampling.random_operator(alg, RNG)
        try:
            _, w1 = in_D(a1, 1.0, 1e9)
            _, w2 = in_D(a2, 0.7, 1e9)
            rep = d_arithmetic_check(a1, a2, 1.0, 0.7, max(w1, 1e-9), max(w2, 1e-9))
        except matcore.MatcoreError:
            continue
        done += 1
        failures += 0 if rep["passed"] else 1
    ok = failures == 0
    elapsed = time.perf_counter() - t0
    _line(12, ok and elapsed < 5,
          f"measurability arithmetic: failures={failures}/1000", elapsed, 5)
    assert ok and elapsed < 5
