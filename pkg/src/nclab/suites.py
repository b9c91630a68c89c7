"""Named verification suites over the laboratory's modules.

Each suite maps ``(scenario, rng)`` to a list of check records; the
registry order is fixed so that reports are deterministic for a given
(scenario, seed), also under parallel execution.
"""

from __future__ import annotations

import math
import time
from typing import Callable

import numpy as np

from . import dyson, expclass, kms, matcore, modular, nclp, relmod, sampling
from .algebra import (
    BlockAlgebra,
    BlockOperator,
    DensityState,
    d_arithmetic_check,
    hs_norm,
    in_D,
    matrix_units,
    trace,
    weighted_singular_values,
)
from .schemas import CheckRecord, Scenario

P_GRID = (1.0, 1.5, 2.0, 3.0, math.inf)


def _rec(suite: str, check: str, lhs: float, rhs: float, residual: float,
         tol: float, t0: float) -> CheckRecord:
    return CheckRecord(
        suite=suite,
        check=check,
        lhs=float(lhs),
        rhs=float(rhs),
        residual=float(residual),
        tolerance=float(tol),
        passed=bool(residual <= tol),
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
    )


def _scenario_algebra(scenario: Scenario) -> BlockAlgebra:
    return BlockAlgebra(
        tuple((b.dim, b.weight) for b in scenario.algebra.blocks)
    )


def _scenario_operator(alg: BlockAlgebra, data) -> BlockOperator:
    return BlockOperator.from_json(alg, data)


def _trials(scenario: Scenario, suite: str, default: int) -> int:
    return int(scenario.trials.get(suite, default))


# ---------------------------------------------------------------- lp suite

def suite_lp_inequalities(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    tolscale = scenario.tol_scale
    n_fuzz = _trials(scenario, "lp-inequalities", 10_000)
    n_opt = max(1, n_fuzz // 10)

    t0 = time.perf_counter()
    worst_tri = 0.0
    worst_holder = 0.0
    for i in range(n_fuzz):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, rng)
        b = sampling.random_operator(alg, rng)
        p = P_GRID[i % len(P_GRID)]
        na, nb = nclp.lp_norm(a, p), nclp.lp_norm(b, p)
        nsum = nclp.lp_norm(a + b, p)
        worst_tri = max(worst_tri, (nsum - na - nb) / max(1.0, na + nb))
        q = nclp.conjugate_index(p)
        rep = nclp.holder_check([a, b], [p, q], r=1.0)
        worst_holder = max(worst_holder, rep["violation"])
    for fr in (
        nclp.fuzz_report("triangle-inequality-fuzz", n_fuzz,
                         max(worst_tri, 0.0), 1e-11 * tolscale),
        nclp.fuzz_report("holder-fuzz", n_fuzz, worst_holder, 1e-11 * tolscale),
    ):
        out.append(_rec("lp-inequalities", fr["name"], fr["max_violation"], 0.0,
                        fr["max_violation"], 1e-11 * tolscale, t0))

    t0 = time.perf_counter()
    worst_attain = 0.0
    worst_unit = 0.0
    for i in range(n_opt):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, rng)
        p = (1.5, 2.0, 3.0)[i % 3]
        q = nclp.conjugate_index(p)
        opt = nclp.minkowski_optimizer(a, p)
        worst_attain = max(
            worst_attain,
            abs(abs(nclp.duality_pairing(a, opt)) - nclp.lp_norm(a, p))
            / max(1.0, nclp.lp_norm(a, p)),
        )
        worst_unit = max(worst_unit, abs(nclp.lp_norm(opt, q) - 1.0))
    out.append(_rec("lp-inequalities", "minkowski-optimizer-attains-norm",
                    worst_attain, 0.0, worst_attain, 1e-10 * tolscale, t0))
    out.append(_rec("lp-inequalities", "minkowski-optimizer-unit-dual-norm",
                    worst_unit, 0.0, worst_unit, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(min(300, n_fuzz)):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, rng)
        u = sampling.random_unitary(alg, rng)
        v = sampling.random_unitary(alg, rng)
        p = P_GRID[int(rng.integers(len(P_GRID)))]
        base = nclp.lp_norm(a, p)
        worst = max(worst, abs(nclp.lp_norm(u @ a @ v, p) - base) / max(1.0, base))
    out.append(_rec("lp-inequalities", "unitary-invariance",
                    worst, 0.0, worst, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(min(300, n_fuzz)):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, rng)
        rep = nclp.interpolation_check(a, 1.0, math.inf, 2.0)
        worst = max(worst, rep["violation"])
        rep = nclp.interpolation_check(a, 1.5, 4.0, 2.5)
        worst = max(worst, rep["violation"])
    out.append(_rec("lp-inequalities", "riesz-thorin-interpolation",
                    worst, 0.0, worst, 1e-11 * tolscale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(min(200, n_fuzz)):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        a = sampling.random_operator(alg, rng)
        factors = [sampling.random_operator(alg, rng) for _ in range(3)]
        rep = nclp.holder_check(factors, [3.0, 3.0, 3.0], r=1.0)
        worst = max(worst, rep["violation"])
        sampled = nclp.variational_norm(a, 2.0, 8, rng, include_optimizer=False)
        gap = sampled - nclp.lp_norm(a, 2.0)
        worst = max(worst, gap / max(1.0, nclp.lp_norm(a, 2.0)))
    out.append(_rec("lp-inequalities", "multi-factor-holder-and-duality",
                    worst, 0.0, max(worst, 0.0), 1e-11 * tolscale, t0))
    return out


# ------------------------------------------------------- measurability suite

def suite_measurability(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    tolscale = scenario.tol_scale
    n = _trials(scenario, "measurability", 1000)

    t0 = time.perf_counter()
    failures = 0
    done = 0
    while done < n:
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a1 = sampling.random_operator(alg, rng)
        a2 = sampling.random_operator(alg, rng)
        eps1 = _safe_epsilon(a1, rng)
        eps2 = _safe_epsilon(a2, rng)
        try:
            _, w1 = in_D(a1, eps1, 1e9)
            _, w2 = in_D(a2, eps2, 1e9)
            rep = d_arithmetic_check(a1, a2, eps1, eps2, max(w1, 1e-9), max(w2, 1e-9))
        except matcore.MatcoreError:
            continue  # resample on a cluster collision of the derived operators
        done += 1
        if not rep["passed"]:
            failures += 1
    out.append(_rec("measurability", "d-sum-product-containments",
                    failures, 0.0, float(failures), 0.0, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(n):
        alg = sampling.random_algebra(rng, max_blocks=3, max_dim=4)
        a = sampling.random_operator(alg, rng)
        b = sampling.random_operator(alg, rng)
        tab, tba = trace(a @ b), trace(b @ a)
        worst = max(worst, abs(tab - tba) / max(1.0, abs(tab)))
    out.append(_rec("measurability", "tracial-property",
                    worst, 0.0, worst, 1e-11 * tolscale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(50):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, rng, scale=1e-13)
        quad = trace(a.H @ a).real
        fro = math.sqrt(sum(float(np.sum(np.abs(b) ** 2)) for b in a.blocks))
        if quad <= min(alg.weights) * 1e-24:
            worst = max(worst, fro - 1e-12)
    out.append(_rec("measurability", "trace-faithfulness-near-null",
                    worst, 0.0, max(worst, 0.0), 0.0, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, rng)
        b = sampling.random_operator(alg, rng)
        lhs1 = abs(trace(a @ b))
        mid = nclp.lp_norm(a @ b, 1.0)
        rhs = a.op_norm() * nclp.lp_norm(b, 1.0)
        scale = max(1.0, rhs)
        worst = max(worst, (lhs1 - mid) / scale, (mid - rhs) / scale)
    out.append(_rec("measurability", "norm-trace-inequality",
                    worst, 0.0, max(worst, 0.0), 1e-11 * tolscale, t0))

    t0 = time.perf_counter()
    alg = BlockAlgebra(((2, 1.0), (3, 0.5)))
    ident = BlockOperator.identity(alg)
    lhs = trace(ident).real
    out.append(_rec("measurability", "weighted-identity-trace",
                    lhs, 3.5, abs(lhs - 3.5), 1e-12, t0))
    return out


def _safe_epsilon(a: BlockOperator, rng: np.random.Generator) -> float:
    """An epsilon between singular-value gaps of |A| (no cluster split)."""
    svals = sorted(
        float(s) for _, sv in weighted_singular_values(a) for s in sv
    )
    top = svals[-1] if svals else 1.0
    candidates = [0.5 * svals[0]] if svals and svals[0] > 1e-6 else []
    for lo, hi in zip(svals, svals[1:]):
        if hi - lo > 1e-6 * max(1.0, top):
            candidates.append(0.5 * (lo + hi))
    candidates.append(top * 1.5 + 0.1)
    return float(candidates[int(rng.integers(len(candidates)))])


# ------------------------------------------------------------- modular suite

def suite_modular(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    tolscale = scenario.tol_scale
    n = _trials(scenario, "modular", 100)

    t0 = time.perf_counter()
    worst_s = 0.0
    worst_ident = 0.0
    for _ in range(n):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        worst_s = max(worst_s, modular.s_factorization_residual(sf))
        worst_ident = max(worst_ident, modular.modular_identities_residual(sf))
    out.append(_rec("modular", "s-equals-j-delta-half",
                    worst_s, 0.0, worst_s, 1e-10 * tolscale, t0))
    out.append(_rec("modular", "modular-operator-identities",
                    worst_ident, 0.0, worst_ident, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(max(4, n // 10)):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        gens = [sampling.random_operator(alg, rng) for _ in range(5)]
        rep = modular.tomita_check(sf, gens)
        worst = max(worst, rep["commutant_residual"], rep["flow_stability_residual"])
    out.append(_rec("modular", "tomita-commutant-and-flow",
                    worst, 0.0, worst, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    worst_group = 0.0
    worst_invariant = 0.0
    for _ in range(30):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        a = sampling.random_operator(alg, rng)
        z1 = complex(rng.normal(), rng.normal()) * 0.4
        z2 = complex(rng.normal(), rng.normal()) * 0.4
        lhs = modular.modular_flow(sf, z1, modular.modular_flow(sf, z2, a))
        rhs = modular.modular_flow(sf, z1 + z2, a)
        worst_group = max(worst_group, hs_norm(lhs - rhs) / max(1.0, hs_norm(rhs)))
        t = float(rng.normal())
        omega_val = sf.rho.value(a)
        flowed = sf.rho.value(modular.modular_flow(sf, t, a))
        worst_invariant = max(worst_invariant, abs(flowed - omega_val) / max(1.0, abs(omega_val)))
    out.append(_rec("modular", "flow-group-law",
                    worst_group, 0.0, worst_group, 1e-10 * tolscale, t0))
    out.append(_rec("modular", "state-invariance-under-flow",
                    worst_invariant, 0.0, worst_invariant, 1e-11 * tolscale, t0))

    t0 = time.perf_counter()
    worst_quad = 0.0
    worst_limit = 0.0
    for _ in range(5):
        alg = sampling.random_algebra(rng, max_blocks=1, max_dim=4)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        a = sampling.random_operator(alg, rng)
        closed = modular.gaussian_smooth(sf, a, 1.0)
        quad = modular.gaussian_smooth_quadrature(sf, a, 1.0)
        worst_quad = max(worst_quad, hs_norm(closed - quad))
        worst_limit = max(worst_limit, hs_norm(modular.gaussian_smooth(sf, a, 1e8) - a))
    out.append(_rec("modular", "gaussian-smoothing-vs-quadrature",
                    worst_quad, 0.0, worst_quad, 1e-8 * tolscale, t0))
    out.append(_rec("modular", "gaussian-smoothing-large-n-limit",
                    worst_limit, 0.0, worst_limit, 1e-6 * tolscale, t0))
    return out


# --------------------------------------------------------------- cone suite

def suite_cones(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    n = _trials(scenario, "cones", 20)

    t0 = time.perf_counter()
    min_pairing = math.inf
    worst_j = 0.0
    membership = True
    for _ in range(n):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        alpha = float(rng.choice([0.0, 0.1, 0.25, 0.4, 0.5]))
        samples = [sampling.random_psd(alg, rng) for _ in range(3)]
        rep = modular.cone_checks(sf, alpha, samples)
        min_pairing = min(min_pairing, rep["min_pairing"])
        worst_j = max(worst_j, rep["j_fixedness_residual"])
        membership = membership and rep["membership_both_ways"]
    out.append(_rec("cones", "dual-pairing-nonnegative",
                    min_pairing, 0.0, max(0.0, -min_pairing), 1e-12, t0))
    out.append(_rec("cones", "self-dual-cone-j-fixed",
                    worst_j, 0.0, worst_j, 1e-10, t0))
    out.append(_rec("cones", "self-dual-membership-both-directions",
                    0.0 if membership else 1.0, 0.0,
                    0.0 if membership else 1.0, 0.0, t0))

    t0 = time.perf_counter()
    alg = sampling.random_algebra(rng, max_blocks=1, max_dim=4)
    dim = alg.dims[0]
    tracial = DensityState(BlockOperator.identity(alg) * (1.0 / (dim * alg.weights[0])))
    sf = modular.build_standard_form(tracial)
    a = sampling.random_psd(alg, rng)
    worst = max(
        hs_norm(modular.cone_element(sf, alpha, a) - modular.cone_element(sf, 0.25, a))
        for alpha in (0.0, 0.1, 0.4, 0.5)
    )
    out.append(_rec("cones", "tracial-state-alpha-independence",
                    worst, 0.0, worst, 1e-10, t0))

    t0 = time.perf_counter()
    alg = sampling.random_algebra(rng, max_blocks=1, max_dim=3)
    sf = modular.build_standard_form(sampling.random_density(alg, rng))
    omega_gap = hs_norm(
        modular.cone_element(sf, 0.25, BlockOperator.identity(alg)) - sf.omega
    )
    out.append(_rec("cones", "identity-maps-to-omega",
                    omega_gap, 0.0, omega_gap, 1e-12, t0))
    return out


# ------------------------------------------------------------- relmod suite

def suite_relmod_rn(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    tolscale = scenario.tol_scale
    n = _trials(scenario, "relmod-rn", 100)

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(n):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        phi = sampling.random_density(alg, rng).rho
        psi = sampling.random_density(alg, rng).rho
        rel = relmod.relative_modular(phi, psi)
        balanced = relmod.relative_modular_balanced(phi, psi)
        for u in _spanning_probe(alg, rng, 4):
            worst = max(worst, hs_norm(rel.apply(u) - balanced(u)))
    out.append(_rec("relmod-rn", "balanced-vs-direct-construction",
                    worst, 0.0, worst, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(20):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        phi = sampling.random_density(alg, rng).rho
        psi, ranks = _singular_psd(alg, rng)
        rel = relmod.relative_modular(phi, psi)
        predicted = sum(d * d - d * r for d, r in zip(alg.dims, ranks))
        if rel.kernel_rank != predicted:
            mismatches += 1
            continue
        numeric = _numeric_kernel_rank(rel)
        if numeric != predicted:
            mismatches += 1
    out.append(_rec("relmod-rn", "relative-modular-kernel-rank",
                    mismatches, 0.0, float(mismatches), 0.0, t0))

    t0 = time.perf_counter()
    worst_id = 0.0
    worst_range = 0.0
    for _ in range(n):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        phi = sampling.random_density(alg, rng).rho
        k = sampling.random_psd(alg, rng)
        k = k * (1.0 / (k.op_norm() * float(rng.uniform(1.05, 3.0))))
        half = BlockOperator(alg, [matcore.sqrt_psd(b, psd_tol=np.inf) for b in phi.blocks])
        psi = half @ k @ half
        h = relmod.sakai_rn(phi, psi)
        for u in _spanning_probe(alg, rng, 6):
            worst_id = max(
                worst_id, abs(trace(psi @ u) - trace(phi @ h @ u @ h))
            )
        worst_range = max(worst_range, _psd_defect(h), _psd_defect(
            BlockOperator.identity(alg) - h))
    out.append(_rec("relmod-rn", "sakai-defining-identity",
                    worst_id, 0.0, worst_id, 1e-10 * tolscale, t0))
    out.append(_rec("relmod-rn", "sakai-range-constraint",
                    worst_range, 0.0, worst_range, matcore.PSD_TOL, t0))

    t0 = time.perf_counter()
    worst_id = 0.0
    worst_cent = 0.0
    for _ in range(n):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        basis = sampling.random_unitary(alg, rng)
        dphi = _diag_density(alg, rng, basis)
        dpsi_blocks = [
            (v * rng.uniform(0.05, 1.0, d)) @ v.conj().T
            for v, d in zip(basis.blocks, alg.dims)
        ]
        dpsi = BlockOperator(alg, dpsi_blocks)
        h = relmod.pedersen_takesaki_rn(dphi, dpsi)
        for u in _spanning_probe(alg, rng, 6):
            worst_id = max(worst_id, abs(trace(dpsi @ u) - trace(dphi @ h @ u)))
        comm = h @ dphi - dphi @ h
        worst_cent = max(worst_cent, comm.op_norm())
        worst_cent = max(worst_cent, _psd_defect(h))
    out.append(_rec("relmod-rn", "pedersen-takesaki-identity",
                    worst_id, 0.0, worst_id, 1e-10 * tolscale, t0))
    out.append(_rec("relmod-rn", "pedersen-takesaki-centralizer",
                    worst_cent, 0.0, worst_cent, matcore.PSD_TOL, t0))

    t0 = time.perf_counter()
    worst_id = 0.0
    worst_range = 0.0
    for _ in range(n):
        alg = sampling.random_algebra(rng, max_blocks=1, max_dim=3)
        rho = sampling.random_density(alg, rng)
        sf = modular.build_standard_form(rho)
        psi = rho.rho * float(rng.uniform(0.1, 0.95))
        c = relmod.commutant_rn(sf, psi)
        worst_id = max(worst_id, relmod.commutant_rn_residual(sf, psi, c))
        worst_range = max(worst_range, _psd_defect(c), _psd_defect(
            BlockOperator.identity(alg) - c))
        gen = sampling.random_psd(alg, rng)
        gen = gen * (0.5 / max(1.0, gen.op_norm()))
        half = BlockOperator(alg, [matcore.sqrt_psd(b, psd_tol=np.inf) for b in rho.rho.blocks])
        psi2 = half @ gen @ half
        c2 = relmod.commutant_rn(sf, psi2)
        worst_id = max(worst_id, relmod.commutant_rn_residual(sf, psi2, c2))
    out.append(_rec("relmod-rn", "commutant-rn-sesquilinear-identity",
                    worst_id, 0.0, worst_id, 1e-10 * tolscale, t0))
    out.append(_rec("relmod-rn", "commutant-rn-range-constraint",
                    worst_range, 0.0, worst_range, matcore.PSD_TOL, t0))

    t0 = time.perf_counter()
    alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
    phi = sampling.random_density(alg, rng).rho
    rel = relmod.relative_modular(phi, phi)
    sf = modular.build_standard_form(DensityState(phi))
    worst = max(
        hs_norm(rel.apply(u) - sf.delta_power(1.0, u))
        for u in _spanning_probe(alg, rng, 8)
    )
    out.append(_rec("relmod-rn", "relative-modular-reduces-to-modular",
                    worst, 0.0, worst, 1e-12, t0))

    t0 = time.perf_counter()
    errors_ok = True
    alg_nc = BlockAlgebra(((3, 1.0),))  # noncommutative so invariance can fail
    phi_nc = sampling.random_density(alg_nc, rng).rho
    try:
        relmod.sakai_rn(phi_nc, phi_nc * 2.0)
        errors_ok = False
    except relmod.DominationError:
        pass
    try:
        relmod.pedersen_takesaki_rn(phi_nc, sampling.random_psd(alg_nc, rng))
        errors_ok = False
    except relmod.InvarianceError:
        pass
    out.append(_rec("relmod-rn", "precondition-error-paths",
                    0.0 if errors_ok else 1.0, 0.0,
                    0.0 if errors_ok else 1.0, 0.0, t0))
    return out


def _spanning_probe(alg: BlockAlgebra, rng: np.random.Generator, count: int):
    units = list(matrix_units(alg))
    if len(units) <= count:
        return units
    idx = rng.choice(len(units), size=count, replace=False)
    return [units[i] for i in idx]


def _singular_psd(alg: BlockAlgebra, rng: np.random.Generator):
    u = sampling.random_unitary(alg, rng)
    blocks, ranks = [], []
    for q, d in zip(u.blocks, alg.dims):
        r = max(1, d - 1)
        ranks.append(r)
        cols = q[:, :r]
        blocks.append(cols @ np.diag(rng.uniform(0.2, 1.0, r)) @ cols.conj().T)
    return BlockOperator(alg, blocks), ranks


def _numeric_kernel_rank(rel: relmod.RelativeModular) -> int:
    total = 0
    for pb, qb in zip(rel.phi.blocks, rel.psi_pinv.blocks):
        mat = np.kron(pb, np.eye(pb.shape[0])) @ np.kron(np.eye(qb.shape[0]), qb.T)
        svals = np.linalg.svd(mat, compute_uv=False)
        top = svals[0] if svals.size else 1.0
        total += int(np.sum(svals <= 1e-10 * max(1.0, top)))
    return total


def _diag_density(alg: BlockAlgebra, rng: np.random.Generator,
                  basis: BlockOperator) -> BlockOperator:
    blocks = [
        (v * rng.uniform(0.1, 1.0, d)) @ v.conj().T
        for v, d in zip(basis.blocks, alg.dims)
    ]
    op = BlockOperator(alg, blocks)
    return op * (1.0 / trace(op).real)


def _psd_defect(a: BlockOperator) -> float:
    return max(
        0.0,
        -min(float(np.linalg.eigvalsh((b + b.conj().T) / 2)[0]) for b in a.blocks),
    )


# ---------------------------------------------------------------- kms suite

def suite_kms(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    tolscale = scenario.tol_scale
    n = _trials(scenario, "kms", 100)
    ts = np.linspace(-1.5, 1.5, 7)

    t0 = time.perf_counter()
    worst = 0.0
    for i in range(n):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        h = sampling.random_hermitian(alg, rng)
        beta = (0.5, 1.0, 2.0)[i % 3]
        gs = kms.gibbs(h, beta)
        a = sampling.random_operator(alg, rng)
        b = sampling.random_operator(alg, rng)
        rep = kms.kms_boundary_check(gs, a, b, ts)
        worst = max(worst, rep["real_line_residual"], rep["shifted_line_residual"])
    out.append(_rec("kms", "boundary-identities-fuzz",
                    worst, 0.0, worst, 1e-10 * tolscale, t0))

    if scenario.hamiltonian is not None:
        t0 = time.perf_counter()
        alg = _scenario_algebra(scenario)
        h = _scenario_operator(alg, scenario.hamiltonian)
        gs = kms.gibbs(h, scenario.beta)
        a = sampling.random_operator(alg, rng)
        b = sampling.random_operator(alg, rng)
        rep = kms.kms_boundary_check(gs, a, b, ts)
        worst = max(rep["real_line_residual"], rep["shifted_line_residual"])
        out.append(_rec("kms", "boundary-identities-scenario-hamiltonian",
                        worst, 0.0, worst, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    eps = 0.85
    alg1 = BlockAlgebra(((2, 1.0),))
    h2 = BlockOperator(alg1, [np.diag([0.0, eps]).astype(complex)])
    gs2 = kms.gibbs(h2, 1.0)
    worst = 0.0
    for _ in range(10):
        a = sampling.random_operator(alg1, rng)
        b = sampling.random_operator(alg1, rng)
        z = complex(rng.normal(), rng.normal())
        # independent two-level closed form
        w = np.exp(-gs2.beta * np.array([0.0, eps]))
        w = w / w.sum()
        ab, bb = a.blocks[0], b.blocks[0]
        direct = (
            w[0] * (ab[0, 0] * bb[0, 0] + ab[0, 1] * bb[1, 0] * np.exp(1j * z * eps))
            + w[1] * (ab[1, 0] * bb[0, 1] * np.exp(-1j * z * eps) + ab[1, 1] * bb[1, 1])
        )
        worst = max(worst, abs(kms.kms_function(gs2, a, b, z) - direct))
    out.append(_rec("kms", "two-level-closed-form",
                    worst, 0.0, worst, 1e-12 * tolscale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(max(5, n // 10)):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        gs_mod = kms.modular_condition_system(sf)
        a = sampling.random_operator(alg, rng)
        b = sampling.random_operator(alg, rng)
        rep = kms.kms_boundary_check(gs_mod, a, b, ts)
        worst = max(worst, rep["real_line_residual"], rep["shifted_line_residual"])
        gap = hs_norm(gs_mod.density.rho - sf.rho.rho)
        worst = max(worst, gap)
    out.append(_rec("kms", "modular-condition-beta-minus-one",
                    worst, 0.0, worst, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(20):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        rho = sampling.random_density(alg, rng)
        pc = kms.p_continuous_state(alg, rho, float(rng.uniform(1.0, 4.0)))
        worst = max(worst, pc.residual, hs_norm(pc.representer - rho.rho))
    out.append(_rec("kms", "p-continuous-representer",
                    worst, 0.0, worst, 1e-11 * tolscale, t0))

    t0 = time.perf_counter()
    d = 5
    algd = BlockAlgebra(((d, 1.0),))
    mixed = DensityState(BlockOperator.identity(algd) * (1.0 / d))
    for q in (1.5, 2.0, 4.0):
        pc = kms.p_continuous_state(algd, mixed, q / (q - 1.0))
        expected = d ** (1.0 / q - 1.0)
        gap = abs(pc.norm_q - expected)
        out.append(_rec("kms", f"maximally-mixed-dual-norm-q-{q}",
                        pc.norm_q, expected, gap, 1e-12, t0))

    t0 = time.perf_counter()
    alg = sampling.random_algebra(rng, max_blocks=1, max_dim=4)
    h = sampling.random_hermitian(alg, rng)
    gs = kms.gibbs(h, 1.0)
    a = sampling.random_operator(alg, rng)
    b = sampling.random_operator(alg, rng)
    envelope = a.op_norm() * b.op_norm() * math.exp(2.0 * abs(gs.beta) * h.op_norm())
    worst = 0.0
    finite = True
    for tt in np.linspace(-2, 2, 9):
        for y in np.linspace(0, gs.beta, 5):
            val = abs(kms.kms_function(gs, a, b, complex(tt, y)))
            finite = finite and math.isfinite(val)
            worst = max(worst, val - envelope)
    out.append(_rec("kms", "strip-boundedness-envelope",
                    worst, 0.0, max(worst, 0.0) + (0.0 if finite else 1.0),
                    1e-9 * tolscale, t0))
    return out


# ---------------------------------------------------- multi-time bound suite

def suite_multi_time_bounds(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    instances = _trials(scenario, "multi-time-bounds", 50)
    points = scenario.boundary_samples

    t0 = time.perf_counter()
    violations_algebra = 0
    violations_gns = 0
    jsym_worst = 0.0
    for i in range(instances):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        nq = int(rng.integers(1, 5))
        qs = [sampling.random_operator(alg, rng, 0.6) for _ in range(nq)]
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        samples = kms.sample_closed_tube(nq, points, rng)
        rep = kms.bound_check(sf, qs, p, samples, "algebra")
        violations_algebra += rep["violations"]
        jsym = kms.gns_j_symmetry_residual(qs, p)
        jsym_worst = max(jsym_worst, jsym)
        if jsym <= 1e-10:
            rep0 = kms.bound_check(sf, qs, p, samples, "gns")
            violations_gns += rep0["violations"]
    out.append(_rec("multi-time-bounds", "algebra-norm-bound-zero-violations",
                    violations_algebra, 0.0, float(violations_algebra), 0.0, t0))
    out.append(_rec("multi-time-bounds", "gns-j-symmetry-hypothesis",
                    jsym_worst, 0.0, jsym_worst, 1e-10, t0))
    out.append(_rec("multi-time-bounds", "gns-trace-bound-zero-violations",
                    violations_gns, 0.0, float(violations_gns), 0.0, t0))

    t0 = time.perf_counter()
    d = 4
    algd = BlockAlgebra(((d, 1.0),))
    mixed = DensityState(BlockOperator.identity(algd) * (1.0 / d))
    sfd = modular.build_standard_form(mixed)
    p = 1.7
    bound = kms.algebra_norm_bound(sfd, [BlockOperator.identity(algd)], p)
    vec = kms.multi_time_vector(
        sfd, kms.MultiTimeSpec([BlockOperator.identity(algd)], [complex(0.4, -0.3)])
    )
    gap = max(abs(bound - 1.0), abs(hs_norm(vec) - 1.0))
    out.append(_rec("multi-time-bounds", "n1-maximally-mixed-equality",
                    bound, 1.0, gap, 1e-12, t0))

    t0 = time.perf_counter()
    worst_cr = 0.0
    for _ in range(5):
        alg = sampling.random_algebra(rng, max_blocks=1, max_dim=3)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        nq = int(rng.integers(1, 4))
        qs = [sampling.random_operator(alg, rng, 0.5) for _ in range(nq)]
        depth = rng.uniform(0.05, 0.12, size=nq)
        zs = [complex(rng.uniform(-0.3, 0.3), -float(dd)) for dd in depth]
        worst_cr = max(worst_cr, kms.cauchy_riemann_residual(sf, qs, zs))
    out.append(_rec("multi-time-bounds", "joint-analyticity-cauchy-riemann",
                    worst_cr, 0.0, worst_cr, 1e-6, t0))

    if scenario.perturbations:
        t0 = time.perf_counter()
        alg = _scenario_algebra(scenario)
        sf = modular.build_standard_form(sampling.random_density(alg, rng))
        qs = [_scenario_operator(alg, q) for q in scenario.perturbations]
        samples = kms.sample_closed_tube(len(qs), max(100, points // 10), rng)
        rep = kms.bound_check(sf, qs, scenario.p, samples, "algebra")
        out.append(_rec("multi-time-bounds", "bound-scenario-perturbations",
                        rep["max_excess"], 0.0, float(rep["violations"]), 0.0, t0))
    return out


# -------------------------------------------------------------- dyson suite

def suite_dyson(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    n = _trials(scenario, "dyson", 100)

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(n):
        d = int(rng.integers(2, 5))
        alg = BlockAlgebra(((d, 1.0),))
        a = sampling.random_operator(alg, rng, 0.4)
        b = sampling.random_operator(alg, rng, 0.4)
        path = dyson.OperatorPath("conjugated", a, b=b)
        t = float(rng.uniform(0.1, 1.0))
        # keep the a priori truncation budget within the term limit
        while t > 0.12 and t * path.sup_norm_bound(t) > 6.0:
            t *= 0.8
        rep = dyson.duhamel_check(a, b, t, tol=1e-8)
        worst = max(worst, rep["residual"])
    out.append(_rec("dyson", "duhamel-formula",
                    worst, 0.0, worst, 1e-8 * scenario.tol_scale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(max(5, n // 5)):
        d = int(rng.integers(2, 5))
        alg = BlockAlgebra(((d, 1.0),))
        kind = int(rng.integers(3))
        if kind == 0:
            path = dyson.OperatorPath("constant", sampling.random_operator(alg, rng, 0.5))
        elif kind == 1:
            path = dyson.OperatorPath(
                "conjugated",
                sampling.random_operator(alg, rng, 0.4),
                b=sampling.random_operator(alg, rng, 0.4),
            )
        else:
            sf = modular.build_standard_form(sampling.random_density(alg, rng))
            path = dyson.OperatorPath(
                "modular", sampling.random_hermitian(alg, rng, 0.3), sf=sf
            )
        rep = dyson.expansional_identities_check(path, float(rng.uniform(0.2, 0.8)))
        worst = max(
            worst,
            rep["left_inverse_residual"],
            rep["right_inverse_residual"],
            rep["cocycle_residual"],
        )
    out.append(_rec("dyson", "inverse-and-cocycle-identities",
                    worst, 0.0, worst, 1e-9 * scenario.tol_scale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    zero_gap = 0.0
    for _ in range(10):
        d = int(rng.integers(2, 5))
        alg = BlockAlgebra(((d, 1.0),))
        a = sampling.random_operator(alg, rng, 0.6)
        t = float(rng.uniform(0.2, 1.2))
        res = dyson.expansional_r(dyson.OperatorPath("constant", a), t, 1e-12)
        worst = max(worst, hs_norm(res.value - dyson.blockwise_expm(t * a)))
        zero = dyson.expansional_r(
            dyson.OperatorPath("constant", BlockOperator.zeros(alg)), t, 1e-12
        )
        zero_gap = max(zero_gap, hs_norm(zero.value - BlockOperator.identity(alg)))
    out.append(_rec("dyson", "constant-path-equals-matrix-exponential",
                    worst, 0.0, worst, 1e-10 * scenario.tol_scale, t0))
    out.append(_rec("dyson", "zero-path-equals-identity",
                    zero_gap, 0.0, zero_gap, 1e-14, t0))

    t0 = time.perf_counter()
    tail_violations = 0
    lp_bound_worst = 0.0
    for _ in range(10):
        d = int(rng.integers(2, 5))
        alg = BlockAlgebra(((d, 1.0),))
        h = sampling.random_hermitian(alg, rng, 0.7)
        a = sampling.random_operator(alg, rng, 0.5)
        path = dyson.OperatorPath("conjugated", a, b=1j * h)  # unitary flow
        t = float(rng.uniform(0.3, 1.0))
        res = dyson.expansional_r(path, t, 1e-11)
        r = path.sup_norm_bound(t)
        for idx, tn in enumerate(res.term_norms[1:], start=1):
            if tn > dyson._exp_tail(t * r, idx) * (1.0 + 1e-9):
                tail_violations += 1
        p = float(rng.choice([1.0, 2.0, 3.0]))
        lhs = nclp.lp_norm(res.value - BlockOperator.identity(alg), p)
        bound = sum(
            math.exp(
                nn * math.log(t) - math.lgamma(nn + 1)
            ) * nclp.lp_norm(_abs_power(a, nn), p)
            for nn in range(1, res.terms_used + 1)
        ) + (res.quad_error + 1e-13) * d
        lp_bound_worst = max(lp_bound_worst, lhs - bound)
    out.append(_rec("dyson", "tail-bound-honored-termwise",
                    tail_violations, 0.0, float(tail_violations), 0.0, t0))
    out.append(_rec("dyson", "expansional-lp-termwise-bound",
                    lp_bound_worst, 0.0, max(lp_bound_worst, 0.0),
                    1e-9 * scenario.tol_scale, t0))
    return out


def _abs_power(a: BlockOperator, n: int) -> BlockOperator:
    absa = BlockOperator(a.algebra, [matcore.abs_matrix(b) for b in a.blocks])
    out = absa
    for _ in range(n - 1):
        out = out @ absa
    return out


# ------------------------------------------------------- perturbation suite

def suite_perturbation(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    n = _trials(scenario, "perturbation", 100)
    ts = np.linspace(-0.8, 0.8, 5)

    t0 = time.perf_counter()
    worst_state = 0.0
    worst_kms = 0.0
    for _ in range(n):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=3)
        gs = kms.gibbs(sampling.random_hermitian(alg, rng), float(rng.choice([0.5, 1.0, 2.0])))
        q = sampling.random_hermitian(alg, rng, 0.7)
        rep = dyson.perturbed_kms_check(gs, q, ts)
        worst_state = max(worst_state, rep["state_match_residual"])
        worst_kms = max(worst_kms, rep["boundary_residual"])
    out.append(_rec("perturbation", "perturbed-vector-matches-thermal-state",
                    worst_state, 0.0, worst_state, 1e-10 * scenario.tol_scale, t0))
    out.append(_rec("perturbation", "perturbed-kms-boundary",
                    worst_kms, 0.0, worst_kms, 1e-9 * scenario.tol_scale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    budget_failures = 0
    for _ in range(n):
        alg = BlockAlgebra(((4, 1.0),))
        sf = modular.build_standard_form(sampling.random_density(alg, rng, min_eig=0.12))
        q = sampling.random_hermitian(alg, rng, 0.7)
        rep = dyson.perturbation_series_vs_oracle(sf, q, trunc_tol=1e-7, max_terms=40)
        worst = max(worst, rep["observed_error"])
        if not rep["budget_dominates"]:
            budget_failures += 1
    out.append(_rec("perturbation", "alternating-series-vs-oracle",
                    worst, 0.0, worst, 1e-6 * scenario.tol_scale, t0))
    out.append(_rec("perturbation", "series-error-budget-dominates",
                    budget_failures, 0.0, float(budget_failures), 0.0, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(10):
        alg = BlockAlgebra(((4, 1.0),))
        sf = modular.build_standard_form(sampling.random_density(alg, rng, min_eig=0.12))
        h = sampling.random_hermitian(alg, rng, 0.6)
        psi = dyson.expansional_vector(sf, h, tol=1e-11)
        oracle = dyson.perturbed_vector_oracle(sf, -1.0 * h)
        worst = max(worst, hs_norm(psi.value - oracle))
        series = dyson.perturbation_series(sf, -1.0 * h, 1e-11)
        worst = max(worst, hs_norm(psi.value - series.value))
    out.append(_rec("perturbation", "forward-map-consistency",
                    worst, 0.0, worst, 1e-8 * scenario.tol_scale, t0))

    t0 = time.perf_counter()
    alg = BlockAlgebra(((4, 1.0),))
    sf = modular.build_standard_form(sampling.random_density(alg, rng))
    q = sampling.random_hermitian(alg, rng, 0.8)
    lit = dyson.prefactor_series_terms(sf, q, t=0.4, lam=0.5)
    ok = lit["absolutely_convergent"] and all(
        tn <= mj * 1.0000001 + 1e-12
        for tn, mj in zip(lit["term_norms"], lit["majorants"])
    )
    out.append(_rec("perturbation", "prefactor-series-absolute-convergence",
                    0.0 if ok else 1.0, 0.0, 0.0 if ok else 1.0, 0.0, t0))
    return out


# ----------------------------------------------------------- expclass suite

def suite_expclass(scenario: Scenario, rng: np.random.Generator) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    tolscale = scenario.tol_scale

    # stated closed-form targets for the first worked example
    t0 = time.perf_counter()
    for lam in (0.5, 1.0, 2.0):
        measure = expclass.StepMeasure(tail=expclass.factorial_step_family())
        got = expclass.exp_series_commutative(measure, 1.0, lam).total
        target = (2.0 / lam) * math.expm1(math.exp(lam)) * math.expm1(lam) / math.exp(lam)
        out.append(_rec("expclass", f"factorial-family-target-form-lam-{lam}",
                        got, target, abs(got - target) / target, 1e-10 * tolscale, t0))
        derived = expclass.factorial_family_value(lam)
        out.append(_rec("expclass", f"factorial-family-closed-form-lam-{lam}",
                        got, derived, abs(got - derived) / derived, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    measure62 = expclass.StepMeasure(tail=expclass.geometric_step_family())
    got = expclass.exp_series_commutative(measure62, 1.0, 1.0).total
    target = (4.0 * math.e / (2.0 * math.e - 1.0)) * (1.0 - 1.0 / (2.0 * math.e - 1.0))
    out.append(_rec("expclass", "geometric-family-target-form",
                    got, target, abs(got - target) / target, 1e-10 * tolscale, t0))
    derived = expclass.geometric_family_value()
    out.append(_rec("expclass", "geometric-family-closed-form",
                    got, derived, abs(got - derived) / derived, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    dd = expclass.divergence_check_double(threshold=1e3)
    out.append(_rec("expclass", "geometric-family-doubled-divergence-witness",
                    float(dd["witness"] or -1), 0.0,
                    0.0 if dd["passed"] else 1.0, 0.0, t0))

    t0 = time.perf_counter()
    halved = expclass.exp_series_commutative(measure62.scale_values(0.5), 1.0, 1.0)
    out.append(_rec("expclass", "geometric-family-halved-still-converges",
                    halved.total, 0.0, 0.0 if halved.converged else 1.0, 0.0, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(_trials(scenario, "expclass", 30)):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, rng, 0.7)
        p = float(rng.choice([1.0, 2.0, 3.0]))
        spectral = expclass.exp_series_matrix(a, p, 1.0)
        absa = BlockOperator(alg, [matcore.abs_matrix(b) for b in a.blocks])
        power = BlockOperator.identity(alg)
        termwise = 0.0
        for nn in range(1, 30):
            power = power @ absa
            termwise += nclp.lp_norm(power, p) / math.factorial(nn)
        worst = max(worst, abs(spectral.total - termwise) / max(1.0, termwise))
    out.append(_rec("expclass", "matrix-two-route-agreement",
                    worst, 0.0, worst, 1e-10 * tolscale, t0))

    t0 = time.perf_counter()
    worst = 0.0
    for lam_small, lam_big in ((0.4, 1.0), (1.0, 2.0)):
        measure = expclass.StepMeasure(tail=expclass.factorial_step_family())
        small = expclass.exp_series_commutative(measure, 1.0, lam_small)
        big = expclass.exp_series_commutative(measure, 1.0, lam_big)
        pairs = zip(small.partial_sums, big.partial_sums)
        if any(s > b + 1e-12 for s, b in pairs):
            worst = max(worst, 1.0)
    out.append(_rec("expclass", "lambda-monotonicity-termwise",
                    worst, 0.0, worst, 0.0, t0))

    t0 = time.perf_counter()
    ok = True
    for _ in range(10):
        alg = sampling.random_algebra(rng, max_blocks=1, max_dim=4)
        a = sampling.random_operator(alg, rng, 0.6)
        b = sampling.random_operator(alg, rng, 0.6)
        rep = expclass.exconvex_property_check(a=a, b=b, p=2.0, lam=1.0)
        ok = ok and rep["passed"]
    m61 = expclass.StepMeasure(tail=expclass.factorial_step_family())
    rep = expclass.exconvex_property_check(measures=(m61, m61), p=1.0, lam=1.0)
    ok = ok and rep["passed"]
    out.append(_rec("expclass", "balanced-convex-product-majorants",
                    0.0 if ok else 1.0, 0.0, 0.0 if ok else 1.0, 0.0, t0))

    t0 = time.perf_counter()
    ok = True
    for _ in range(10):
        alg = sampling.random_algebra(rng, max_blocks=2, max_dim=4)
        a = sampling.random_operator(alg, rng)
        ok = ok and expclass.boundedness_characterization(a=a)["passed"]
    witness = expclass.boundedness_characterization(
        measure=expclass.StepMeasure(tail=expclass.factorial_step_family()),
        m_candidate=10.0,
    )
    ok = ok and witness["passed"]
    out.append(_rec("expclass", "boundedness-characterization",
                    0.0 if ok else 1.0, 0.0, 0.0 if ok else 1.0, 0.0, t0))
    return out


# ------------------------------------------------------- paper example suite

def suite_paper_examples(scenario: Scenario, rng: np.random.Generator | None = None) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    t0 = time.perf_counter()
    measure = expclass.StepMeasure(tail=expclass.factorial_step_family())
    got = expclass.exp_series_commutative(measure, 1.0, 1.0).total
    lam = 1.0
    target = (2.0 / lam) * math.expm1(math.exp(lam)) * math.expm1(lam) / math.exp(lam)
    out.append(_rec("paper-examples", "factorial-family-value-at-unit-rate",
                    got, target, abs(got - target) / target, 1e-10, t0))

    t0 = time.perf_counter()
    measure62 = expclass.StepMeasure(tail=expclass.geometric_step_family())
    got = expclass.exp_series_commutative(measure62, 1.0, 1.0).total
    target = (4.0 * math.e / (2.0 * math.e - 1.0)) * (1.0 - 1.0 / (2.0 * math.e - 1.0))
    out.append(_rec("paper-examples", "geometric-family-value-target-form",
                    got, target, abs(got - target) / target, 1e-10, t0))
    derived = expclass.geometric_family_value()
    out.append(_rec("paper-examples", "geometric-family-value-closed-form",
                    got, derived, abs(got - derived) / derived, 1e-10, t0))

    t0 = time.perf_counter()
    dd = expclass.divergence_check_double(threshold=1e3)
    out.append(_rec("paper-examples", "geometric-family-doubling-diverges",
                    float(dd["witness"] or -1), 0.0,
                    0.0 if dd["passed"] else 1.0, 0.0, t0))
    return out


SUITES: dict[str, Callable] = {
    "lp-inequalities": suite_lp_inequalities,
    "measurability": suite_measurability,
    "modular": suite_modular,
    "cones": suite_cones,
    "relmod-rn": suite_relmod_rn,
    "kms": suite_kms,
    "multi-time-bounds": suite_multi_time_bounds,
    "dyson": suite_dyson,
    "perturbation": suite_perturbation,
    "expclass": suite_expclass,
    "paper-examples": suite_paper_examples,
}

SUITE_NAMES = tuple(SUITES)
