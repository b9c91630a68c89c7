"""Gibbs states, the KMS analytic two-point function and its boundary
identities, p-continuous states, multiple-time vectors with complex times,
and the norm bounds for them.

Conventions: the Gibbs dynamics is ``tau_t(A) = e^{itH} A e^{-itH}`` with
``rho_beta = e^{-beta H} / tau(e^{-beta H})``; the modular flow
``sigma_t(A) = rho^{it} A rho^{-it}`` satisfies the same boundary
identities at beta = -1.  Both conventions are explicit in the reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import matcore, nclp
from .algebra import (
    BlockAlgebra,
    BlockOperator,
    DensityState,
    hs_norm,
    matrix_units,
    trace,
)
from .modular import (
    StandardForm,
    left_mult_superoperator,
    right_mult_superoperator,
    superoperator_schatten_norm,
)

INF = math.inf


class RegionError(ValueError):
    """Complex times outside the closed tube S_(1/2)."""


@dataclass
class GibbsSystem:
    """Hamiltonian dynamics with its thermal density e^{-beta H}/Z."""

    hamiltonian: BlockOperator
    beta: float
    energies: list[np.ndarray] = field(repr=False)
    modes: list[np.ndarray] = field(repr=False)
    density: DensityState = field(repr=False)
    partition: float = 0.0

    @property
    def algebra(self) -> BlockAlgebra:
        return self.hamiltonian.algebra

    def evolve(self, z: complex, a: BlockOperator) -> BlockOperator:
        """tau_z(A) = e^{izH} A e^{-izH} (entire in z)."""
        left, right = [], []
        for e, v in zip(self.energies, self.modes):
            left.append((v * np.exp(1j * z * e)) @ v.conj().T)
            right.append((v * np.exp(-1j * z * e)) @ v.conj().T)
        alg = self.algebra
        return BlockOperator(alg, left) @ a @ BlockOperator(alg, right)

    def state(self, a: BlockOperator) -> complex:
        return self.density.value(a)


def gibbs(hamiltonian: BlockOperator, beta: float) -> GibbsSystem:
    energies, modes = [], []
    for b in hamiltonian.blocks:
        sys = matcore.hermitian_eig(b)
        energies.append(sys.eigenvalues.real)
        modes.append(sys.eigenvectors)
    alg = hamiltonian.algebra
    boltz = BlockOperator(
        alg,
        [(v * np.exp(-beta * e)) @ v.conj().T for e, v in zip(energies, modes)],
    )
    z = trace(boltz).real
    rho = DensityState(boltz * (1.0 / z))
    return GibbsSystem(
        hamiltonian=hamiltonian,
        beta=beta,
        energies=energies,
        modes=modes,
        density=rho,
        partition=z,
    )


def kms_function(gs: GibbsSystem, a: BlockOperator, b: BlockOperator,
                 z: complex) -> complex:
    """F_{A,B}(z) = omega(A e^{izH} B e^{-izH}), exact in the eigenbasis."""
    total = 0.0 + 0.0j
    zpart = gs.partition
    for ablk, bblk, e, v, w in zip(
        a.blocks, b.blocks, gs.energies, gs.modes, gs.algebra.weights
    ):
        at = v.conj().T @ ablk @ v
        bt = v.conj().T @ bblk @ v
        boltz = np.exp(-gs.beta * e) / zpart
        phase = np.exp(1j * z * (e[None, :] - e[:, None]))
        total += w * np.sum(boltz[:, None] * at * phase * bt.T)
    return total


def kms_boundary_check(gs: GibbsSystem, a: BlockOperator, b: BlockOperator,
                       t_samples: np.ndarray) -> dict:
    """Residuals of F(t) = omega(A tau_t(B)) and
    F(t + i beta) = omega(tau_t(B) A), each computed by an independent
    matrix-product route against the eigenbasis formula."""
    if gs.beta == 0:
        raise RegionError("boundary check needs beta != 0")
    scale = max(1.0, a.op_norm() * b.op_norm())
    worst_real = 0.0
    worst_shift = 0.0
    for t in t_samples:
        bt = gs.evolve(float(t), b)
        worst_real = max(
            worst_real, abs(kms_function(gs, a, b, float(t)) - gs.state(a @ bt))
        )
        worst_shift = max(
            worst_shift,
            abs(kms_function(gs, a, b, float(t) + 1j * gs.beta) - gs.state(bt @ a)),
        )
    return {
        "dynamics": "heisenberg e^{itH} . e^{-itH}",
        "beta": gs.beta,
        "real_line_residual": worst_real / scale,
        "shifted_line_residual": worst_shift / scale,
        "passed": bool(worst_real / scale <= 1e-10 and worst_shift / scale <= 1e-10),
    }


def modular_condition_system(sf: StandardForm) -> GibbsSystem:
    """The Gibbs system whose beta = -1 KMS identities are the modular
    condition of the state of ``sf``: dynamics generated by log(rho)."""
    log_rho = BlockOperator(
        sf.algebra,
        [(v * np.log(w)) @ v.conj().T for w, v in zip(sf.eigenvalues, sf.eigenvectors)],
    )
    return gibbs(log_rho, -1.0)


@dataclass
class PContinuousState:
    """Representer H with omega(A) = tau(H A), together with its dual norm."""

    representer: BlockOperator
    p: float
    q: float
    norm_q: float
    residual: float


def p_continuous_state(alg: BlockAlgebra, omega, p: float) -> PContinuousState:
    """Solve omega(A) = tau(H A) on all matrix units.

    ``omega`` is a :class:`DensityState` or any callable functional on the
    algebra.  For the weighted trace the solution per block is the matrix
    of omega on units divided by the block weight.
    """
    value = omega.value if isinstance(omega, DensityState) else omega
    p = nclp.check_p(p)
    q = nclp.conjugate_index(p)
    blocks = []
    for k, (d, w) in enumerate(alg.blocks):
        m = np.zeros((d, d), dtype=complex)
        for i in range(d):
            for j in range(d):
                e = BlockOperator.zeros(alg)
                e.blocks[k][i, j] = 1.0
                m[j, i] = complex(value(e)) / w
        blocks.append(m)
    h = BlockOperator(alg, blocks)
    residual = max(
        abs(complex(value(e)) - trace(h @ e)) for e in matrix_units(alg)
    )
    return PContinuousState(
        representer=h, p=p, q=q, norm_q=nclp.lp_norm(h, q), residual=residual
    )


@dataclass
class MultiTimeSpec:
    """Perturbations Q_1..Q_n with complex times z_1..z_n."""

    perturbations: list[BlockOperator]
    times: list[complex]

    def __post_init__(self):
        if len(self.perturbations) != len(self.times):
            raise RegionError("need one time per perturbation")

    def in_region(self, tol: float = 1e-12) -> bool:
        """Closed tube: Im z_i <= 0 for each i, -1/2 <= sum Im z_i <= 0."""
        ims = [z.imag for z in self.times]
        total = sum(ims)
        return all(y <= tol for y in ims) and -0.5 - tol <= total <= tol


def multi_time_vector(sf: StandardForm, spec: MultiTimeSpec) -> BlockOperator:
    """Delta^{i z_n} Q_n ... Delta^{i z_1} Q_1 Omega via multiplier pairs."""
    if not spec.in_region():
        raise RegionError(f"times {spec.times} leave the closed region S_(1/2)")
    x = sf.omega
    for q, z in zip(spec.perturbations, spec.times):
        x = sf.rho_power(1j * z) @ (q @ x) @ sf.rho_power(-1j * z)
    return x


def sample_closed_tube(n: int, count: int, rng: np.random.Generator,
                  re_halfwidth: float = 1.0) -> list[list[complex]]:
    """Stratified samples of the closed region: the extreme faces with a
    single Im z_k = -1/2, the all-real face, and uniform interior points."""
    points: list[list[complex]] = []
    n_face = max(1, count // (2 * (n + 1)))
    for k in range(n):
        for _ in range(n_face):
            res = rng.uniform(-re_halfwidth, re_halfwidth, size=n)
            ims = np.zeros(n)
            ims[k] = -0.5
            points.append([complex(x, y) for x, y in zip(res, ims)])
    for _ in range(n_face):
        res = rng.uniform(-re_halfwidth, re_halfwidth, size=n)
        points.append([complex(x, 0.0) for x in res])
    while len(points) < count:
        res = rng.uniform(-re_halfwidth, re_halfwidth, size=n)
        depth = rng.uniform(0.0, 0.5)
        split = rng.dirichlet(np.ones(n))
        points.append([complex(x, -depth * s) for x, s in zip(res, split)])
    return points[:count]


def _index(scale: int, q: float) -> float:
    return INF if q == INF else float(scale) * q


def algebra_norm_bound(sf: StandardForm, perturbations: list[BlockOperator],
              p: float) -> float:
    """Norm bound for the multi-time vector with algebra Lp norms.

    n = 1 uses the 2q index of the base case (sharp: the maximally mixed
    identity perturbation attains equality); n >= 2 uses
    max over l of prod_{j<=l} ||Q_j||_{4lq} * prod_{j>l} ||Q_j||_{4(n-l)q}.
    """
    q = nclp.conjugate_index(p)
    n = len(perturbations)
    hp = p_continuous_state(sf.algebra, sf.rho, p)
    head = math.sqrt(nclp.lp_norm(hp.representer, p))
    if n == 1:
        return head * nclp.lp_norm(perturbations[0], _index(2, q))
    best = 0.0
    for split in range(n):
        prod = 1.0
        for j, op in enumerate(perturbations):
            if j < split:
                prod *= nclp.lp_norm(op, _index(4 * split, q))
            else:
                prod *= nclp.lp_norm(op, _index(4 * (n - split), q))
        best = max(best, prod)
    return head * best


def gns_j_symmetry_residual(perturbations: list[BlockOperator], p: float,
                            n: int | None = None) -> float:
    """Relative defect of ||J Q J||_{2mq} = ||Q||_{2mq}, 1 <= m <= n, with
    Schatten norms of the dense superoperators in the canonical trace of
    the GNS space."""
    q = nclp.conjugate_index(p)
    n = n or len(perturbations)
    worst = 0.0
    for op in perturbations:
        lmats = left_mult_superoperator(op)
        rmats = right_mult_superoperator(op.H)
        for m in range(1, n + 1):
            s = _index(2 * m, q)
            a = superoperator_schatten_norm(lmats, s)
            b = superoperator_schatten_norm(rmats, s)
            worst = max(worst, abs(a - b) / max(1.0, a))
    return worst


def gns_trace_bound(sf: StandardForm, perturbations: list[BlockOperator],
              p: float) -> float:
    """prod_j ||Q_j||_{2nq} in the canonical trace of the GNS space, times
    the p-norm of the rank-one representer of the state (which is 1)."""
    q = nclp.conjugate_index(p)
    n = len(perturbations)
    head = hs_norm(sf.omega)  # ||H||_p^(1/2) for the rank-one representer
    prod = 1.0
    for op in perturbations:
        prod *= superoperator_schatten_norm(
            left_mult_superoperator(op), _index(2 * n, q)
        )
    return head * prod


def bound_check(sf: StandardForm, perturbations: list[BlockOperator],
                p: float, samples: list[list[complex]],
                which: str = "algebra", slack: float = 1e-10) -> dict:
    """Evaluate ||A^n(z) Omega|| against the requested bound on every
    sampled point of the closed region."""
    if which == "algebra":
        bound = algebra_norm_bound(sf, perturbations, p)
    elif which == "gns":
        bound = gns_trace_bound(sf, perturbations, p)
    else:
        raise ValueError(f"unknown bound {which!r}")
    worst = -math.inf
    for zs in samples:
        vec = multi_time_vector(sf, MultiTimeSpec(perturbations, list(zs)))
        worst = max(worst, hs_norm(vec) - bound)
    return {
        "bound": bound,
        "max_excess": worst,
        "violations": int(worst > slack * max(1.0, bound)),
        "passed": bool(worst <= slack * max(1.0, bound)),
    }


def cauchy_riemann_residual(sf: StandardForm, perturbations: list[BlockOperator],
                            zs: list[complex], h: float = 1e-4) -> float:
    """Finite-difference del-bar residual of the multi-time vector in each
    time variable at an interior point."""
    worst = 0.0
    for k in range(len(zs)):
        def at(dz: complex) -> BlockOperator:
            shifted = list(zs)
            shifted[k] = shifted[k] + dz
            return multi_time_vector(sf, MultiTimeSpec(perturbations, shifted))

        dx = (at(h) - at(-h)) * (1.0 / (2 * h))
        dy = (at(1j * h) - at(-1j * h)) * (1.0 / (2 * h))
        worst = max(worst, hs_norm(dx + 1j * dy))
    return worst
