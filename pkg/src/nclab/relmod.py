"""Balanced weights on 2x2 operator matrices, relative modular operators,
and the three Radon-Nikodym constructions (commutant, Sakai,
Pedersen-Takesaki).

The relative modular operator of a pair of positive functionals
``(phi, psi)`` acts on the GNS space as ``X -> rho_phi X rho_psi^(-1)``
(pseudo-inverse on the support when psi is singular), and is cross-checked
against the corner of the modular operator of the balanced weight
``theta(A) = phi(A_11) + psi(A_22)`` on the doubled algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .algebra import (
    AlgebraError,
    BlockAlgebra,
    BlockOperator,
    DensityState,
    hs_inner,
    matrix_units,
    trace,
)
from .modular import StandardForm, build_standard_form


class RadonNikodymError(ValueError):
    pass


class DominationError(RadonNikodymError):
    """psi <= phi fails; carries the most violating eigenvalue."""

    def __init__(self, violation: float):
        super().__init__(f"psi <= phi fails by eigenvalue {violation:.3e}")
        self.violation = violation


class InvarianceError(RadonNikodymError):
    """psi is not invariant under the modular group of phi."""

    def __init__(self, commutator_norm: float):
        super().__init__(
            f"[rho_psi, rho_phi] has norm {commutator_norm:.3e}; "
            "psi is not modular-invariant for phi"
        )
        self.commutator_norm = commutator_norm


def doubled_algebra(alg: BlockAlgebra) -> BlockAlgebra:
    """M_2(M): every block dimension doubled, weights kept."""
    return BlockAlgebra(tuple((2 * d, w) for d, w in alg.blocks))


def embed_corner(alg2: BlockAlgebra, x: BlockOperator, row: int, col: int) -> BlockOperator:
    out = BlockOperator.zeros(alg2)
    for blk, xb in zip(out.blocks, x.blocks):
        d = xb.shape[0]
        blk[row * d:(row + 1) * d, col * d:(col + 1) * d] = xb
    return out


def extract_corner(x: BlockOperator, base: BlockAlgebra, row: int, col: int) -> BlockOperator:
    blocks = []
    for blk, d in zip(x.blocks, base.dims):
        blocks.append(blk[row * d:(row + 1) * d, col * d:(col + 1) * d].copy())
    return BlockOperator(base, blocks)


@dataclass
class BalancedWeight:
    """theta(A) = phi(A_11) + psi(A_22) on the doubled algebra.

    theta is faithful precisely when both phi and psi are; with a singular
    leg the balanced modular operator has the nontrivial kernel described
    by the support projections.
    """

    phi: BlockOperator
    psi: BlockOperator

    def __post_init__(self):
        if self.phi.algebra != self.psi.algebra:
            raise AlgebraError("phi and psi must act on the same algebra")

    @property
    def base(self) -> BlockAlgebra:
        return self.phi.algebra

    def density(self) -> BlockOperator:
        """diag(rho_phi, rho_psi) on the doubled algebra (unnormalized)."""
        alg2 = doubled_algebra(self.base)
        return embed_corner(alg2, self.phi, 0, 0) + embed_corner(alg2, self.psi, 1, 1)

    def value(self, a2: BlockOperator) -> complex:
        return trace(self.density() @ a2)

    def faithful(self) -> bool:
        return _min_eig(self.phi) > matcore.POWER_FLOOR and _min_eig(self.psi) > matcore.POWER_FLOOR


def _min_eig(a: BlockOperator) -> float:
    return min(float(np.linalg.eigvalsh((b + b.conj().T) / 2)[0]) for b in a.blocks)


def _require_positive(a: BlockOperator, name: str) -> None:
    low = _min_eig(a)
    if low < -matcore.PSD_TOL * max(1.0, a.op_norm()):
        raise RadonNikodymError(f"{name} has negative eigenvalue {low:.3e}")


def _support_and_pinv(a: BlockOperator) -> tuple[BlockOperator, BlockOperator, list[int]]:
    """(support projection, pseudo-inverse on the support, per-block ranks)."""
    supports, pinvs, ranks = [], [], []
    for b in a.blocks:
        sys = matcore.hermitian_eig(b)
        w, v = sys.eigenvalues, sys.eigenvectors
        cut = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0) * 1e-12
        keep = w > cut
        ranks.append(int(np.sum(keep)))
        supports.append((v * keep.astype(float)) @ v.conj().T)
        inv = np.where(keep, 1.0 / np.where(keep, w, 1.0), 0.0)
        pinvs.append((v * inv) @ v.conj().T)
    alg = a.algebra
    return BlockOperator(alg, supports), BlockOperator(alg, pinvs), ranks


@dataclass
class RelativeModular:
    """Relative modular data for (phi, psi) over a common algebra."""

    phi: BlockOperator
    psi: BlockOperator
    support_phi: BlockOperator
    support_psi: BlockOperator
    psi_pinv: BlockOperator
    kernel_rank: int

    def apply(self, x: BlockOperator) -> BlockOperator:
        """Delta_{phi psi} X = rho_phi X rho_psi^(+)."""
        return self.phi @ x @ self.psi_pinv

    def kernel_projection(self, x: BlockOperator) -> BlockOperator:
        """(1 - s(phi) X s'(psi)) component: X minus its support corner."""
        return x - self.support_phi @ x @ self.support_psi


def relative_modular(phi: BlockOperator, psi: BlockOperator) -> RelativeModular:
    """Relative modular operator by the direct multiplier route.

    The kernel rank follows the support-projection formula: per block
    ``d^2 - rank(rho_phi) * rank(rho_psi)``.
    """
    if phi.algebra != psi.algebra:
        raise AlgebraError("phi and psi must act on the same algebra")
    _require_positive(phi, "phi")
    _require_positive(psi, "psi")
    s_phi, _, r_phi = _support_and_pinv(phi)
    s_psi, pinv_psi, r_psi = _support_and_pinv(psi)
    if all(r == 0 for r in r_phi) or all(r == 0 for r in r_psi):
        raise RadonNikodymError("degenerate supports: one functional vanishes")
    kernel_rank = sum(
        d * d - rp * rq for d, rp, rq in zip(phi.algebra.dims, r_phi, r_psi)
    )
    return RelativeModular(
        phi=phi,
        psi=psi,
        support_phi=s_phi,
        support_psi=s_psi,
        psi_pinv=pinv_psi,
        kernel_rank=kernel_rank,
    )


def relative_modular_balanced(phi: BlockOperator, psi: BlockOperator):
    """Relative modular action through the balanced weight on M_2(M).

    Requires both functionals faithful.  Returns a closure applying the
    (1,2) corner of the balanced modular operator, built from the generic
    standard-form machinery on the doubled algebra.
    """
    bal = BalancedWeight(phi, psi)
    if not bal.faithful():
        raise RadonNikodymError("balanced route requires faithful phi and psi")
    theta = bal.density()
    norm = trace(theta).real
    sf2 = build_standard_form(DensityState(theta * (1.0 / norm)))
    base = phi.algebra
    alg2 = doubled_algebra(base)

    def apply(x: BlockOperator) -> BlockOperator:
        x2 = embed_corner(alg2, x, 0, 1)
        y2 = sf2.delta_power(1.0, x2)
        return extract_corner(y2, base, 0, 1)

    return apply


def sakai_rn(phi: BlockOperator, psi: BlockOperator,
              psd_tol: float = matcore.PSD_TOL) -> BlockOperator:
    """Sakai derivative: the positive H <= 1 with psi(A) = phi(H A H).

    Explicit positive solution of ``H rho_phi H = rho_psi``:
    ``H = rho_phi^(-1/2) (rho_phi^(1/2) rho_psi rho_phi^(1/2))^(1/2) rho_phi^(-1/2)``.
    """
    _require_positive(phi, "phi")
    _require_positive(psi, "psi")
    if _min_eig(phi) <= matcore.POWER_FLOOR:
        raise RadonNikodymError("Sakai derivative needs a faithful phi")
    gap = _min_eig(phi - psi)
    if gap < -psd_tol * max(1.0, phi.op_norm()):
        raise DominationError(-gap)

    def per_block(p, q):
        p_half = matcore.sqrt_psd(p, psd_tol=np.inf)
        p_inv_half = matcore.real_power_psd(p, -0.5)
        mid = matcore.sqrt_psd(p_half @ q @ p_half, psd_tol=1e-8)
        return p_inv_half @ mid @ p_inv_half

    return BlockOperator(
        phi.algebra, [per_block(p, q) for p, q in zip(phi.blocks, psi.blocks)]
    )


def pedersen_takesaki_rn(phi: BlockOperator, psi: BlockOperator,
                         commutator_tol: float = matcore.COMMUTATOR_TOL) -> BlockOperator:
    """Pedersen-Takesaki derivative: H = rho_psi rho_phi^(-1), defined when
    psi is invariant under the modular group of phi, i.e. the densities
    commute.  H is positive and lies in the centralizer of phi."""
    _require_positive(phi, "phi")
    _require_positive(psi, "psi")
    if _min_eig(phi) <= matcore.POWER_FLOOR:
        raise RadonNikodymError("Pedersen-Takesaki derivative needs a faithful phi")
    comm = phi @ psi - psi @ phi
    scale = max(1.0, phi.op_norm() * psi.op_norm())
    if comm.op_norm() > commutator_tol * scale:
        raise InvarianceError(comm.op_norm())
    inv = BlockOperator(
        phi.algebra, [matcore.real_power_psd(b, -1.0) for b in phi.blocks]
    )
    return psi @ inv


def commutant_rn(sf: StandardForm, psi: BlockOperator,
                 psd_tol: float = matcore.PSD_TOL) -> BlockOperator:
    """Commutant derivative for psi <= phi in the standard form of phi.

    Returns the matrix C of the right multiplication H' = R_C in M' with
    0 <= C <= 1 and ``psi(A* B) = <H' A Omega, B Omega>`` for all A, B
    (inner product antilinear in the first slot).  The explicit solution is
    ``C = rho_phi^(-1/2) rho_psi rho_phi^(-1/2)``; the defining sesquilinear
    identity is what the callers verify, not the formula.
    """
    phi = sf.rho.rho
    _require_positive(psi, "psi")
    gap = _min_eig(phi - psi)
    if gap < -psd_tol * max(1.0, phi.op_norm()):
        raise DominationError(-gap)
    inv_half = sf.rho_power(-0.5)
    return inv_half @ psi @ inv_half


def commutant_rn_residual(sf: StandardForm, psi: BlockOperator,
                          c: BlockOperator) -> float:
    """max over matrix units A, B of
    |psi(A* B) - <(A Omega) C, B Omega>|."""
    worst = 0.0
    units = list(matrix_units(sf.algebra))
    for a in units:
        lhs_vec = (a @ sf.omega) @ c
        for b in units:
            lhs = hs_inner(lhs_vec, b @ sf.omega)
            rhs = trace(psi @ a.H @ b)
            worst = max(worst, abs(lhs - rhs))
    return worst
