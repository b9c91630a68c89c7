"""Standard-form GNS representation for a faithful density, Tomita-Takesaki
modular data, analytic modular flow, Gaussian smoothing to entire elements,
and the one-parameter family of positive cones.

The GNS space of ``(M, tau(rho .))`` is realized concretely: vectors are
block matrices with inner product ``<X, Y> = tau(X* Y)``, the algebra acts
by left multiplication, ``Omega = rho^(1/2)``, the modular operator acts as
``Delta(X) = rho X rho^(-1)`` and the conjugation is ``J(X) = X*``.  The
modular operator is applied as a multiplier pair and never materialized,
except in the dense superoperator cross-check mode for small dimensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .algebra import (
    BlockAlgebra,
    BlockOperator,
    DensityState,
    hs_inner,
    hs_norm,
    matrix_units,
)


class ModularError(ValueError):
    pass


@dataclass
class StandardForm:
    """Standard form of (algebra, rho) with cached spectral data of rho."""

    rho: DensityState
    eigenvalues: list[np.ndarray] = field(repr=False)
    eigenvectors: list[np.ndarray] = field(repr=False)
    omega: BlockOperator = field(repr=False)

    @property
    def algebra(self) -> BlockAlgebra:
        return self.rho.algebra

    def rho_power(self, z: complex) -> BlockOperator:
        """rho^z through the cached eigendecomposition (any complex z)."""
        blocks = []
        for w, v in zip(self.eigenvalues, self.eigenvectors):
            fw = np.exp(z * np.log(w))
            blocks.append((v * fw) @ v.conj().T)
        return BlockOperator(self.algebra, blocks)

    def delta_power(self, z: complex, x: BlockOperator) -> BlockOperator:
        """Delta^z (X) = rho^z X rho^(-z) as a left/right multiplier pair."""
        return self.rho_power(z) @ x @ self.rho_power(-z)

    def j(self, x: BlockOperator) -> BlockOperator:
        """Modular conjugation J(X) = X*."""
        return x.H

    def s(self, x: BlockOperator) -> BlockOperator:
        """Tomita operator S = J Delta^(1/2)."""
        return self.j(self.delta_power(0.5, x))

    def log_modular_spectrum(self) -> list[np.ndarray]:
        """Per block, the matrix of differences log(l_i) - log(l_j)."""
        out = []
        for w in self.eigenvalues:
            lg = np.log(w)
            out.append(lg[:, None] - lg[None, :])
        return out


def build_standard_form(rho: DensityState) -> StandardForm:
    if not rho.faithful:
        raise ModularError(
            f"density is not faithful (min eigenvalue {rho.min_eigenvalue:.3e})"
        )
    evals, evecs = [], []
    for b in rho.rho.blocks:
        sys = matcore.hermitian_eig(b)
        evals.append(np.clip(sys.eigenvalues.real, matcore.POWER_FLOOR, None))
        evecs.append(sys.eigenvectors)
    omega_blocks = [(v * np.sqrt(w)) @ v.conj().T for w, v in zip(evals, evecs)]
    omega = BlockOperator(rho.algebra, omega_blocks)
    sf = StandardForm(rho=rho, eigenvalues=evals, eigenvectors=evecs, omega=omega)
    norm = hs_norm(omega)
    if abs(norm - 1.0) > 1e-10:
        raise ModularError(f"<Omega, Omega> = {norm**2!r} is not 1")
    return sf


def s_factorization_residual(sf: StandardForm) -> float:
    """max over matrix units E of || J Delta^(1/2) (E Omega) - E* Omega ||."""
    worst = 0.0
    for e in matrix_units(sf.algebra):
        lhs = sf.s(e @ sf.omega)
        rhs = e.H @ sf.omega
        worst = max(worst, hs_norm(lhs - rhs))
    return worst


def modular_identities_residual(sf: StandardForm) -> float:
    """Residuals of Delta Omega = Omega, J Omega = Omega, J^2 = 1,
    anti-unitarity <JX, JY> = <Y, X>, F(Omega B) = Omega B* for the
    commutant action, Delta = F S and Delta^(-1/2) = J Delta^(1/2) J,
    all on the matrix-unit spanning set."""
    f = lambda x: sf.j(sf.delta_power(-0.5, x))  # noqa: E731  F = S* = J Delta^(-1/2)
    worst = hs_norm(sf.delta_power(1.0, sf.omega) - sf.omega)
    worst = max(worst, hs_norm(sf.j(sf.omega) - sf.omega))
    units = list(matrix_units(sf.algebra))
    for x in units:
        worst = max(worst, hs_norm(sf.j(sf.j(x)) - x))
        worst = max(worst, hs_norm(f(sf.s(x)) - sf.delta_power(1.0, x)))
        lhs = sf.delta_power(-0.5, x)
        rhs = sf.j(sf.delta_power(0.5, sf.j(x)))
        worst = max(worst, hs_norm(lhs - rhs))
        worst = max(worst, hs_norm(f(sf.omega @ x) - sf.omega @ x.H))
    for x in units[: min(len(units), 6)]:
        for y in units[: min(len(units), 6)]:
            lhs = hs_inner(sf.j(x), sf.j(y))
            rhs = hs_inner(y, x)
            worst = max(worst, abs(lhs - rhs))
    return worst


def tomita_check(sf: StandardForm, generators: list[BlockOperator]) -> dict:
    """Tomita's theorem at finite dimension.

    (a) ``J A J`` commutes with every left multiplication: the commutator
        ``[JAJ, B]`` is evaluated on the matrix-unit spanning set.
    (b) ``Delta^{it} M Delta^{-it} = M``: the conjugated action equals left
        multiplication by the flow of the generator.
    """
    units = list(matrix_units(sf.algebra))
    worst_comm = 0.0
    for a in generators:
        for b in generators:
            ja_j = lambda x, _a=a: (_a @ x.H).H  # noqa: E731  J A J as a map
            for x in units:
                lhs = ja_j(b @ x)
                rhs = b @ ja_j(x)
                worst_comm = max(worst_comm, hs_norm(lhs - rhs))
    worst_flow = 0.0
    for a in generators:
        for t in (0.37, -1.21):
            sig = modular_flow(sf, t, a)
            for x in units:
                lhs = sf.delta_power(1j * t, a @ sf.delta_power(-1j * t, x))
                worst_flow = max(worst_flow, hs_norm(lhs - sig @ x))
    return {
        "commutant_residual": worst_comm,
        "flow_stability_residual": worst_flow,
        "passed": bool(worst_comm <= 1e-10 and worst_flow <= 1e-9),
    }


def modular_flow(sf: StandardForm, z: complex, a: BlockOperator) -> BlockOperator:
    """sigma_z(A) = rho^{iz} A rho^{-iz}; entire in z at finite dimension."""
    return sf.rho_power(1j * z) @ a @ sf.rho_power(-1j * z)


def gaussian_smooth(sf: StandardForm, a: BlockOperator, n: float) -> BlockOperator:
    """Gaussian average sqrt(n/pi) Int exp(-n t^2) sigma_t(A) dt.

    In the eigenbasis of rho the entry (i, j) picks up the exact factor
    exp(-(log l_i - log l_j)^2 / (4n)); converges to A as n -> inf.
    """
    if not n > 0:
        raise ModularError("smoothing parameter must be positive")
    blocks = []
    for blk, w, v in zip(a.blocks, sf.eigenvalues, sf.eigenvectors):
        lg = np.log(w)
        theta = lg[:, None] - lg[None, :]
        tilted = v.conj().T @ blk @ v
        blocks.append(v @ (tilted * np.exp(-(theta ** 2) / (4.0 * n))) @ v.conj().T)
    return BlockOperator(a.algebra, blocks)


def gaussian_smooth_quadrature(sf: StandardForm, a: BlockOperator, n: float,
                               nodes: int = 201, half_width: float = 12.0) -> BlockOperator:
    """Direct quadrature of the defining integral (independent oracle)."""
    h = half_width / math.sqrt(n)
    ts, ws = np.polynomial.legendre.leggauss(nodes)
    ts = ts * h
    ws = ws * h
    acc = BlockOperator.zeros(a.algebra)
    for t, w in zip(ts, ws):
        acc = acc + (w * math.sqrt(n / math.pi) * math.exp(-n * t * t)) * modular_flow(sf, t, a)
    return acc


def cone_element(sf: StandardForm, alpha: float, a: BlockOperator) -> BlockOperator:
    """Delta^alpha (A Omega) = rho^alpha A rho^(1/2 - alpha) for A >= 0."""
    if not 0.0 <= alpha <= 0.5:
        raise ModularError(f"cone parameter must lie in [0, 1/2], got {alpha}")
    low = min(
        float(np.linalg.eigvalsh((b + b.conj().T) / 2)[0]) for b in a.blocks
    )
    if low < -matcore.PSD_TOL * max(1.0, a.op_norm()):
        raise ModularError(f"cone element requires A >= 0 (min eigenvalue {low:.3e})")
    return sf.rho_power(alpha) @ a @ sf.rho_power(0.5 - alpha)


def in_self_dual_cone(sf: StandardForm, x: BlockOperator,
                      psd_tol: float = matcore.PSD_TOL) -> bool:
    """Membership in V^(1/4): rho^(-1/4) X rho^(-1/4) is psd, equivalently
    X itself is a psd matrix."""
    y = sf.rho_power(-0.25) @ x @ sf.rho_power(-0.25)
    scale = max(1.0, y.op_norm())
    for b in y.blocks:
        h = (b + b.conj().T) / 2
        if np.max(np.abs(b - h)) > 1e-8 * scale:
            return False
        if np.linalg.eigvalsh(h)[0] < -psd_tol * scale:
            return False
    return True


def cone_checks(sf: StandardForm, alpha: float, samples: list[BlockOperator]) -> dict:
    """Duality pairing positivity, J-fixedness of V^(1/4), and the psd
    characterization of the self-dual cone on sampled positive operators."""
    min_pairing = math.inf
    j_residual = 0.0
    membership_ok = True
    for a in samples:
        xa = cone_element(sf, alpha, a)
        for b in samples:
            yb = cone_element(sf, 0.5 - alpha, b)
            min_pairing = min(min_pairing, hs_inner(xa, yb).real)
        x4 = cone_element(sf, 0.25, a)
        j_residual = max(j_residual, hs_norm(sf.j(x4) - x4))
        membership_ok = membership_ok and in_self_dual_cone(sf, x4)
        # hermitian non-member: force a strictly negative diagonal entry
        # of rho^(-1/4) X rho^(-1/4)
        dent = (2.5 * a.op_norm() + 1.0) * _rank_one(sf.algebra)
        bad = sf.rho_power(0.25) @ (a - dent) @ sf.rho_power(0.25)
        membership_ok = membership_ok and not in_self_dual_cone(sf, bad)
    return {
        "min_pairing": min_pairing,
        "j_fixedness_residual": j_residual,
        "membership_both_ways": bool(membership_ok),
        "passed": bool(min_pairing >= -1e-12 and j_residual <= 1e-10 and membership_ok),
    }


def _rank_one(alg: BlockAlgebra) -> BlockOperator:
    e = BlockOperator.zeros(alg)
    e.blocks[0][0, 0] = 1.0
    return e


# dense superoperator mode (cross-checks at small dimension)

def left_mult_superoperator(a: BlockOperator) -> list[np.ndarray]:
    """Per block, the matrix of X -> A X on vec(X) (row-major)."""
    return [np.kron(b, np.eye(b.shape[0])) for b in a.blocks]


def right_mult_superoperator(a: BlockOperator) -> list[np.ndarray]:
    """Per block, the matrix of X -> X A on vec(X) (row-major)."""
    return [np.kron(np.eye(b.shape[0]), b.T) for b in a.blocks]


def delta_superoperator(sf: StandardForm, z: complex = 1.0) -> list[np.ndarray]:
    """Dense matrix of Delta^z per block; cross-check mode for d <= 6."""
    left = left_mult_superoperator(sf.rho_power(z))
    right = right_mult_superoperator(sf.rho_power(-z))
    return [l @ r for l, r in zip(left, right)]


def superoperator_schatten_norm(mats: list[np.ndarray], p: float) -> float:
    """Schatten norm of a block-diagonal superoperator with respect to the
    canonical trace of the GNS Hilbert space."""
    if p == math.inf:
        return max(float(np.linalg.norm(m, 2)) for m in mats)
    total = 0.0
    for m in mats:
        s = np.linalg.svd(m, compute_uv=False)
        total += float(np.sum(s ** p))
    return total ** (1.0 / p)
