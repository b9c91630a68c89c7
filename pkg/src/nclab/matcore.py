"""Dense complex matrix kernel: hermitian eigendecompositions, spectral
functional calculus, positive square roots, polar decompositions and
support/spectral projections.

Every routine works on plain ``numpy`` arrays; accuracy contracts are
reconstruction residuals, not a particular algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

HERMITIAN_TOL = 1e-9
PROJECTION_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-10
PSD_TOL = 1e-9
EIG_CLUSTER_TOL = 1e-9
POWER_FLOOR = 1e-14
COMMUTATOR_TOL = 1e-10


class MatcoreError(ValueError):
    """Base class for matrix-kernel contract violations."""


class NotHermitianError(MatcoreError):
    pass


class NotPositiveError(MatcoreError):
    pass


class SpectralDomainError(MatcoreError):
    """A scalar function was evaluated outside its domain on the spectrum."""


class ClusterSplitError(MatcoreError):
    """An interval endpoint fell inside an eigenvalue cluster."""


@dataclass(frozen=True)
class EigenSystem:
    """Spectral resolution of a hermitian matrix.

    ``eigenvalues`` are real and ascending; the columns of ``eigenvectors``
    are the corresponding orthonormal eigenvectors, so that
    ``V @ diag(w) @ V.conj().T`` reconstructs the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _as_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatcoreError(f"expected a square matrix, got shape {a.shape}")
    return a


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(a)))


def hermitian_defect(a: np.ndarray) -> float:
    a = _as_square(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)))


def require_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    a = _as_square(a)
    defect = hermitian_defect(a)
    if defect > tol * _scale(a):
        raise NotHermitianError(
            f"matrix is not hermitian: max |A_ij - conj(A_ji)| = {defect:.3e}"
        )
    return a


def hermitian_eig(a: np.ndarray, tol: float = HERMITIAN_TOL) -> EigenSystem:
    """Diagonalize a hermitian matrix, eigenvalues ascending."""
    a = require_hermitian(a, tol)
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    return EigenSystem(eigenvalues=w, eigenvectors=v)


def matrix_function(
    a: np.ndarray, f: Callable[[np.ndarray], np.ndarray], tol: float = HERMITIAN_TOL
) -> np.ndarray:
    """Apply a scalar function to a hermitian matrix through its spectrum.

    Raises :class:`SpectralDomainError` naming the offending eigenvalue when
    ``f`` is undefined (non-finite) there.
    """
    sys = hermitian_eig(a, tol)
    with np.errstate(all="ignore"):
        fw = np.asarray(f(sys.eigenvalues), dtype=complex)
    bad = ~np.isfinite(fw)
    if np.any(bad):
        ev = sys.eigenvalues[bad][0]
        raise SpectralDomainError(f"function undefined at eigenvalue {ev!r}")
    v = sys.eigenvectors
    return (v * fw) @ v.conj().T


def sqrt_psd(a: np.ndarray, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Unique positive square root of a positive semidefinite matrix."""
    sys = hermitian_eig(a)
    scale = _scale(a)
    w = sys.eigenvalues
    if w.size and w[0] < -psd_tol * scale:
        raise NotPositiveError(f"matrix has negative eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    v = sys.eigenvectors
    return (v * np.sqrt(w)) @ v.conj().T


def abs_matrix(a: np.ndarray) -> np.ndarray:
    a = _as_square(a)
    return sqrt_psd(a.conj().T @ a, psd_tol=np.inf)


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values, descending (eigenvalues of |A|, reversed)."""
    return np.linalg.svd(_as_square(a), compute_uv=False)


def polar(a: np.ndarray, rank_tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition ``A = U P`` with ``P = sqrt(A*A)`` positive.

    ``U`` is the partial isometry supported on ``ker(A)^perp``; for
    invertible ``A`` it is unitary.
    """
    a = _as_square(a)
    wmat, s, vh = np.linalg.svd(a)
    if rank_tol is None:
        rank_tol = max(a.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    keep = s > rank_tol
    u = wmat[:, keep] @ vh[keep, :]
    p = (vh.conj().T * s) @ vh
    return u, p


def support_left(a: np.ndarray, rank_tol: float | None = None) -> np.ndarray:
    """Smallest projection ``s`` with ``s A = A`` (range projection)."""
    a = _as_square(a)
    wmat, s, _ = np.linalg.svd(a)
    if rank_tol is None:
        rank_tol = max(a.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    keep = s > rank_tol
    w = wmat[:, keep]
    return w @ w.conj().T


def support_right(a: np.ndarray, rank_tol: float | None = None) -> np.ndarray:
    """Smallest projection ``s`` with ``A s = A``."""
    a = _as_square(a)
    _, s, vh = np.linalg.svd(a)
    if rank_tol is None:
        rank_tol = max(a.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    keep = s > rank_tol
    v = vh[keep, :].conj().T
    return v @ v.conj().T


def spectral_projection(
    a: np.ndarray,
    interval: tuple[float, float],
    cluster_tol: float = EIG_CLUSTER_TOL,
) -> np.ndarray:
    """Spectral projection of a hermitian matrix onto ``(lo, hi]``.

    Endpoints may be ``+-inf``.  A finite endpoint closer than
    ``cluster_tol * ||A||`` to an eigenvalue is ambiguous and rejected:
    the projection would not be numerically well defined.
    """
    sys = hermitian_eig(a)
    lo, hi = interval
    if not lo < hi:
        raise MatcoreError(f"empty interval ({lo}, {hi}]")
    guard = cluster_tol * _scale(a)
    for end in (lo, hi):
        if np.isfinite(end) and sys.eigenvalues.size:
            gap = np.min(np.abs(sys.eigenvalues - end))
            if gap <= guard:
                raise ClusterSplitError(
                    f"interval endpoint {end} is within {gap:.3e} of an eigenvalue"
                )
    mask = (sys.eigenvalues > lo) & (sys.eigenvalues <= hi)
    v = sys.eigenvectors
    return (v * mask.astype(float)) @ v.conj().T


def real_power_psd(a: np.ndarray, p: float, psd_tol: float = PSD_TOL) -> np.ndarray:
    """``A**p`` for positive semidefinite ``A``; eigenvalues within
    ``psd_tol`` of zero are clipped to zero (with ``0**0 = 1``)."""
    sys = hermitian_eig(a)
    scale = _scale(a)
    w = sys.eigenvalues
    if w.size and w[0] < -psd_tol * scale:
        raise NotPositiveError(f"matrix has negative eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    if p < 0 and w.size and np.min(w) <= POWER_FLOOR * scale:
        raise SpectralDomainError(
            f"negative power of a singular matrix (min eigenvalue {np.min(w):.3e})"
        )
    fw = np.power(w, p, dtype=float)
    v = sys.eigenvectors
    return (v * fw) @ v.conj().T


def complex_power_pd(a: np.ndarray, z: complex) -> np.ndarray:
    """``A**z`` for positive definite ``A`` via ``exp(z log lambda)``.

    Eigenvalues at or below ``POWER_FLOOR`` are rejected: the laboratory
    always works with faithful (invertible) densities.
    """
    sys = hermitian_eig(a)
    w = sys.eigenvalues
    if w.size == 0 or np.min(w) <= POWER_FLOOR * _scale(a):
        raise NotPositiveError(
            "complex power requires a strictly positive matrix "
            f"(min eigenvalue {np.min(w) if w.size else 0.0:.3e})"
        )
    fw = np.exp(z * np.log(w.astype(float)))
    v = sys.eigenvectors
    return (v * fw) @ v.conj().T


def commutant_sample(a: np.ndarray, rng: np.random.Generator,
                     cluster_tol: float = EIG_CLUSTER_TOL) -> np.ndarray:
    """A random matrix commuting with hermitian ``a`` (block-random within
    eigenvalue clusters), for probing membership in the bicommutant."""
    sys = hermitian_eig(a)
    w, v = sys.eigenvalues, sys.eigenvectors
    n = w.size
    guard = cluster_tol * _scale(a)
    out = np.zeros((n, n), dtype=complex)
    start = 0
    for i in range(1, n + 1):
        if i == n or w[i] - w[i - 1] > guard:
            k = i - start
            blk = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
            out[start:i, start:i] = blk
            start = i
    return v @ out @ v.conj().T
