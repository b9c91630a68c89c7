"""Matrix kernel contracts: eigendecomposition, functional calculus, square
roots, polar decomposition, spectral and support projections."""

import numpy as np
import pytest

from nclab import matcore


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def test_eig_diagonal_case():
    sys = matcore.hermitian_eig(np.diag([3.0, 1.0]))
    assert np.allclose(sys.eigenvalues, [1.0, 3.0])
    # eigenvectors are a permutation of the identity
    assert np.allclose(np.abs(sys.eigenvectors), [[0, 1], [1, 0]])


def test_eig_offdiagonal_hand_solution():
    # characteristic polynomial x^2 - 1 by hand
    sys = matcore.hermitian_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(sys.eigenvalues, [-1.0, 1.0], atol=1e-14)


def test_eig_reconstruction_residual(rng):
    a = random_hermitian(rng, 8)
    sys = matcore.hermitian_eig(a)
    assert np.linalg.norm(sys.reconstruct() - a) <= 1e-10 * max(1, np.linalg.norm(a))
    v = sys.eigenvectors
    assert np.linalg.norm(v.conj().T @ v - np.eye(8)) < 1e-12


def test_eig_rejects_non_hermitian():
    with pytest.raises(matcore.NotHermitianError):
        matcore.hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(matcore.MatcoreError):
        matcore.hermitian_eig(np.zeros((2, 3)))


def test_matrix_function_identity_and_sqrt(rng):
    a = random_hermitian(rng, 5)
    assert np.allclose(matcore.matrix_function(a, lambda w: w), a, atol=1e-12)
    assert np.allclose(
        matcore.matrix_function(np.diag([4.0, 9.0]), np.sqrt), np.diag([2.0, 3.0])
    )


def test_matrix_function_exp_log_roundtrip(rng):
    c = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    a = c.conj().T @ c + 0.1 * np.eye(6)
    a = a * (3.0 / np.linalg.norm(a, 2))
    back = matcore.matrix_function(matcore.matrix_function(a, np.exp), np.log)
    assert np.linalg.norm(back - a) <= 1e-9 * max(1, np.linalg.norm(a))


def test_matrix_function_commutes_with_argument(rng):
    a = random_hermitian(rng, 5)
    fa = matcore.matrix_function(a, np.exp)
    assert np.linalg.norm(fa @ a - a @ fa) <= 1e-10 * np.linalg.norm(a)


def test_matrix_function_domain_error_names_eigenvalue():
    with pytest.raises(matcore.SpectralDomainError) as err:
        matcore.matrix_function(np.diag([0.0, 1.0]), np.log)
    assert "0" in str(err.value)


def test_sqrt_psd_examples(rng):
    assert np.allclose(matcore.sqrt_psd(np.eye(3)), np.eye(3))
    assert np.allclose(matcore.sqrt_psd(np.diag([4.0, 0.0])), np.diag([2.0, 0.0]))
    c = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    a = c.conj().T @ c
    b = matcore.sqrt_psd(a)
    assert np.linalg.norm(b @ b - a) <= 1e-10 * max(1, np.linalg.norm(a))
    assert np.min(np.linalg.eigvalsh(b)) >= -1e-12


def test_sqrt_psd_rejects_negative():
    with pytest.raises(matcore.NotPositiveError):
        matcore.sqrt_psd(np.diag([1.0, -0.5]))


def test_sqrt_commutes_with_commutant_samples(rng):
    # the root lies in the bicommutant of its argument
    a = random_hermitian(rng, 6)
    a = a @ a.conj().T + 0.2 * np.eye(6)
    b = matcore.sqrt_psd(a)
    for _ in range(5):
        c = matcore.commutant_sample(a, rng)
        assert np.linalg.norm(a @ c - c @ a) <= 1e-8 * np.linalg.norm(c)
        assert np.linalg.norm(b @ c - c @ b) <= 1e-8 * np.linalg.norm(c)


def test_sqrt_monotone_on_commuting_pairs(rng):
    sys = matcore.hermitian_eig(random_hermitian(rng, 5))
    v = sys.eigenvectors
    wa = rng.uniform(0.1, 2.0, 5)
    wb = wa + rng.uniform(0.0, 1.5, 5)
    a = (v * wa) @ v.conj().T
    b = (v * wb) @ v.conj().T
    gap = matcore.sqrt_psd(b) - matcore.sqrt_psd(a)
    assert np.min(np.linalg.eigvalsh((gap + gap.conj().T) / 2)) >= -1e-9


def test_sqrt_holder_half_estimate(rng):
    # ||sqrt(A) - sqrt(B)|| <= ||A - B||^(1/2) for commuting positive pairs
    sys = matcore.hermitian_eig(random_hermitian(rng, 6))
    v = sys.eigenvectors
    for _ in range(10):
        wa = rng.uniform(0.0, 3.0, 6)
        wb = rng.uniform(0.0, 3.0, 6)
        a = (v * wa) @ v.conj().T
        b = (v * wb) @ v.conj().T
        lhs = np.linalg.norm(matcore.sqrt_psd(a) - matcore.sqrt_psd(b), 2)
        rhs = np.sqrt(np.linalg.norm(a - b, 2))
        assert lhs <= rhs + 1e-10


def test_polar_unitary_and_diagonal():
    q, _ = np.linalg.qr(np.array([[1.0, 2.0], [3.0, -1.0]]))
    u, p = matcore.polar(q)
    assert np.allclose(u, q, atol=1e-12)
    assert np.allclose(p, np.eye(2), atol=1e-12)
    u, p = matcore.polar(np.diag([-2.0, 3.0]))
    assert np.allclose(u, np.diag([-1.0, 1.0]))
    assert np.allclose(p, np.diag([2.0, 3.0]))


def test_polar_singular_case(rng):
    a = rng.normal(size=(5, 3)) @ rng.normal(size=(3, 5))  # rank <= 3
    a = a.astype(complex)
    u, p = matcore.polar(a)
    assert np.linalg.norm(u @ p - a) <= 1e-10 * max(1, np.linalg.norm(a))
    # U*U is the projection onto ker(A)^perp and U annihilates the kernel
    _, s, vh = np.linalg.svd(a)
    null = vh[3:, :].conj().T
    assert np.linalg.norm(u @ null) <= 1e-10
    proj = u.conj().T @ u
    assert np.linalg.norm(proj @ proj - proj) <= 1e-10
    assert abs(np.trace(proj).real - 3) <= 1e-8


def test_polar_partial_isometry_norms(rng):
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    p = matcore.abs_matrix(a)
    for _ in range(5):
        x = rng.normal(size=6) + 1j * rng.normal(size=6)
        assert abs(np.linalg.norm(a @ x) - np.linalg.norm(p @ x)) <= 1e-9


def test_spectral_projection_examples():
    a = np.diag([1.0, 2.0, 3.0])
    pr = matcore.spectral_projection(a, (1.5, np.inf))
    assert np.allclose(pr, np.diag([0.0, 1.0, 1.0]))
    assert np.allclose(matcore.spectral_projection(a, (-np.inf, np.inf)), np.eye(3))


def test_spectral_projection_complement(rng):
    a = random_hermitian(rng, 6)
    cut = float(np.median(np.linalg.eigvalsh(a))) + 0.05
    low = matcore.spectral_projection(a, (-np.inf, cut))
    high = matcore.spectral_projection(a, (cut, np.inf))
    assert np.linalg.norm(low + high - np.eye(6)) <= 1e-10
    assert np.linalg.norm(low @ a - a @ low) <= 1e-9 * np.linalg.norm(a)


def test_spectral_projection_cluster_guard():
    with pytest.raises(matcore.ClusterSplitError):
        matcore.spectral_projection(np.diag([1.0, 2.0]), (1.0, 3.0))


def test_supports(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.allclose(matcore.support_left(a), np.eye(4), atol=1e-10)
    assert np.allclose(matcore.support_right(a), np.eye(4), atol=1e-10)
    e12 = np.zeros((2, 2), dtype=complex)
    e12[0, 1] = 1.0
    assert np.allclose(matcore.support_left(e12), np.diag([1.0, 0.0]))
    assert np.allclose(matcore.support_right(e12), np.diag([0.0, 1.0]))
    # rank-deficient: ranks of both supports equal rank(A)
    b = (rng.normal(size=(5, 2)) @ rng.normal(size=(2, 5))).astype(complex)
    rank = int(np.sum(np.linalg.svd(b, compute_uv=False) > 1e-12))
    sl, sr = matcore.support_left(b), matcore.support_right(b)
    assert round(np.trace(sl).real) == rank == round(np.trace(sr).real)
    assert np.linalg.norm(sl @ b - b) <= 1e-10
    assert np.linalg.norm(b @ sr - b) <= 1e-10


def test_tolerances_overridable_per_call():
    # a mildly non-hermitian matrix passes with a loosened tolerance
    a = np.array([[1.0, 1e-6], [0.0, 2.0]])
    with pytest.raises(matcore.NotHermitianError):
        matcore.hermitian_eig(a)
    sys = matcore.hermitian_eig(a, tol=1e-5)
    assert sys.eigenvalues.shape == (2,)
    pr = matcore.spectral_projection(np.diag([1.0, 2.0, 3.0]), (1.5, np.inf))
    assert round(np.trace(pr).real) == 2  # rank counts the eigenvalues inside


def test_complex_power_requires_strict_positivity():
    with pytest.raises(matcore.NotPositiveError):
        matcore.complex_power_pd(np.diag([1.0, 0.0]), 0.5j)
    a = np.diag([1.0, 4.0])
    out = matcore.complex_power_pd(a, 1j)
    assert np.allclose(np.abs(np.diag(out)), [1.0, 1.0])
