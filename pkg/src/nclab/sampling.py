"""Seeded random generators for operators, states and algebras.

All randomness in the suites flows through a caller-supplied
``numpy.random.Generator`` so that runs are reproducible.
"""

from __future__ import annotations

import numpy as np

from .algebra import BlockAlgebra, BlockOperator, DensityState, trace


def random_algebra(rng: np.random.Generator, max_blocks: int = 3,
                   max_dim: int = 4) -> BlockAlgebra:
    nblocks = int(rng.integers(1, max_blocks + 1))
    blocks = tuple(
        (int(rng.integers(1, max_dim + 1)), float(rng.uniform(0.25, 2.0)))
        for _ in range(nblocks)
    )
    return BlockAlgebra(blocks)


def random_operator(alg: BlockAlgebra, rng: np.random.Generator,
                    scale: float = 1.0) -> BlockOperator:
    return BlockOperator(
        alg,
        [
            scale * (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
            for d in alg.dims
        ],
    )


def random_hermitian(alg: BlockAlgebra, rng: np.random.Generator,
                     scale: float = 1.0) -> BlockOperator:
    a = random_operator(alg, rng, scale)
    return (a + a.H) * 0.5


def random_psd(alg: BlockAlgebra, rng: np.random.Generator,
               scale: float = 1.0) -> BlockOperator:
    a = random_operator(alg, rng, scale)
    return a.H @ a


def random_unitary(alg: BlockAlgebra, rng: np.random.Generator) -> BlockOperator:
    blocks = []
    for d in alg.dims:
        z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        q, r = np.linalg.qr(z)
        q = q * (np.diag(r) / np.abs(np.diag(r)))
        blocks.append(q)
    return BlockOperator(alg, blocks)


def random_density(alg: BlockAlgebra, rng: np.random.Generator,
                   min_eig: float = 0.05) -> DensityState:
    """A faithful density: random psd plus a floor, trace-normalized."""
    a = random_psd(alg, rng)
    floor = min_eig * max(1.0, a.op_norm())
    a = a + floor * BlockOperator.identity(alg)
    return DensityState(a * (1.0 / trace(a).real))


def random_projection(alg: BlockAlgebra, rng: np.random.Generator) -> BlockOperator:
    """Random orthogonal projection, possibly of deficient rank."""
    u = random_unitary(alg, rng)
    blocks = []
    for q, d in zip(u.blocks, alg.dims):
        r = int(rng.integers(0, d + 1))
        cols = q[:, :r]
        blocks.append(cols @ cols.conj().T)
    return BlockOperator(alg, blocks)
