"""Finite von Neumann algebras as direct sums of matrix blocks carrying a
weighted trace, plus the D(eps, delta) trace-measurability arithmetic.

The ambient object is ``(M, tau)`` with ``M = (+)_k M_{d_k}`` and
``tau(A) = sum_k w_k tr(A_k)`` for strictly positive block weights ``w_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import matcore
from .matcore import MatcoreError, PSD_TOL, POWER_FLOOR


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class BlockAlgebra:
    """Direct sum of full matrix blocks with per-block trace weights."""

    blocks: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if not self.blocks:
            raise AlgebraError("algebra needs at least one block")
        for dim, weight in self.blocks:
            if dim < 1 or int(dim) != dim:
                raise AlgebraError(f"block dimension must be a positive integer, got {dim}")
            if not weight > 0:
                raise AlgebraError(f"block weight must be strictly positive, got {weight}")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.blocks)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for _, w in self.blocks)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def to_json(self) -> dict:
        return {"blocks": [{"dim": d, "weight": w} for d, w in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> "BlockAlgebra":
        return cls(tuple((int(b["dim"]), float(b["weight"])) for b in data["blocks"]))


def simple(dim: int, weight: float = 1.0) -> BlockAlgebra:
    """A single full matrix block M_dim with plain (weight 1) trace."""
    return BlockAlgebra(((dim, weight),))


class BlockOperator:
    """Element of a block algebra: one dense complex matrix per block.

    The same container doubles as a vector of the trace-weighted
    Hilbert-Schmidt (GNS) space, where the algebra acts by left
    multiplication.
    """

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra: BlockAlgebra, blocks: Sequence[np.ndarray]):
        blocks = [np.asarray(b, dtype=complex) for b in blocks]
        if len(blocks) != len(algebra.blocks):
            raise AlgebraError(
                f"expected {len(algebra.blocks)} blocks, got {len(blocks)}"
            )
        for b, (dim, _) in zip(blocks, algebra.blocks):
            if b.shape != (dim, dim):
                raise AlgebraError(f"block shape {b.shape} does not match dim {dim}")
        self.algebra = algebra
        self.blocks = blocks

    @classmethod
    def zeros(cls, algebra: BlockAlgebra) -> "BlockOperator":
        return cls(algebra, [np.zeros((d, d), dtype=complex) for d in algebra.dims])

    @classmethod
    def identity(cls, algebra: BlockAlgebra) -> "BlockOperator":
        return cls(algebra, [np.eye(d, dtype=complex) for d in algebra.dims])

    def copy(self) -> "BlockOperator":
        return BlockOperator(self.algebra, [b.copy() for b in self.blocks])

    def _check_same(self, other: "BlockOperator"):
        if self.algebra != other.algebra:
            raise AlgebraError("operators live in different algebras")

    def __add__(self, other: "BlockOperator") -> "BlockOperator":
        self._check_same(other)
        return BlockOperator(self.algebra, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "BlockOperator") -> "BlockOperator":
        self._check_same(other)
        return BlockOperator(self.algebra, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self) -> "BlockOperator":
        return BlockOperator(self.algebra, [-b for b in self.blocks])

    def __mul__(self, c: complex) -> "BlockOperator":
        return BlockOperator(self.algebra, [c * b for b in self.blocks])

    __rmul__ = __mul__

    def __matmul__(self, other: "BlockOperator") -> "BlockOperator":
        self._check_same(other)
        return BlockOperator(self.algebra, [a @ b for a, b in zip(self.blocks, other.blocks)])

    @property
    def H(self) -> "BlockOperator":
        return BlockOperator(self.algebra, [b.conj().T for b in self.blocks])

    def op_norm(self) -> float:
        return max(
            float(np.linalg.norm(b, 2)) if b.size else 0.0 for b in self.blocks
        )

    def to_json(self) -> list:
        return [
            [[[float(z.real), float(z.imag)] for z in row] for row in b]
            for b in self.blocks
        ]

    @classmethod
    def from_json(cls, algebra: BlockAlgebra, data: list) -> "BlockOperator":
        blocks = [
            np.array([[complex(re, im) for re, im in row] for row in b], dtype=complex)
            for b in data
        ]
        return cls(algebra, blocks)

    def __repr__(self):
        return f"BlockOperator(dims={self.algebra.dims})"


def blockwise(f, a: BlockOperator) -> BlockOperator:
    """Apply a matrix -> matrix function to each block."""
    return BlockOperator(a.algebra, [f(b) for b in a.blocks])


def trace(a: BlockOperator) -> complex:
    """tau(A) = sum_k w_k tr(A_k)."""
    return sum(w * np.trace(b) for b, w in zip(a.blocks, a.algebra.weights))


def hs_inner(x: BlockOperator, y: BlockOperator) -> complex:
    """Trace-weighted Hilbert-Schmidt pairing tau(X* Y), antilinear in X."""
    x._check_same(y)
    return sum(
        w * np.sum(bx.conj() * by)
        for bx, by, w in zip(x.blocks, y.blocks, x.algebra.weights)
    )


def hs_norm(x: BlockOperator) -> float:
    return float(np.sqrt(max(hs_inner(x, x).real, 0.0)))


def weighted_singular_values(a: BlockOperator) -> list[tuple[float, np.ndarray]]:
    """(weight, descending singular values) per block."""
    return [
        (w, matcore.singular_values(b))
        for b, w in zip(a.blocks, a.algebra.weights)
    ]


def matrix_units(algebra: BlockAlgebra) -> Iterator[BlockOperator]:
    """The spanning set E^{(k)}_{ij} of the algebra."""
    for k, d in enumerate(algebra.dims):
        for i in range(d):
            for j in range(d):
                e = BlockOperator.zeros(algebra)
                e.blocks[k][i, j] = 1.0
                yield e


class DensityState:
    """Positive operator rho with tau(rho) = 1, representing
    omega(A) = tau(rho A)."""

    def __init__(self, rho: BlockOperator, psd_tol: float = PSD_TOL,
                 norm_tol: float = 1e-12):
        eigs = [np.linalg.eigvalsh((b + b.conj().T) / 2) for b in rho.blocks]
        low = min(float(w[0]) for w in eigs if w.size)
        if low < -psd_tol:
            raise AlgebraError(f"density has negative eigenvalue {low:.3e}")
        t = trace(rho)
        if abs(t - 1.0) > norm_tol:
            raise AlgebraError(f"density trace {t!r} is not 1 within {norm_tol}")
        self.rho = rho
        self.min_eigenvalue = low
        self.faithful = low > POWER_FLOOR

    @property
    def algebra(self) -> BlockAlgebra:
        return self.rho.algebra

    def value(self, a: BlockOperator) -> complex:
        """omega(A) = tau(rho A)."""
        return trace(self.rho @ a)

    @classmethod
    def from_matrix(cls, algebra: BlockAlgebra, blocks: Sequence[np.ndarray],
                    normalize: bool = False) -> "DensityState":
        rho = BlockOperator(algebra, blocks)
        if normalize:
            t = trace(rho).real
            if t <= 0:
                raise AlgebraError("cannot normalize a trace-nonpositive operator")
            rho = rho * (1.0 / t)
        return cls(rho)


def gram_matrix_check(algebra: BlockAlgebra) -> float:
    """Faithfulness witness: smallest weight, so that
    tau(A*A) >= min_w * ||A||_F^2."""
    return min(algebra.weights)


def in_D(a: BlockOperator, eps: float, delta: float,
         cluster_tol: float = matcore.EIG_CLUSTER_TOL) -> tuple[bool, float]:
    """Membership of A in D(eps, delta): tau of the spectral projection of
    |A| above eps is at most delta.  Returns (verdict, witness)."""
    if eps <= 0 or delta <= 0:
        raise AlgebraError("eps and delta must be positive")
    scale = max(1.0, a.op_norm())
    witness = 0.0
    for w, svals in weighted_singular_values(a):
        if svals.size and np.min(np.abs(svals - eps)) <= cluster_tol * scale:
            raise MatcoreError(
                f"eps = {eps} splits a singular-value cluster of |A|"
            )
        witness += w * int(np.sum(svals > eps))
    return witness <= delta, witness


def d_arithmetic_check(a1: BlockOperator, a2: BlockOperator,
                       eps1: float, eps2: float,
                       delta1: float, delta2: float) -> dict:
    """Check the sum/product containments
    D(e1,d1) + D(e2,d2) in D(e1+e2, d1+d2) and
    D(e1,d1) * D(e2,d2) in D(e1*e2, d1+d2), carrying all four witnesses."""
    ok1, w1 = in_D(a1, eps1, delta1)
    ok2, w2 = in_D(a2, eps2, delta2)
    report = {
        "pre_ok": bool(ok1 and ok2),
        "witness_1": w1,
        "witness_2": w2,
    }
    ok_sum, w_sum = in_D(a1 + a2, eps1 + eps2, delta1 + delta2)
    ok_prod, w_prod = in_D(a1 @ a2, eps1 * eps2, delta1 + delta2)
    report.update(
        witness_sum=w_sum,
        witness_prod=w_prod,
        sum_contained=bool(ok_sum),
        prod_contained=bool(ok_prod),
        passed=bool(report["pre_ok"] and ok_sum and ok_prod),
    )
    return report
