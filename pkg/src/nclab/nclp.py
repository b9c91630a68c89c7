"""Noncommutative Lp norms for a block algebra with weighted trace, and the
accompanying inequality suite: Hoelder (two- and multi-factor), Minkowski
with its norm-attaining optimizer, Lp/Lq duality and Riesz-Thorin
interpolation.

``p = inf`` is encoded as ``math.inf``; it is handled by an exact
operator-norm path, never by a large finite exponent.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import matcore
from .algebra import BlockOperator, trace, weighted_singular_values

INF = math.inf


class PIndexError(ValueError):
    pass


def check_p(p: float) -> float:
    p = float(p)
    if not p >= 1:
        raise PIndexError(f"Lp index must satisfy p >= 1, got {p}")
    return p


def conjugate_index(p: float) -> float:
    """q with 1/p + 1/q = 1."""
    p = check_p(p)
    if p == 1:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


def _sum_sv_powers(a: BlockOperator, p: float) -> float:
    """tau(|A|^p) from singular values, in a compensated sum."""
    parts = []
    for w, svals in weighted_singular_values(a):
        if svals.size:
            parts.extend(w * np.power(svals, p))
    return math.fsum(parts)


def lp_norm(a: BlockOperator, p: float) -> float:
    """||A||_p = tau(|A|^p)^(1/p); operator norm at p = inf."""
    p = check_p(p)
    if p == INF:
        return a.op_norm()
    return _sum_sv_powers(a, p) ** (1.0 / p)


def duality_pairing(a: BlockOperator, b: BlockOperator) -> complex:
    """tau(A B)."""
    return trace(a @ b)


def fuzz_report(name: str, trials: int, max_violation: float,
                tol: float) -> dict:
    """The wire form of a fuzzing result: one record per check."""
    return {
        "name": name,
        "trials": int(trials),
        "max_violation": float(max_violation),
        "passed": bool(max_violation <= tol),
    }


def holder_check(factors: Sequence[BlockOperator], ps: Sequence[float],
                 r: float | None = None, slack: float = 1e-12) -> dict:
    """Check tau(|prod A_i|^r)^(1/r) <= prod ||A_i||_{p_i} for
    sum 1/p_i = 1/r, with slack relative to prod max(1, ||A_i||_{p_i})."""
    if len(factors) != len(ps) or not factors:
        raise PIndexError("need one exponent per factor")
    ps = [check_p(p) for p in ps]
    inv = math.fsum(0.0 if p == INF else 1.0 / p for p in ps)
    if r is None:
        if inv <= 0:
            r = INF
        else:
            r = 1.0 / inv
    else:
        r = check_p(r)
        target = 0.0 if r == INF else 1.0 / r
        if abs(inv - target) > 1e-12:
            raise PIndexError(
                f"exponent mismatch: sum 1/p_i = {inv} but 1/r = {target}"
            )
    prod = factors[0]
    for f in factors[1:]:
        prod = prod @ f
    lhs = lp_norm(prod, r)
    norms = [lp_norm(f, p) for f, p in zip(factors, ps)]
    rhs = math.prod(norms)
    scale = math.prod(max(1.0, n) for n in norms)
    passed = lhs <= rhs + slack * scale
    return {
        "lhs": lhs,
        "rhs": rhs,
        "r": r,
        "violation": max(0.0, (lhs - rhs) / scale),
        "passed": bool(passed),
    }


def minkowski_optimizer(a: BlockOperator, p: float) -> BlockOperator:
    """The unit-||.||_q element attaining sup |tau(A B)| = ||A||_p.

    From the polar decomposition ``A = u |A|``:
    ``B* = |A|^(p-1) u* / tau(|A|^p)^((p-1)/p)``.
    """
    p = check_p(p)
    if p == 1 or p == INF:
        raise PIndexError("optimizer needs 1 < p < inf")
    norm_p = lp_norm(a, p)
    if norm_p == 0.0:
        raise PIndexError("optimizer undefined for A = 0")
    blocks = []
    for blk in a.blocks:
        u, pos = matcore.polar(blk)
        blocks.append(matcore.real_power_psd(pos, p - 1.0) @ u.conj().T)
    b = BlockOperator(a.algebra, blocks)
    return b * (1.0 / norm_p ** (p - 1.0))


def variational_norm(a: BlockOperator, p: float, sample_count: int,
                     rng: np.random.Generator,
                     include_optimizer: bool = True) -> float:
    """max |tau(A B)| over sampled unit-||.||_q B; a lower bound on ||A||_p
    that becomes exact when the Minkowski optimizer is in the sample set."""
    if sample_count < 1:
        raise PIndexError("sample_count must be >= 1")
    p = check_p(p)
    q = conjugate_index(p)
    best = 0.0
    alg = a.algebra
    for _ in range(sample_count):
        b = BlockOperator(
            alg,
            [rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for d in alg.dims],
        )
        nq = lp_norm(b, q)
        if nq == 0.0:
            continue
        best = max(best, abs(duality_pairing(a, b * (1.0 / nq))))
    if include_optimizer and 1 < p < INF and lp_norm(a, p) > 0:
        best = max(best, abs(duality_pairing(a, minkowski_optimizer(a, p))))
    return best


def interpolation_check(a: BlockOperator, p: float, q: float, r: float,
                        slack: float = 1e-12) -> dict:
    """Riesz-Thorin bound between ||A||_p, ||A||_q and ||A||_r, p <= r <= q:

    finite q:  ||A||_r <= ||A||_p^((p/(q-p))(q/r-1)) ||A||_q^((q/(q-p))(1-p/r))
    q = inf:   ||A||_r <= ||A||_p^(p/r) ||A||_inf^(1-p/r)
    """
    p, q, r = check_p(p), check_p(q), check_p(r)
    if not (p <= r <= q):
        raise PIndexError(f"need p <= r <= q, got {p}, {r}, {q}")
    lhs = lp_norm(a, r)
    np_, nq = lp_norm(a, p), lp_norm(a, q)
    if q == p:
        rhs = np_
    elif q == INF:
        rhs = np_ ** (p / r) * nq ** (1.0 - p / r)
    else:
        rhs = np_ ** ((p / (q - p)) * (q / r - 1.0)) * nq ** (
            (q / (q - p)) * (1.0 - p / r)
        )
    scale = max(1.0, rhs)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "violation": max(0.0, (lhs - rhs) / scale),
        "passed": bool(lhs <= rhs + slack * scale),
    }
