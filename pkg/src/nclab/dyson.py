"""Time-ordered exponentials (expansionals) with simplex quadrature, their
algebraic identities, Duhamel's formula, the perturbed thermal vector, and
the alternating perturbation series with its exact oracle.

The iterated simplex integrals are evaluated with a spectral collocation
rule: function values at Gauss-Legendre nodes are mapped to cumulative
integrals through their Legendre expansion, so each nesting level costs one
matrix-matrix product per node and the quadrature error decays spectrally
for the entire integrands that arise here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import matcore
from .algebra import BlockAlgebra, BlockOperator, hs_norm
from .kms import GibbsSystem, gibbs, kms_function
from .modular import StandardForm

MAX_TERMS = 30
DIVERGENCE_FACTOR = 1e6
DIVERGENCE_RUN = 5


class ExpansionalError(RuntimeError):
    pass


class ExpansionalOverflowError(ExpansionalError):
    """Series did not settle within the term budget; carries the partial
    sum norms seen so far."""

    def __init__(self, message: str, partial_norms: list[float]):
        super().__init__(message)
        self.partial_norms = partial_norms


class OperatorPath:
    """A map t -> A(t), one of

    - ``constant``:   A(t) = A
    - ``conjugated``: A(t) = e^{tB} A e^{-tB}
    - ``modular``:    A(t) = rho^t A rho^{-t}  (imaginary-time modular flow)

    each with a closed-form bound on sup ||A(t)|| over [0, T] and an exact
    shift ``t -> t + t0``.
    """

    def __init__(self, kind: str, a: BlockOperator,
                 b: BlockOperator | None = None,
                 sf: StandardForm | None = None,
                 scale: complex = 1.0):
        if kind not in ("constant", "conjugated", "modular"):
            raise ValueError(f"unknown path kind {kind!r}")
        if kind == "conjugated" and b is None:
            raise ValueError("conjugated path needs the generator B")
        if kind == "modular" and sf is None:
            raise ValueError("modular path needs a standard form")
        self.kind = kind
        self.a = a
        self.b = b
        self.sf = sf
        self.scale = scale

    @property
    def algebra(self) -> BlockAlgebra:
        return self.a.algebra

    def __call__(self, t: float) -> BlockOperator:
        if self.kind == "constant":
            out = self.a
        elif self.kind == "conjugated":
            out = _conjugate_by_exp(self.b, t, self.a)
        else:
            out = self.sf.rho_power(t) @ self.a @ self.sf.rho_power(-t)
        return self.scale * out

    def sup_norm_bound(self, t_max: float) -> float:
        """Closed-form bound for sup_{0 <= t <= T} ||A(t)||."""
        base = self.a.op_norm() * abs(self.scale)
        if self.kind == "constant":
            return base
        if self.kind == "conjugated":
            growth = _log_norm(self.b) + _log_norm(-1.0 * self.b)
            return base * math.exp(max(0.0, growth) * t_max)
        cond = max(
            float(np.max(w) / np.min(w)) for w in self.sf.eigenvalues
        )
        return base * cond ** t_max

    def shift(self, t0: float) -> "OperatorPath":
        """The path s -> A(s + t0), again in closed form."""
        if self.kind == "constant":
            return self
        if self.kind == "conjugated":
            a0 = _conjugate_by_exp(self.b, t0, self.a)
            return OperatorPath("conjugated", a0, b=self.b, scale=self.scale)
        a0 = self.sf.rho_power(t0) @ self.a @ self.sf.rho_power(-t0)
        return OperatorPath("modular", a0, sf=self.sf, scale=self.scale)

    def negated(self) -> "OperatorPath":
        return OperatorPath(self.kind, self.a, b=self.b, sf=self.sf,
                            scale=-self.scale)


def _log_norm(b: BlockOperator) -> float:
    """Logarithmic norm: largest eigenvalue of (B + B*)/2."""
    return max(
        float(np.linalg.eigvalsh((blk + blk.conj().T) / 2)[-1])
        for blk in b.blocks
    )


def _conjugate_by_exp(b: BlockOperator, t: float, a: BlockOperator) -> BlockOperator:
    left = blockwise_expm(t * b)
    right = blockwise_expm(-t * b)
    return left @ a @ right


def blockwise_expm(a: BlockOperator) -> BlockOperator:
    return BlockOperator(a.algebra, [scipy.linalg.expm(blk) for blk in a.blocks])


@dataclass
class SeriesResult:
    value: BlockOperator
    terms_used: int
    tail_bound: float
    converged: bool
    quad_error: float = 0.0
    term_norms: list[float] = field(default_factory=list)


def _exp_tail(x: float, n: int) -> float:
    """Upper bound on sum_{k > n} x^k / k!."""
    if x <= 0:
        return 0.0
    k = n + 1
    log_term = k * math.log(x) - math.lgamma(k + 1)
    if log_term > 600:
        return math.inf
    term = math.exp(log_term)
    if x < k + 1:
        return term / (1.0 - x / (k + 1))
    total, kk = 0.0, k
    while term > 1e-300 * max(1.0, total) or kk < x + 10:
        total += term
        kk += 1
        term *= x / kk
        if kk > n + 10000:
            return math.inf
    return total + term / (1.0 - min(0.5, x / (kk + 1)))


class _Collocation:
    """Gauss-Legendre collocation on [0, t] with cumulative integration."""

    def __init__(self, m: int, t: float):
        y, w = np.polynomial.legendre.leggauss(m)
        self.nodes = (y + 1.0) * (t / 2.0)
        vander = np.polynomial.legendre.legvander(y, m)  # degrees 0..m
        coeff = (vander[:, :m] * w[:, None]).T * ((2 * np.arange(m) + 1) / 2.0)[:, None]
        anti = np.zeros((m, m))
        anti[:, 0] = y + 1.0
        for k in range(1, m):
            anti[:, k] = (vander[:, k + 1] - vander[:, k - 1]) / (2 * k + 1)
        self.cumulative = (t / 2.0) * anti @ coeff
        self.full = t * coeff[0, :]


def _series_engine(path: OperatorPath, t: float, tol: float, order: str,
                   max_terms: int, m: int) -> SeriesResult:
    alg = path.algebra
    rule = _Collocation(m, t)
    values = [path(float(s)) for s in rule.nodes]
    nodes_by_block = [
        np.stack([v.blocks[k] for v in values]) for k in range(len(alg.dims))
    ]
    current = [
        np.broadcast_to(np.eye(d, dtype=complex), (m, d, d)).copy()
        for d in alg.dims
    ]
    partial = BlockOperator.identity(alg)
    r = path.sup_norm_bound(t)
    term_norms: list[float] = []
    partial_norms = [hs_norm(partial)]
    grow_run = 0
    for n in range(1, max_terms + 1):
        term_blocks = []
        nxt = []
        for k, d in enumerate(alg.dims):
            if order == "right":
                g = current[k] @ nodes_by_block[k]
            else:
                g = nodes_by_block[k] @ current[k]
            flat = g.reshape(m, d * d)
            nxt.append((rule.cumulative @ flat).reshape(m, d, d))
            term_blocks.append((rule.full @ flat).reshape(d, d))
        current = nxt
        term = BlockOperator(alg, term_blocks)
        partial = partial + term
        term_norms.append(hs_norm(term))
        partial_norms.append(hs_norm(partial))
        growing = (
            partial_norms[-1] > DIVERGENCE_FACTOR * max(1.0, partial_norms[0])
            and partial_norms[-1] > partial_norms[-2]
        )
        grow_run = grow_run + 1 if growing else 0
        if grow_run >= DIVERGENCE_RUN:
            raise ExpansionalOverflowError(
                f"series diverging after {n} terms", partial_norms
            )
        tail = _exp_tail(t * r, n)
        if tail <= tol:
            return SeriesResult(
                value=partial, terms_used=n, tail_bound=tail,
                converged=True, term_norms=term_norms,
            )
    raise ExpansionalOverflowError(
        f"tail bound did not reach {tol} within {max_terms} terms "
        f"(t*r = {t * r:.3g})",
        partial_norms,
    )


def _adaptive(path: OperatorPath, t: float, tol: float, order: str,
              max_terms: int) -> SeriesResult:
    r = path.sup_norm_bound(t)
    m = int(min(48, max(16, 8 + 2 * math.ceil(t * r))))
    result = _series_engine(path, t, tol, order, max_terms, m)
    while True:
        m2 = min(int(math.ceil(1.5 * m)), 72)
        refined = _series_engine(path, t, tol, order, max_terms, m2)
        quad = hs_norm(refined.value - result.value)
        result = refined
        result.quad_error = quad
        if quad <= tol / 10.0 or m2 >= 72:
            return result
        m = m2


def expansional_r(path: OperatorPath, t: float, tol: float,
                  max_terms: int = MAX_TERMS) -> SeriesResult:
    """Exp_r: sum of simplex integrals of A(t_n)...A(t_1); equals e^{tA}
    for constant paths."""
    if t < 0 or tol <= 0:
        raise ExpansionalError("need t >= 0 and tol > 0")
    return _adaptive(path, t, tol, "right", max_terms)


def expansional_l(path: OperatorPath, t: float, tol: float,
                  max_terms: int = MAX_TERMS) -> SeriesResult:
    """Exp_l: the reversed-order expansional."""
    if t < 0 or tol <= 0:
        raise ExpansionalError("need t >= 0 and tol > 0")
    return _adaptive(path, t, tol, "left", max_terms)


def identity_report(name: str, lhs_norm: float, rhs_norm: float,
                    residual: float, tol: float) -> dict:
    """The wire form of one verified operator identity."""
    return {
        "name": name,
        "lhs_norm": float(lhs_norm),
        "rhs_norm": float(rhs_norm),
        "residual": float(residual),
        "tol": float(tol),
        "passed": bool(residual <= tol),
    }


def expansional_identities_check(path: OperatorPath, t: float,
                                 tol: float = 1e-10,
                                 max_terms: int = 45,
                                 assert_tol: float = 1e-9) -> dict:
    """Inverse identities Exp_l(-A) Exp_r(A) = Exp_r(A) Exp_l(-A) = 1 and
    the cocycle splitting over [0, t] + [t, t + t']."""
    ident = BlockOperator.identity(path.algebra)
    er = expansional_r(path, t, tol, max_terms)
    el = expansional_l(path.negated(), t, tol, max_terms)
    one = hs_norm(ident)
    left_inverse = hs_norm(el.value @ er.value - ident)
    right_inverse = hs_norm(er.value @ el.value - ident)
    t1, t2 = 0.6 * t, 0.4 * t
    split_val = (
        expansional_r(path, t1, tol, max_terms).value
        @ expansional_r(path.shift(t1), t2, tol, max_terms).value
    )
    split = hs_norm(split_val - er.value)
    reports = [
        identity_report("left-inverse", hs_norm(el.value @ er.value), one,
                        left_inverse, assert_tol),
        identity_report("right-inverse", hs_norm(er.value @ el.value), one,
                        right_inverse, assert_tol),
        identity_report("cocycle-splitting", hs_norm(split_val),
                        hs_norm(er.value), split, assert_tol),
    ]
    return {
        "left_inverse_residual": left_inverse,
        "right_inverse_residual": right_inverse,
        "cocycle_residual": split,
        "reports": reports,
        "passed": all(r["passed"] for r in reports),
    }


def duhamel_check(a: BlockOperator, b: BlockOperator, t: float,
                  tol: float = 1e-8, max_terms: int = 45) -> dict:
    """|| Exp_r(int e^{sB} A e^{-sB} ds) e^{tB} - e^{t(A+B)} || <= tol."""
    path = OperatorPath("conjugated", a, b=b)
    series = expansional_r(path, t, tol / 2.0, max_terms)
    lhs = series.value @ blockwise_expm(t * b)
    rhs = blockwise_expm(t * (a + b))
    residual = hs_norm(lhs - rhs)
    return {
        "residual": residual,
        "terms_used": series.terms_used,
        "tail_bound": series.tail_bound,
        "passed": bool(residual <= tol),
    }


def araki_perturbed_vector(gs: GibbsSystem, q: BlockOperator) -> BlockOperator:
    """Normalized perturbed thermal vector e^{-beta(H+Q)/2} / ||.||_HS."""
    matcore_blocks = []
    for hb, qb in zip(gs.hamiltonian.blocks, q.blocks):
        matcore_blocks.append(
            matcore.matrix_function(hb + qb, lambda w: np.exp(-gs.beta * w / 2.0))
        )
    vec = BlockOperator(gs.algebra, matcore_blocks)
    return vec * (1.0 / hs_norm(vec))


def vector_state(psi: BlockOperator, a: BlockOperator) -> complex:
    """omega(A) = <psi, A psi> in the trace-weighted GNS space."""
    from .algebra import hs_inner

    return hs_inner(psi, a @ psi)


def perturbed_kms_check(gs: GibbsSystem, q: BlockOperator,
                        t_samples: np.ndarray) -> dict:
    """KMS boundary identities for the perturbed vector state against the
    dynamics generated by H + Q at the same beta."""
    psi = araki_perturbed_vector(gs, q)
    pert = gibbs(gs.hamiltonian + q, gs.beta)
    units = list(_probe_pairs(gs.algebra))
    state_gap = max(
        abs(vector_state(psi, a) - pert.state(a)) for a in units
    )
    worst = 0.0
    for a, b in zip(units, reversed(units)):
        for t in t_samples:
            bt = pert.evolve(float(t), b)
            worst = max(
                worst,
                abs(kms_function(pert, a, b, float(t)) - vector_state(psi, a @ bt)),
                abs(
                    kms_function(pert, a, b, float(t) + 1j * pert.beta)
                    - vector_state(psi, bt @ a)
                ),
            )
    scale = max(1.0, max(u.op_norm() for u in units) ** 2)
    return {
        "state_match_residual": state_gap,
        "boundary_residual": worst / scale,
        "passed": bool(state_gap <= 1e-10 and worst / scale <= 1e-9),
    }


def _probe_pairs(alg: BlockAlgebra):
    from .algebra import matrix_units

    units = list(matrix_units(alg))
    step = max(1, len(units) // 6)
    return units[::step]


def _vector_series(sf: StandardForm, q: BlockOperator, sign: float,
                   tol: float, max_terms: int, m: int) -> SeriesResult:
    """sum_n sign^n int_{0 <= u_1 <= ... <= u_n <= 1/2}
    q(u_1) ... q(u_n) Omega, with q(u) = rho^u Q rho^{-u}, peeled from the
    smallest time: N_k(s) = int_s^{1/2} q(v) N_{k-1}(v) dv."""
    alg = sf.algebra
    rule = _Collocation(m, 0.5)
    q_nodes = []
    for s in rule.nodes:
        left = sf.rho_power(float(s))
        right = sf.rho_power(-float(s))
        q_nodes.append(left @ q @ right)
    nodes_by_block = [
        np.stack([v.blocks[k] for v in q_nodes]) for k in range(len(alg.dims))
    ]
    comp = rule.full[None, :] - rule.cumulative  # int_s^{1/2} weights
    current = [
        np.broadcast_to(sf.omega.blocks[k], (m,) + sf.omega.blocks[k].shape).copy()
        for k in range(len(alg.dims))
    ]
    partial = sf.omega.copy()
    cond = max(float(np.max(w) / np.min(w)) for w in sf.eigenvalues)
    c = q.op_norm() * math.sqrt(cond)
    term_norms: list[float] = []
    for n in range(1, max_terms + 1):
        term_blocks = []
        nxt = []
        for k, d in enumerate(alg.dims):
            g = nodes_by_block[k] @ current[k]
            flat = g.reshape(m, d * d)
            nxt.append((comp @ flat).reshape(m, d, d))
            term_blocks.append((rule.full @ flat).reshape(d, d))
        current = nxt
        term = BlockOperator(alg, term_blocks) * (sign ** n)
        partial = partial + term
        term_norms.append(hs_norm(term))
        tail = _exp_tail(0.5 * c, n)
        if tail <= tol:
            return SeriesResult(
                value=partial, terms_used=n, tail_bound=tail,
                converged=True, term_norms=term_norms,
            )
    raise ExpansionalOverflowError(
        f"vector series tail above {tol} after {max_terms} terms",
        term_norms,
    )


def _adaptive_vector(sf: StandardForm, q: BlockOperator, sign: float,
                     tol: float, max_terms: int) -> SeriesResult:
    cond = max(float(np.max(w) / np.min(w)) for w in sf.eigenvalues)
    c = q.op_norm() * math.sqrt(cond)
    m = int(min(48, max(16, 8 + 2 * math.ceil(0.5 * c))))
    result = _vector_series(sf, q, sign, tol, max_terms, m)
    while True:
        m2 = min(int(math.ceil(1.5 * m)), 72)
        refined = _vector_series(sf, q, sign, tol, max_terms, m2)
        quad = hs_norm(refined.value - result.value)
        result = refined
        result.quad_error = quad
        if quad <= tol / 10.0 or m2 >= 72:
            return result
        m = m2


def perturbation_series(sf: StandardForm, q: BlockOperator, trunc_tol: float,
               max_terms: int = MAX_TERMS) -> SeriesResult:
    """Alternating perturbation series
    sum_n (-1)^n int Delta^{t_n} Q Delta^{t_{n-1}-t_n} Q ... Omega
    over the ordered simplex in [0, 1/2]."""
    if not sf.rho.faithful:
        raise ExpansionalError("series needs a faithful density")
    return _adaptive_vector(sf, q, -1.0, trunc_tol, max_terms)


def perturbed_vector_oracle(sf: StandardForm, q: BlockOperator) -> BlockOperator:
    """Exact unnormalized perturbed vector e^{-(K+Q)/2}, K = -log rho."""
    blocks = []
    for w, v, qb in zip(sf.eigenvalues, sf.eigenvectors, q.blocks):
        k = -(v * np.log(w)) @ v.conj().T
        blocks.append(matcore.matrix_function(k + qb, lambda x: np.exp(-x / 2.0)))
    return BlockOperator(sf.algebra, blocks)


def perturbation_series_vs_oracle(sf: StandardForm, q: BlockOperator,
                  trunc_tol: float = 1e-8,
                  max_terms: int = MAX_TERMS) -> dict:
    series = perturbation_series(sf, q, trunc_tol, max_terms)
    oracle = perturbed_vector_oracle(sf, q)
    observed = hs_norm(series.value - oracle)
    budget = series.tail_bound + series.quad_error + trunc_tol
    return {
        "observed_error": observed,
        "error_budget": budget,
        "terms_used": series.terms_used,
        "budget_dominates": bool(observed <= budget),
        "passed": bool(observed <= budget),
    }


def expansional_vector(sf: StandardForm, h: BlockOperator,
                       tol: float = 1e-10) -> SeriesResult:
    """Psi(h) = Exp_r(int_0^{1/2} sigma_{-is}(h) ds) Omega; for hermitian h
    this equals e^{-(K-h)/2} with K = -log rho."""
    return _adaptive_vector(sf, h, +1.0, tol, MAX_TERMS)


def prefactor_series_terms(sf: StandardForm, q: BlockOperator, t: float,
                      lam: float, n_terms: int = 8, n_exact: int = 3,
                      nodes: int = 8) -> dict:
    """Termwise norms of the prefactor form
    sum_n (t/2 lam)^n int_{S_n} Delta^{t_n} Q ... Delta^{t_1} Q Omega
    over the symmetric simplex S_n = {t_i >= 0, sum t_i <= 1/2}.

    This variant has no exact oracle; only termwise absolute convergence is
    certified: small orders by direct quadrature, the rest by the factorial
    majorant (t/2 lam)^n (1/2)^n c^n / n!.
    """
    if lam <= 0:
        raise ExpansionalError("lambda must be positive")
    pref = t / (2.0 * lam)
    cond = max(float(np.max(w) / np.min(w)) for w in sf.eigenvalues)
    c = q.op_norm()
    norms: list[float] = []
    for n in range(1, min(n_exact, n_terms) + 1):
        acc = BlockOperator.zeros(sf.algebra)
        for ts, weight in _simplex_rule(n, 0.5, nodes):
            vec = sf.omega
            for s in ts:
                vec = sf.rho_power(float(s)) @ (q @ vec) @ sf.rho_power(-float(s))
            acc = acc + weight * vec
        norms.append(abs(pref) ** n * hs_norm(acc))
    majorants = [
        abs(pref) ** n * (0.5 ** n / math.factorial(n)) * (c ** n) * math.sqrt(cond)
        for n in range(1, n_terms + 1)
    ]
    tail = _exp_tail(abs(pref) * 0.5 * c, n_terms) * math.sqrt(cond)
    absolutely_convergent = math.isfinite(tail) and all(
        math.isfinite(x) for x in majorants
    )
    return {
        "term_norms": norms,
        "majorants": majorants,
        "tail_majorant": tail,
        "absolutely_convergent": bool(absolutely_convergent),
    }


def _simplex_rule(n: int, total: float, nodes: int):
    """Tensor Gauss-Legendre rule on {t_i >= 0, sum t_i <= total} through
    the Duffy-style substitution t_k = (total - t_1 - ... - t_{k-1}) x_k."""
    y, w = np.polynomial.legendre.leggauss(nodes)
    x = (y + 1.0) / 2.0
    w = w / 2.0

    def rec(budget: float, k: int):
        if k == n:
            yield [], 1.0
            return
        for xi, wi in zip(x, w):
            tk = budget * xi
            for rest, wr in rec(budget - tk, k + 1):
                yield [tk] + rest, wr * wi * budget

    yield from rec(total, 0)
