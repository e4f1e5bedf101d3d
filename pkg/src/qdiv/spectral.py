"""Finite-n information-spectrum machinery.

Tensor powers, the spectral trace quantities Tr[{rho_n >= 2^{n gamma} sigma_n} X_n],
smooth-divergence estimates on product states, and rate curves.  Asymptotic
limits are never taken: everything here is an explicit finite-n computation,
with a type-class fast path for commuting pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, logsumexp

from .divergences import d_min, relative_entropy
from .operators import (
    DensityOperator,
    ValidationError,
    compare_projector,
    hermitian_part,
)
from .smoothing import smooth_dmax_upper, smooth_dmin_lower

DENSE_DIM_GUARD = 4096
TYPE_COUNT_GUARD = 2_000_000
RATIO_QUANTUM = 1e-9


@dataclass(frozen=True)
class IIDPair:
    """A single-copy pair (rho, sigma) generating the product sequences."""

    rho: DensityOperator
    sigma: DensityOperator
    commuting: bool = field(init=False)

    def __post_init__(self):
        comm = self.rho.mat @ self.sigma.mat - self.sigma.mat @ self.rho.mat
        norm = float(np.abs(np.linalg.eigvalsh(hermitian_part(1j * comm))).max()) if self.rho.dim > 1 else 0.0
        object.__setattr__(self, "commuting", norm <= 1e-10)


@dataclass(frozen=True)
class RatePoint:
    n: int
    eps: float
    dmax_over_n: float
    dmin_over_n: float
    rel_entropy: float


def tensor_power(rho: DensityOperator, n: int) -> DensityOperator:
    if n < 1:
        raise ValueError("n must be >= 1")
    if rho.dim**n > DENSE_DIM_GUARD:
        raise ValidationError(
            f"dim^n = {rho.dim ** n} exceeds the dense guard {DENSE_DIM_GUARD}; "
            "use the commuting fast path"
        )
    out = rho.mat
    for _ in range(n - 1):
        out = np.kron(out, rho.mat)
    return DensityOperator.from_matrix(out)


def _tensor_power_matrix(mat: np.ndarray, n: int) -> np.ndarray:
    out = mat
    for _ in range(n - 1):
        out = np.kron(out, mat)
    return out


def joint_eigen_probabilities(pair: IIDPair) -> tuple:
    """Common-eigenbasis weights (p_i, q_i) of a commuting pair."""
    if not pair.commuting:
        raise ValidationError("pair does not commute")
    w, v = np.linalg.eigh(pair.rho.mat)
    # split sigma inside degenerate eigenspaces of rho
    q = np.empty_like(w)
    i = 0
    while i < len(w):
        j = i + 1
        while j < len(w) and abs(w[j] - w[i]) <= 1e-10:
            j += 1
        block = v[:, i:j]
        sub = block.conj().T @ pair.sigma.mat @ block
        sw, sv = np.linalg.eigh(hermitian_part(sub))
        v[:, i:j] = block @ sv
        q[i:j] = sw
        i = j
    p = np.clip(w, 0.0, None)
    q = np.clip(q, 0.0, None)
    return p, q


def _compositions(n: int, d: int):
    """All ways to split n into d nonnegative parts."""
    if d == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, d - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class TypeTable:
    """Per-type log masses and quantized per-sequence log-likelihood ratios."""

    log_p: np.ndarray      # log of total rho-mass of each type class
    log_q: np.ndarray      # log of total sigma-mass of each type class
    ratio_bits: np.ndarray  # per-sequence log2(P/Q); +/-inf on zero masses


def type_table(p: np.ndarray, q: np.ndarray, n: int) -> TypeTable:
    d = len(p)
    count = math.comb(n + d - 1, d - 1)
    if count > TYPE_COUNT_GUARD:
        raise ValidationError(f"{count} type classes exceed the guard {TYPE_COUNT_GUARD}")
    ks = np.array(list(_compositions(n, d)), dtype=float)
    logmult = gammaln(n + 1) - gammaln(ks + 1).sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        lp = np.where(p > 0, np.log(p, where=p > 0, out=np.full_like(p, -np.inf)), -np.inf)
        lq = np.where(q > 0, np.log(q, where=q > 0, out=np.full_like(q, -np.inf)), -np.inf)
        seq_lp = np.where((ks > 0) & np.isneginf(lp)[None, :], -np.inf, ks * lp).sum(axis=1)
        seq_lq = np.where((ks > 0) & np.isneginf(lq)[None, :], -np.inf, ks * lq).sum(axis=1)
    ratio = (seq_lp - seq_lq) / math.log(2.0)
    # 0/0 sequences carry no mass on either side; treat as included ties (+inf)
    ratio = np.where(np.isneginf(seq_lp) & np.isneginf(seq_lq), np.inf, ratio)
    finite = np.isfinite(ratio)
    ratio[finite] = np.round(ratio[finite] / RATIO_QUANTUM) * RATIO_QUANTUM
    return TypeTable(log_p=logmult + seq_lp, log_q=logmult + seq_lq, ratio_bits=ratio)


def _mass(logs: np.ndarray, mask: np.ndarray) -> float:
    if not mask.any():
        return 0.0
    return float(np.exp(logsumexp(logs[mask])))


def spectral_trace(pair: IIDPair, n: int, gamma_bits: float, *,
                   strict: bool = False, weight: str = "rho",
                   method: str = "auto") -> float:
    """Tr[{rho^(n) >= 2^{n gamma} sigma^(n)} X^(n)] with X = rho or sigma.

    ``method`` selects the dense tensor-power path, the commuting type-class
    fast path, or automatic dispatch.
    """
    if weight not in ("rho", "sigma"):
        raise ValueError("weight must be 'rho' or 'sigma'")
    threshold = n * gamma_bits
    use_fast = method == "fast" or (method == "auto" and pair.commuting)
    if use_fast:
        p, q = joint_eigen_probabilities(pair)
        table = type_table(p, q, n)
        tol = 0.5 * RATIO_QUANTUM
        mask = table.ratio_bits > threshold + tol if strict else table.ratio_bits >= threshold - tol
        logs = table.log_p if weight == "rho" else table.log_q
        return _mass(logs, mask)
    if method == "fast":
        raise ValidationError("fast path requires a commuting pair")
    rho_n = _tensor_power_matrix(pair.rho.mat, n)
    sigma_n = _tensor_power_matrix(pair.sigma.mat, n)
    if rho_n.shape[0] > DENSE_DIM_GUARD:
        raise ValidationError("dense path exceeds the size guard")
    proj = compare_projector(rho_n, (2.0**threshold) * sigma_n, ">" if strict else ">=").mat
    target = rho_n if weight == "rho" else sigma_n
    return max(float(np.trace(proj @ target).real), 0.0)


def lemma2_bound_check(pair: IIDPair, n: int, gamma_bits: float) -> tuple:
    """(Tr[{rho_n >= 2^{n gamma} sigma_n} sigma_n], 2^{-n gamma})."""
    lhs = spectral_trace(pair, n, gamma_bits, weight="sigma")
    return lhs, 2.0 ** (-n * gamma_bits)


def _classical_smooth_dmax_types(table: TypeTable, eps: float,
                                 bit_resolution: float = 1e-9) -> float:
    """Smallest total lambda with sum over types of (P - 2^lambda Q)_+ <= eps."""
    p_mass = np.exp(table.log_p)
    q_mass = np.exp(table.log_q)
    if p_mass[q_mass <= 0].sum() > eps + 1e-15:
        return math.inf

    def cost(lam):
        return float(np.clip(p_mass - (2.0**lam) * q_mass, 0.0, None).sum())

    finite = np.isfinite(table.ratio_bits) & (p_mass > 0)
    if not finite.any():
        return -math.inf
    lo = float(table.ratio_bits[finite].min()) - 1.0
    hi = float(table.ratio_bits[finite].max()) + 1e-9
    while cost(lo) <= eps and lo > hi - 10_000.0:
        hi = lo
        lo -= 8.0
    while hi - lo > bit_resolution:
        mid = (lo + hi) / 2
        if cost(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi


def _classical_smooth_dmin_types(table: TypeTable, eps: float) -> float:
    """Projector-sweep lower bound on the smooth min-relative entropy over type
    prefixes ordered by likelihood ratio (the full gamma sweep, evaluated at
    every achievable threshold)."""
    p_mass = np.exp(table.log_p)
    q_mass = np.exp(table.log_q)
    order = np.argsort(table.ratio_bits)[::-1]
    p_sorted = p_mass[order]
    q_sorted = q_mass[order]
    supported = p_sorted > 0
    cum_p = np.cumsum(p_sorted)
    cum_q = np.cumsum(q_sorted)
    total_p = cum_p[-1]
    # unsmoothed value: support of the full distribution
    base_q = q_sorted[supported].sum()
    best = -math.log2(base_q) if base_q > 0 else math.inf
    for j in range(len(order)):
        delta = max(total_p - cum_p[j], 0.0)
        if 2.0 * math.sqrt(delta) > eps:
            continue
        if cum_p[j] <= 0:
            continue
        kept_q = q_sorted[: j + 1][supported[: j + 1]].sum()
        val = math.inf if kept_q <= 0 else -math.log2(kept_q)
        if val > best:
            best = val
    return best


def rate_curve(pair: IIDPair, eps: float, n_list) -> list:
    """Per-n smoothed divergence rates for the product sequence.

    Commuting pairs use the exact classical smoothers on type classes; general
    pairs use the dense solvers under the size guard.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    rel = relative_entropy(pair.rho.mat, pair.sigma.mat)
    points = []
    if pair.commuting:
        p, q = joint_eigen_probabilities(pair)
        for n in n_list:
            table = type_table(p, q, n)
            dmax_n = _classical_smooth_dmax_types(table, eps)
            dmin_n = _classical_smooth_dmin_types(table, eps)
            points.append(RatePoint(n=n, eps=eps, dmax_over_n=dmax_n / n,
                                    dmin_over_n=dmin_n / n, rel_entropy=rel.bits))
        return points
    for n in n_list:
        rho_n = tensor_power(pair.rho, n)
        sigma_n = tensor_power(pair.sigma, n)
        dmax_n = smooth_dmax_upper(rho_n, sigma_n, eps).lambda_bits
        dmin_n = smooth_dmin_lower(rho_n, sigma_n, eps)
        points.append(RatePoint(n=n, eps=eps, dmax_over_n=dmax_n / n,
                                dmin_over_n=dmin_n / n, rel_entropy=rel.bits))
    return points


def divergence_rate_estimate(pair: IIDPair, eps: float, n_max: int) -> dict:
    """Finite-n estimates of the sup/inf spectral divergence rates.

    These are the n = n_max points of the rate curve, not limits.
    """
    point = rate_curve(pair, eps, [n_max])[0]
    return {"sup_est": point.dmax_over_n, "inf_est": point.dmin_over_n}


def unsmoothed_dmin_rate(pair: IIDPair, n: int) -> float:
    """D_min(rho^n || sigma^n) / n, for cross-checks."""
    rho_n = tensor_power(pair.rho, n)
    sigma_n = tensor_power(pair.sigma, n)
    return d_min(rho_n.mat, sigma_n.mat).bits / n
