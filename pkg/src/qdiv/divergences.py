"""The non-smooth divergence zoo.

All values are in bits (logarithms base 2).  Divergences that genuinely
diverge on support violations are reported as explicit +infinity values,
never as sentinel floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import (
    DensityOperator,
    ValidationError,
    _as_matrix,
    compare_projector,
    eig_decompose,
    generalized_inverse_sqrt,
    hermitian_part,
    partial_trace_matrix,
    support_projector,
    trace_distance,
)

# supp(rho) is declared contained in supp(sigma) iff the compression of rho
# onto the kernel of sigma is below this operator-norm tolerance.
SUPPORT_LEAK_TOL = 1e-9

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class DivergenceValue:
    """An extended-real divergence in bits; +inf is a first-class value."""

    bits: float
    finite: bool

    @classmethod
    def of(cls, bits: float) -> "DivergenceValue":
        return cls(bits=float(bits), finite=math.isfinite(bits))

    @classmethod
    def infinite(cls) -> "DivergenceValue":
        return cls(bits=math.inf, finite=False)


@dataclass(frozen=True)
class DivergenceReport:
    d_min: DivergenceValue
    d_max: DivergenceValue
    rel_entropy: DivergenceValue
    chernoff: DivergenceValue
    sandwich_ok: bool


def _check_psd(sigma_mat: np.ndarray):
    w = np.linalg.eigvalsh(sigma_mat)
    if w[0] < -1e-10 * max(1.0, abs(w[-1])):
        raise ValidationError(f"sigma has negative eigenvalue {w[0]:.3e}")


def support_contained(rho, sigma, tol: float = SUPPORT_LEAK_TOL) -> bool:
    """supp(rho) subseteq supp(sigma), robust to eigenvector noise."""
    rm, sm = _as_matrix(rho), _as_matrix(sigma)
    pker = np.eye(sm.shape[0]) - support_projector(sm).mat
    leak = hermitian_part(pker @ rm @ pker)
    return float(np.abs(np.linalg.eigvalsh(leak)).max()) <= tol


def _fn_on_support(mat: np.ndarray, fn) -> np.ndarray:
    """Apply a scalar function to the nonzero eigenvalues, zero on the kernel."""
    spec = eig_decompose(mat)
    w = spec.eigenvalues
    thr = 1e-10 * max(w.max(), 0.0) if w.size else 0.0
    vals = np.where(w > max(thr, 0.0), fn(np.maximum(w, 1e-300)), 0.0)
    v = spec.eigenvectors
    return (v * vals) @ v.conj().T


def matrix_power_on_support(mat: np.ndarray, p: float) -> np.ndarray:
    return _fn_on_support(mat, lambda w: w**p)


def d_max(rho, sigma) -> DivergenceValue:
    """Max-relative entropy: log2 of the smallest lambda with rho <= lambda sigma."""
    rm, sm = _as_matrix(rho), _as_matrix(sigma)
    _check_psd(sm)
    if not support_contained(rm, sm):
        return DivergenceValue.infinite()
    w = generalized_inverse_sqrt(sm).mat
    mu = np.linalg.eigvalsh(hermitian_part(w @ rm @ w))[-1]
    return DivergenceValue.of(math.log2(max(mu, 1e-300)))


def d_max_witness_residual(rho, sigma, bits: float) -> float:
    """Self-check against the two-projector form: Tr[{rho >= lam sigma}(rho - lam sigma)]
    evaluated at lam = 2**bits; near zero iff bits dominates rho."""
    rm, sm = _as_matrix(rho), _as_matrix(sigma)
    lam = 2.0**bits
    diff = rm - lam * sm
    p = compare_projector(rm, lam * sm, ">=").mat
    return float(np.trace(p @ diff).real)


def d_max_forms(rho, sigma, bit_resolution: float = 1e-11) -> tuple:
    """The three equivalent definitions of the max-relative entropy, computed
    independently: operator-inequality bisection, whitened maximum eigenvalue,
    and vanishing-positive-part bisection."""
    rm, sm = _as_matrix(rho), _as_matrix(sigma)
    form2 = d_max(rm, sm)
    if not form2.finite:
        return (DivergenceValue.infinite(), form2, DivergenceValue.infinite())
    lo, hi = form2.bits - 30.0, form2.bits + 30.0

    def psd_ok(bits):
        lam = 2.0**bits
        return np.linalg.eigvalsh(lam * sm - rm)[0] >= -1e-13 * max(1.0, lam)

    def positive_part_gone(bits):
        lam = 2.0**bits
        diff = rm - lam * sm
        w = np.linalg.eigvalsh(diff)
        return float(np.clip(w, 0.0, None).sum()) <= 1e-13

    def bisect(pred):
        a, b = lo, hi
        while b - a > bit_resolution:
            mid = (a + b) / 2
            if pred(mid):
                b = mid
            else:
                a = mid
        return b

    form1 = DivergenceValue.of(bisect(psd_ok))
    form3 = DivergenceValue.of(bisect(positive_part_gone))
    return (form1, form2, form3)


def d_min(rho, sigma) -> DivergenceValue:
    """Min-relative entropy: -log2 Tr(pi_rho sigma)."""
    rm, sm = _as_matrix(rho), _as_matrix(sigma)
    _check_psd(sm)
    pi = support_projector(rm).mat
    overlap = float(np.trace(pi @ sm).real)
    if overlap <= 0:
        return DivergenceValue.infinite()
    return DivergenceValue.of(-math.log2(overlap))


def relative_entropy(rho, sigma) -> DivergenceValue:
    """Quantum relative entropy S(rho||sigma) = Tr[rho log2 rho - rho log2 sigma],
    evaluated on supp(sigma) with the 0 log 0 = 0 convention."""
    rm, sm = _as_matrix(rho), _as_matrix(sigma)
    _check_psd(sm)
    if not support_contained(rm, sm):
        return DivergenceValue.infinite()
    log_r = _fn_on_support(rm, np.log2)
    log_s = _fn_on_support(sm, np.log2)
    val = float(np.trace(rm @ (log_r - log_s)).real)
    return DivergenceValue.of(val)


def renyi_relative(rho, sigma, alpha: float) -> DivergenceValue:
    """Relative Renyi entropy S_alpha for 0 < alpha < 1 (powers on supports)."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    rm, sm = _as_matrix(rho), _as_matrix(sigma)
    _check_psd(sm)
    ra = matrix_power_on_support(rm, alpha)
    sb = matrix_power_on_support(sm, 1.0 - alpha)
    overlap = float(np.trace(ra @ sb).real)
    if overlap <= 0:
        return DivergenceValue.infinite()
    return DivergenceValue.of(math.log2(overlap) / (alpha - 1.0))


def _chernoff_objective(rm: np.ndarray, sm: np.ndarray):
    spec_r, spec_s = eig_decompose(rm), eig_decompose(sm)
    pi_r = support_projector(rm).mat
    pi_s = support_projector(sm).mat

    def power(spec, p):
        w = spec.eigenvalues
        thr = 1e-12 * max(w.max(), 0.0)
        vals = np.where(w > thr, np.maximum(w, 1e-300) ** p, 0.0)
        return (spec.eigenvectors * vals) @ spec.eigenvectors.conj().T

    def f(s):
        if s <= 0.0:
            left = pi_r
        else:
            left = power(spec_r, s)
        if s >= 1.0:
            right = pi_s
        else:
            right = power(spec_s, 1.0 - s)
        return float(np.trace(left @ right).real)

    return f


def chernoff_bound(rho, sigma) -> DivergenceValue:
    """Quantum Chernoff bound xi = -log2 min_{0<=s<=1} Tr rho^s sigma^{1-s}.

    Golden-section refinement after a 64-point bracketing grid; endpoints use
    the support-projector convention rho^0 := pi_rho.
    """
    rm, sm = _as_matrix(rho), _as_matrix(sigma)
    f = _chernoff_objective(rm, sm)
    grid = np.linspace(0.0, 1.0, 64)
    vals = [f(s) for s in grid]
    k = int(np.argmin(vals))
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, len(grid) - 1)]
    # golden-section search on [a, b]
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = f(c), f(d)
    while b - a > 1e-10:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    best = min(min(vals), fc, fd)
    if best <= 0:
        return DivergenceValue.infinite()
    return DivergenceValue.of(-math.log2(best))


def h_min(rho: DensityOperator) -> float:
    """Min-entropy -log2 ||rho||_inf."""
    mu = float(np.linalg.eigvalsh(_as_matrix(rho))[-1])
    return -math.log2(mu)


def h_max(rho: DensityOperator) -> float:
    """Max-entropy log2 rank(rho)."""
    return math.log2(support_projector(rho).rank)


def h_min_cond(rho_ab, sigma_b, dims: tuple) -> float:
    da, _ = dims
    target = np.kron(np.eye(da), _as_matrix(sigma_b))
    return -d_max(rho_ab, target).bits


def h_max_cond(rho_ab, sigma_b, dims: tuple) -> float:
    da, _ = dims
    target = np.kron(np.eye(da), _as_matrix(sigma_b))
    return -d_min(rho_ab, target).bits


def _marginal_product(rho_ab, dims: tuple) -> np.ndarray:
    mat = _as_matrix(rho_ab)
    ra = partial_trace_matrix(mat, dims, "A")
    rb = partial_trace_matrix(mat, dims, "B")
    return np.kron(ra, rb)


def mutual_min(rho_ab, dims: tuple) -> DivergenceValue:
    return d_min(rho_ab, _marginal_product(rho_ab, dims))


def mutual_max(rho_ab, dims: tuple) -> DivergenceValue:
    return d_max(rho_ab, _marginal_product(rho_ab, dims))


def helstrom_min_error(rho, sigma) -> float:
    """Minimum equal-prior discrimination error (1 - trace distance / 2) / 2."""
    return 0.5 * (1.0 - 0.5 * trace_distance(rho, sigma))


def divergence_report(rho, sigma) -> DivergenceReport:
    dmin = d_min(rho, sigma)
    dmax = d_max(rho, sigma)
    rel = relative_entropy(rho, sigma)
    cher = chernoff_bound(rho, sigma)
    if dmin.finite and dmax.finite and rel.finite:
        ok = dmin.bits <= rel.bits + 1e-9 and rel.bits <= dmax.bits + 1e-9
    else:
        ok = dmin.bits <= rel.bits <= dmax.bits
    return DivergenceReport(d_min=dmin, d_max=dmax, rel_entropy=rel, chernoff=cher, sandwich_ok=ok)
