import math

import numpy as np
import pytest

from qdiv.divergences import relative_entropy
from qdiv.operators import DensityOperator, ValidationError, random_density
from qdiv.spectral import (
    IIDPair,
    divergence_rate_estimate,
    lemma2_bound_check,
    rate_curve,
    spectral_trace,
    tensor_power,
)

RHO = DensityOperator.from_matrix(np.diag([0.75, 0.25]).astype(complex))
SIGMA = DensityOperator.from_matrix(np.diag([0.5, 0.5]).astype(complex))
PAIR = IIDPair(rho=RHO, sigma=SIGMA)


def noncommuting_pair():
    rho = np.array([[0.7, 0.2], [0.2, 0.3]], dtype=complex)
    sigma = np.array([[0.5, -0.1j], [0.1j, 0.5]], dtype=complex)
    return IIDPair(rho=DensityOperator.from_matrix(rho),
                   sigma=DensityOperator.from_matrix(sigma))


def test_tensor_power_basics():
    assert np.allclose(tensor_power(RHO, 1).mat, RHO.mat)
    cube = tensor_power(RHO, 3)
    assert np.trace(cube.mat).real == pytest.approx(1.0)
    w = np.sort(np.linalg.eigvalsh(cube.mat))
    assert w[-1] == pytest.approx(0.75**3, abs=1e-12)


def test_tensor_power_guard():
    with pytest.raises(ValidationError):
        tensor_power(random_density(4, 4, 1), 7)


def test_commuting_detection():
    assert PAIR.commuting
    assert not noncommuting_pair().commuting


def test_spectral_trace_extremes():
    assert spectral_trace(PAIR, 3, -60.0) == pytest.approx(1.0)
    assert spectral_trace(PAIR, 3, 60.0) == pytest.approx(0.0)


def test_spectral_trace_two_copy_value():
    # at gamma = 0.3 only sequences with both letters in the heavy symbol qualify
    assert spectral_trace(PAIR, 2, 0.3) == pytest.approx(9.0 / 16.0, abs=1e-12)


def test_spectral_trace_paths_agree():
    for n in (1, 2, 3, 4):
        for gamma in (-0.5, 0.0, 0.2, 0.4):
            fast = spectral_trace(PAIR, n, gamma, method="fast")
            dense = spectral_trace(PAIR, n, gamma, method="dense")
            assert fast == pytest.approx(dense, abs=1e-10)


def test_spectral_trace_fast_rejects_noncommuting():
    with pytest.raises(ValidationError):
        spectral_trace(noncommuting_pair(), 2, 0.1, method="fast")


def test_lemma2_bound_holds():
    for n in (1, 2, 4, 6):
        for gamma in (0.05, 0.2, 0.5):
            lhs, rhs = lemma2_bound_check(PAIR, n, gamma)
            assert lhs <= rhs + 1e-12


def test_lemma2_single_copy_values():
    lhs, rhs = lemma2_bound_check(PAIR, 1, 0.3)
    assert lhs == pytest.approx(0.5, abs=1e-12)
    assert rhs == pytest.approx(0.812252, abs=1e-6)


def test_lemma2_two_copy_values():
    lhs, rhs = lemma2_bound_check(PAIR, 2, 0.3)
    assert lhs == pytest.approx(0.25, abs=1e-12)
    assert rhs == pytest.approx(2.0 ** (-0.6), abs=1e-12)


def test_rate_curve_equal_states_is_flat():
    pair = IIDPair(rho=SIGMA, sigma=SIGMA)
    for pt in rate_curve(pair, 1e-7, [1, 3, 5]):
        assert abs(pt.dmax_over_n) <= 1e-6
        assert abs(pt.dmin_over_n) <= 1e-6
        assert abs(pt.rel_entropy) <= 1e-12


def test_rate_curve_sandwich_and_convergence():
    rel = relative_entropy(RHO.mat, SIGMA.mat).bits
    points = rate_curve(PAIR, 0.05, list(range(1, 11)))
    for pt in points:
        assert pt.dmin_over_n <= rel + 1e-3
        assert rel <= pt.dmax_over_n + 1e-3
    assert abs(points[9].dmax_over_n - rel) < abs(points[0].dmax_over_n - rel)


def test_rate_curve_fast_path_large_n():
    pt = rate_curve(PAIR, 0.05, [200])[0]
    assert pt.dmax_over_n == pytest.approx(0.260214, abs=1e-5)


def test_divergence_rate_estimate_equal_states():
    pair = IIDPair(rho=SIGMA, sigma=SIGMA)
    est = divergence_rate_estimate(pair, 0.05, 8)
    assert -0.1 <= est["inf_est"] <= 0.1
    assert -0.1 <= est["sup_est"] <= 0.1


def test_divergence_rate_estimate_benchmark():
    est = divergence_rate_estimate(PAIR, 0.05, 10)
    assert est["inf_est"] <= est["sup_est"] + 1e-9
    assert est["sup_est"] == pytest.approx(0.417488, abs=1e-5)


def test_divergence_rate_estimate_ordering_small_eps():
    for n_max in (2, 5, 8):
        est = divergence_rate_estimate(PAIR, 1e-7, n_max)
        assert est["inf_est"] <= est["sup_est"] + 1e-9


def test_rate_curve_rejects_bad_eps():
    with pytest.raises(ValueError):
        rate_curve(PAIR, 0.0, [1])
    with pytest.raises(ValueError):
        rate_curve(PAIR, 1.0, [1])


def test_rate_curve_dense_path_noncommuting():
    points = rate_curve(noncommuting_pair(), 0.01, [1, 2])
    rel = points[0].rel_entropy
    for pt in points:
        assert pt.dmin_over_n <= pt.dmax_over_n + 1e-6
        assert math.isfinite(pt.dmax_over_n)
        assert pt.rel_entropy == pytest.approx(rel)
