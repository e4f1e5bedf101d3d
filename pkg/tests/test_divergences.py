import math

import numpy as np
import pytest

from qdiv.divergences import (
    chernoff_bound,
    d_max,
    d_max_forms,
    d_max_witness_residual,
    d_min,
    divergence_report,
    h_max,
    h_max_cond,
    h_min,
    h_min_cond,
    helstrom_min_error,
    mutual_max,
    mutual_min,
    relative_entropy,
    renyi_relative,
)
from qdiv.operators import DensityOperator, ValidationError, random_density

P = np.diag([0.75, 0.25]).astype(complex)
Q = np.diag([0.5, 0.5]).astype(complex)


def bell():
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return np.outer(v, v.conj())


def test_dmax_diagonal_ratio():
    assert d_max(P, Q).bits == pytest.approx(math.log2(1.5), abs=1e-12)


def test_dmax_pure_vs_mixed():
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert d_max(rho, Q).bits == pytest.approx(1.0, abs=1e-12)


def test_dmax_infinite_outside_support():
    rho = np.diag([0.5, 0.5]).astype(complex)
    sigma = np.diag([1.0, 0.0]).astype(complex)
    assert not d_max(rho, sigma).finite


def test_dmax_three_forms_agree():
    rng = np.random.default_rng(3)
    for dim in (2, 3, 4, 5, 6):
        rho = random_density(dim, dim, rng).mat
        sigma = random_density(dim, dim, rng).mat
        f1, f2, f3 = d_max_forms(rho, sigma)
        vals = (f1.bits, f2.bits, f3.bits)
        assert max(vals) - min(vals) < 1e-8


def test_dmax_witness_residual_near_zero():
    assert abs(d_max_witness_residual(P, Q, d_max(P, Q).bits)) < 1e-10


def test_dmin_partial_support():
    rho = np.diag([0.9, 0.1, 0.0]).astype(complex)
    sigma = np.eye(3, dtype=complex) / 3
    assert d_min(rho, sigma).bits == pytest.approx(math.log2(1.5), abs=1e-12)


def test_dmin_zero_for_full_support():
    assert d_min(P, Q).bits == pytest.approx(0.0, abs=1e-12)


def test_relative_entropy_diagonal():
    assert relative_entropy(P, Q).bits == pytest.approx(0.188722, abs=1e-6)


def test_renyi_half_value():
    assert renyi_relative(P, Q, 0.5).bits == pytest.approx(0.100031, abs=1e-6)


def test_renyi_alpha_out_of_range():
    for alpha in (0.0, 1.0, -0.3, 1.7):
        with pytest.raises(ValueError):
            renyi_relative(P, Q, alpha)


def test_renyi_small_alpha_approaches_dmin():
    rho = np.diag([0.9, 0.1, 0.0]).astype(complex)
    sigma = np.eye(3, dtype=complex) / 3
    val = renyi_relative(rho, sigma, 1e-6).bits
    assert val == pytest.approx(d_min(rho, sigma).bits, abs=1e-4)


def test_chernoff_frozen_value():
    assert chernoff_bound(P, Q).bits == pytest.approx(0.0500, abs=5e-4)


def test_chernoff_dominates_dmin():
    rng = np.random.default_rng(11)
    for trial in range(100):
        dim = 2 + trial % 3
        rho = random_density(dim, dim, rng).mat
        sigma = random_density(dim, dim, rng).mat
        assert chernoff_bound(rho, sigma).bits >= d_min(rho, sigma).bits - 1e-9


def test_hmin_hmax_diagonal():
    rho = DensityOperator.from_matrix(P)
    assert h_min(rho) == pytest.approx(-math.log2(0.75), abs=1e-12)
    assert h_max(rho) == pytest.approx(1.0, abs=1e-12)


def test_hmin_cond_bell_is_minus_one():
    sigma_b = np.eye(2, dtype=complex) / 2
    assert h_min_cond(bell(), sigma_b, (2, 2)) == pytest.approx(-1.0, abs=1e-9)


def test_hmin_cond_maximally_mixed_product():
    rho_a = np.eye(2, dtype=complex) / 2
    rho_b = np.diag([0.7, 0.3]).astype(complex)
    joint = np.kron(rho_a, rho_b)
    assert h_min_cond(joint, rho_b, (2, 2)) == pytest.approx(1.0, abs=1e-9)


def test_hmax_cond_bell():
    sigma_b = np.eye(2, dtype=complex) / 2
    assert h_max_cond(bell(), sigma_b, (2, 2)) == pytest.approx(-1.0, abs=1e-9)


def test_mutual_information_bell():
    assert mutual_max(bell(), (2, 2)).bits == pytest.approx(2.0, abs=1e-9)
    assert mutual_min(bell(), (2, 2)).bits == pytest.approx(2.0, abs=1e-9)


def test_mutual_information_product_zero():
    joint = np.kron(P, Q)
    assert mutual_max(joint, (2, 2)).bits == pytest.approx(0.0, abs=1e-9)
    assert mutual_min(joint, (2, 2)).bits == pytest.approx(0.0, abs=1e-9)


def test_helstrom_diagonal():
    rho = np.diag([0.9, 0.1]).astype(complex)
    assert helstrom_min_error(rho, Q) == pytest.approx(0.3, abs=1e-12)


def test_report_sandwich():
    rng = np.random.default_rng(5)
    rho = random_density(3, 3, rng).mat
    sigma = random_density(3, 3, rng).mat
    rep = divergence_report(rho, sigma)
    assert rep.sandwich_ok
    assert rep.d_min.bits <= rep.rel_entropy.bits <= rep.d_max.bits + 1e-9


def test_sigma_must_be_psd():
    bad = np.diag([1.2, -0.2]).astype(complex)
    with pytest.raises(ValidationError):
        d_max(P, bad)
