import numpy as np
import pytest

from qdiv.operators import (
    DensityOperator,
    HermitianOperator,
    Projector,
    QuantumChannel,
    ValidationError,
    apply_channel,
    compare_projector,
    eig_decompose,
    fidelity,
    partial_trace,
    random_channel,
    random_density,
    random_effect,
    random_instrument,
    random_pure_bipartite,
    random_unitary,
    support_projector,
    tensor,
    trace_distance,
)


def bell():
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return DensityOperator.from_matrix(np.outer(v, v.conj()))


def test_hermitian_rejects_asymmetric():
    with pytest.raises(ValidationError):
        HermitianOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_density_rejects_negative_eigenvalue():
    with pytest.raises(ValidationError):
        DensityOperator.from_matrix(np.diag([1.2, -0.2]).astype(complex))


def test_density_rejects_trace_above_one():
    with pytest.raises(ValidationError):
        DensityOperator.from_matrix(np.diag([0.9, 0.3]).astype(complex))


def test_density_subnormalized_allowed():
    rho = DensityOperator.from_matrix(np.diag([0.5, 0.2]).astype(complex))
    assert not rho.normalized


def test_compare_projector_diagonal():
    a = np.diag([3.0, 1.0, -2.0])
    b = np.diag([1.0, 1.0, 0.0])
    p = compare_projector(a, b, ">=")
    assert np.allclose(p.mat, np.diag([1.0, 1.0, 0.0]))
    p_strict = compare_projector(a, b, ">")
    assert np.allclose(p_strict.mat, np.diag([1.0, 0.0, 0.0]))


def test_support_projector_rank():
    rho = np.diag([0.7, 0.3, 0.0])
    assert support_projector(rho).rank == 2


def test_eig_decompose_descending_and_reconstructs():
    mat = random_density(5, 5, 7).mat
    spec = eig_decompose(mat)
    assert np.all(np.diff(spec.eigenvalues) <= 1e-12)
    assert np.allclose(spec.reconstruct(), mat, atol=1e-12)


def test_trace_distance_diagonal():
    assert trace_distance(np.diag([0.9, 0.1]), np.diag([0.5, 0.5])) == pytest.approx(0.8)


def test_fidelity_pure_overlap():
    r1 = DensityOperator.from_matrix(np.diag([1.0, 0.0]).astype(complex))
    r2 = DensityOperator.from_matrix(np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex))
    assert fidelity(r1, r2) == pytest.approx(np.sqrt(0.5), abs=1e-10)


def test_partial_trace_product():
    rho = random_density(2, 2, 1)
    sigma = random_density(3, 3, 2)
    joint = tensor(rho.mat, sigma.mat)
    reduced = partial_trace(joint.mat, (2, 3), "A")
    assert np.allclose(reduced.mat, rho.mat, atol=1e-12)


def test_partial_trace_bell_marginal():
    reduced = partial_trace(bell().mat, (2, 2), "A")
    assert np.allclose(reduced.mat, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_preserves_trace():
    rho = random_density(6, 6, 3).mat
    assert np.trace(partial_trace(rho, (2, 3), "B").mat).real == pytest.approx(1.0)


def test_identity_channel_fixed_point():
    chan = QuantumChannel(kraus=(np.eye(2),), in_dim=2, out_dim=2)
    rho = random_density(2, 2, 4)
    assert np.allclose(apply_channel(chan, rho).mat, rho.mat)


def test_depolarizing_channel_fixed_point():
    d = 2
    kraus = tuple(np.outer(np.eye(d)[i], np.eye(d)[j]) / np.sqrt(d)
                  for i in range(d) for j in range(d))
    chan = QuantumChannel(kraus=kraus, in_dim=d, out_dim=d)
    out = apply_channel(chan, random_density(d, d, 5))
    assert np.allclose(out.mat, np.eye(d) / d, atol=1e-12)


def test_random_channel_trace_preserving():
    chan = random_channel(3, 3, 2, 6)
    rho = random_density(3, 3, 7)
    assert np.trace(apply_channel(chan, rho).mat).real == pytest.approx(1.0, abs=1e-10)


def test_random_density_rank_one_is_pure():
    rho = random_density(2, 1, 8)
    w = np.linalg.eigvalsh(rho.mat)
    assert w[-1] == pytest.approx(1.0, abs=1e-10)
    assert abs(w[0]) < 1e-10


def test_random_unitary_is_unitary():
    u = random_unitary(4, 9)
    assert np.abs(u.conj().T @ u - np.eye(4)).max() < 1e-10


def test_random_effect_bounded():
    p = random_effect(3, 10).mat
    w = np.linalg.eigvalsh(p)
    assert w[0] >= -1e-12 and w[-1] <= 1.0 + 1e-12


def test_random_instrument_resolves_identity():
    inst = random_instrument(3, 2, 11)
    acc = sum(v.conj().T @ v for v in inst.elements)
    assert np.abs(acc - np.eye(3)).max() < 1e-10


def test_random_pure_bipartite_is_pure():
    rho = random_pure_bipartite(2, 3, 12)
    assert np.linalg.eigvalsh(rho.mat)[-1] == pytest.approx(1.0, abs=1e-10)


def test_seeded_determinism():
    assert np.array_equal(random_density(4, 4, 13).mat, random_density(4, 4, 13).mat)
    assert np.array_equal(random_unitary(3, 13), random_unitary(3, 13))


def test_partial_trace_dim_mismatch():
    with pytest.raises(ValidationError):
        partial_trace(random_density(4, 4, 14).mat, (3, 2), "A")
