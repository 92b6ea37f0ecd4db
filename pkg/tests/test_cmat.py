import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coinrep import cmat
from coinrep.errors import NotHermitian

from conftest import random_hermitian


def series_expm(h, t, terms=80):
    """Truncated Taylor series of exp(-i t h)."""
    out = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(1, terms):
        term = term @ (-1j * t * h) / k
        out = out + term
    return out


def test_trace_of_identity():
    assert cmat.trace(cmat.I2) == 2 + 0j


def test_adjoint_is_involution(rng):
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.array_equal(cmat.adjoint(cmat.adjoint(m)), m)


def test_det_of_diagonal():
    assert cmat.det(np.diag([2.0 + 1j, 3.0])) == (2.0 + 1j) * 3.0


def test_det_batched_matches_numpy(rng):
    m = rng.normal(size=(50, 2, 2)) + 1j * rng.normal(size=(50, 2, 2))
    np.testing.assert_allclose(cmat.det(m), np.linalg.det(m), atol=1e-13)


def test_kron_identity():
    assert np.array_equal(cmat.kron(cmat.I2, cmat.I2), np.eye(4))


def test_kron_sigma_x_swaps_blocks():
    k = cmat.kron(cmat.SIGMA_X, cmat.I2)
    basis = np.eye(4)
    assert np.array_equal(k @ basis[:, 0], basis[:, 2])
    assert np.array_equal(k @ basis[:, 1], basis[:, 3])


def test_kron_mixed_product(rng):
    a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
    np.testing.assert_allclose(
        cmat.kron(a, b) @ cmat.kron(c, d), cmat.kron(a @ c, b @ d), atol=1e-13
    )


def test_kron4_shape():
    assert cmat.kron4(np.eye(4), np.eye(4)).shape == (16, 16)


def test_as_cmat_rejects_bad_shapes():
    with pytest.raises(ValueError):
        cmat.as_cmat(np.eye(3))
    with pytest.raises(ValueError):
        cmat.as_cmat(np.eye(2), 4)
    with pytest.raises(ValueError):
        cmat.as_cmat([[np.nan, 0], [0, 1]])


def test_require_hermitian():
    with pytest.raises(NotHermitian):
        cmat.require_hermitian([[0, 1], [0, 0]])


def test_eig_sigma_z():
    vals, vecs = cmat.eig_hermitian(cmat.SIGMA_Z)
    assert np.array_equal(vals, [-1.0, 1.0])
    np.testing.assert_allclose(vecs[:, 0], [0, 1])
    np.testing.assert_allclose(vecs[:, 1], [1, 0])


def test_eig_sigma_x():
    vals, vecs = cmat.eig_hermitian(cmat.SIGMA_X)
    np.testing.assert_allclose(vals, [-1.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(vecs[:, 0], np.array([1, -1]) / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(vecs[:, 1], np.array([1, 1]) / np.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("n", [2, 4, 16])
def test_eig_reconstruction_and_orthonormality(rng, n):
    for _ in range(20):
        h = random_hermitian(rng, n)
        vals, vecs = cmat.eig_hermitian(h)
        assert np.all(np.diff(vals) >= 0)
        np.testing.assert_allclose((vecs * vals) @ vecs.conj().T, h, atol=1e-10)
        np.testing.assert_allclose(vecs.conj().T @ vecs, np.eye(n), atol=1e-10)
        np.testing.assert_allclose(h @ vecs, vecs * vals, atol=1e-10)
        np.testing.assert_allclose(vals, np.linalg.eigvalsh(h), atol=1e-10)


def test_eig_degenerate_4x4():
    vals, vecs = cmat.eig_hermitian(np.eye(4) * 0.25)
    np.testing.assert_allclose(vals, 0.25)
    np.testing.assert_allclose(vecs, np.eye(4))


def test_expm_zero_generator():
    assert np.array_equal(cmat.expm_herm_generator(np.zeros((2, 2)), 3.0), cmat.I2)


def test_expm_spinor_sign():
    u = cmat.expm_herm_generator(cmat.SIGMA_Z / 2, 2 * np.pi)
    np.testing.assert_allclose(u, -cmat.I2, atol=1e-15)
    np.testing.assert_allclose(u, series_expm(cmat.SIGMA_Z / 2, 2 * np.pi), atol=1e-12)


def test_expm_matches_series_and_is_unitary(rng):
    for _ in range(100):
        h = random_hermitian(rng, 2)
        t = rng.uniform(-3, 3)
        u = cmat.expm_herm_generator(h, t)
        np.testing.assert_allclose(u, series_expm(h, t), atol=1e-10)
        np.testing.assert_allclose(u @ u.conj().T, cmat.I2, atol=1e-12)


def test_pauli_coefficients_reassemble(rng):
    h = random_hermitian(rng, 2)
    c0, cx, cy, cz = cmat.pauli_coefficients(h)
    rebuilt = c0 * cmat.I2 + cx * cmat.SIGMA_X + cy * cmat.SIGMA_Y + cz * cmat.SIGMA_Z
    np.testing.assert_allclose(rebuilt, h, atol=1e-15)


def test_fix_phase_makes_first_entry_real_positive():
    v = cmat.fix_phase(np.array([1j, 1.0]) / np.sqrt(2))
    assert v[0].imag == 0 and v[0].real > 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=4, max_size=4))
def test_eig2_property(c):
    h = np.array([[c[0], c[1] - 1j * c[2]], [c[1] + 1j * c[2], c[3]]])
    vals, vecs = cmat.eig_hermitian(h)
    scale = max(1.0, np.max(np.abs(h)))
    np.testing.assert_allclose(h @ vecs, vecs * vals, atol=1e-10 * scale)
    np.testing.assert_allclose(vecs.conj().T @ vecs, np.eye(2), atol=1e-12)
