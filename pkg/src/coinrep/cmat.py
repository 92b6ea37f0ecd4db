"""Small fixed-size complex matrix kernel.

Matrices are plain ``numpy`` complex arrays of shape (2, 2), (4, 4) or
(16, 16), stored row-major. Elementwise helpers accept a leading batch
axis so the probability-level code can work on many states at once.
"""
from __future__ import annotations

import numpy as np

from .errors import NotHermitian

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_SIZES = (2, 4, 16)


def as_cmat(m, n: int | None = None) -> np.ndarray:
    """Return ``m`` as a complex square matrix, checking size and finiteness."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in _SIZES:
        raise ValueError(f"expected a 2x2, 4x4 or 16x16 matrix, got shape {a.shape}")
    if n is not None and a.shape[0] != n:
        raise ValueError(f"expected a {n}x{n} matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def adjoint(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def trace(m: np.ndarray):
    return np.trace(m, axis1=-2, axis2=-1)


def det(m: np.ndarray):
    m = np.asarray(m, dtype=complex)
    if m.shape[-1] == 2:
        return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    return np.linalg.det(m)


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices; block (i, j) is ``a[i, j] * b``."""
    return np.kron(as_cmat(a, 2), as_cmat(b, 2))


def kron4(a, b) -> np.ndarray:
    return np.kron(as_cmat(a, 4), as_cmat(b, 4))


def hermiticity_error(m) -> float:
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - adjoint(m))))


def require_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    a = as_cmat(m)
    err = hermiticity_error(a)
    if err > tol:
        raise NotHermitian(f"max |m - m^dagger| = {err:.3e} exceeds {tol:g}")
    return a


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its first non-negligible entry is real-positive."""
    v = np.array(v, dtype=complex)
    for z in v:
        if abs(z) > 1e-12:
            return v * (abs(z) / z)
    return v


def _eig2(a: np.ndarray):
    """Closed form via the rotation angle ``tan(2 theta) = 2|b| / (d11 - d22)``.

    Eigenvectors are ``(cos theta, e^{i phi} sin theta)`` for the larger
    eigenvalue and ``(-e^{-i phi} sin theta, cos theta)`` for the smaller, with
    ``e^{i phi} = conj(b)/|b|``; they are orthonormal by construction.
    """
    d11, d22 = a[0, 0].real, a[1, 1].real
    b = a[0, 1]
    half_gap = 0.5 * (d11 - d22)
    mod_b = abs(b)
    mean = 0.5 * (d11 + d22)
    r = np.hypot(half_gap, mod_b)
    vals = np.array([mean - r, mean + r])
    if r == 0.0:
        return vals, np.eye(2, dtype=complex)
    theta = 0.5 * np.arctan2(mod_b, half_gap)
    phase = np.conj(b) / mod_b if mod_b > 0 else 1.0
    c, s = np.cos(theta), np.sin(theta)
    vecs = np.array([
        [-np.conj(phase) * s, c],
        [c, phase * s],
    ], dtype=complex)
    return vals, vecs


def _jacobi(a: np.ndarray, max_sweeps: int = 100):
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.sqrt(np.sum(np.abs(a[off_mask]) ** 2)) < JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r < 1e-300:
                    continue
                phase = a[p, q] / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                g = np.array([[c, s * phase], [-s * np.conj(phase), c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = adjoint(g) @ a[idx, :]
                v[:, idx] = v[:, idx] @ g
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.diag(a).real.copy(), v


def eig_hermitian(m):
    """Eigen-decomposition of a Hermitian 2x2, 4x4 or 16x16 matrix.

    Returns ``(values, vectors)`` with eigenvalues ascending and the
    eigenvectors as orthonormal columns. 2x2 matrices use the closed form;
    larger ones use cyclic complex Jacobi rotations. Each eigenvector's
    first entry with modulus above 1e-12 is made real-positive.
    """
    a = require_hermitian(m)
    if a.shape[0] == 2:
        vals, vecs = _eig2(a)
    else:
        vals, vecs = _jacobi(a)
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    for k in range(vecs.shape[1]):
        vecs[:, k] = fix_phase(vecs[:, k])
    return vals, vecs


def pauli_coefficients(h) -> tuple[float, float, float, float]:
    """Coefficients ``(c0, cx, cy, cz)`` with ``h = c0*1 + cx*sx + cy*sy + cz*sz``."""
    h = np.asarray(h, dtype=complex)
    c0 = 0.5 * (h[0, 0] + h[1, 1]).real
    cz = 0.5 * (h[0, 0] - h[1, 1]).real
    return float(c0), float(h[1, 0].real), float(h[1, 0].imag), float(cz)


def expm_herm_generator(h, t: float) -> np.ndarray:
    """Return ``exp(-i t h)`` for a Hermitian 2x2 ``h`` via its Pauli form."""
    h = require_hermitian(as_cmat(h, 2))
    alpha, nx, ny, nz = pauli_coefficients(h)
    omega = np.sqrt(nx * nx + ny * ny + nz * nz)
    # sin(omega t) / omega, finite at omega = 0
    sin_over = t * np.sinc(omega * t / np.pi)
    n_sigma = nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z
    return np.exp(-1j * alpha * t) * (np.cos(omega * t) * I2 - 1j * sin_over * n_sigma)
