"""Qubit states as three coin probabilities.

A state is a triple ``p = (p1, p2, p3)`` where ``p_k`` is the "up"
probability of coin ``k``. Functions take array-likes whose trailing axis
has length 3, so a batch of states is an ``(n, 3)`` array.

The density matrix is

    rho = [[p3,                    (p1-1/2) - i(p2-1/2)],
           [(p1-1/2) + i(p2-1/2),  1 - p3              ]]

and the triple is quantum-valid when rho has no negative eigenvalue.

Round trips through ``p - 1/2`` are exact for probabilities on the 2**-53
grid (every draw from ``numpy.random.Generator.random`` lies on it); for
arbitrary doubles below 1/4 they hold to within 2**-54.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from . import cmat
from .errors import BadParameter, InvalidDensity, NotPure, NotQuantum, OutOfRange

QUANTUM_TOL = 1e-12
PURITY_TOL = 1e-10
DENSITY_TOL = 1e-12

CENTER = np.array([0.5, 0.5, 0.5])


def as_triple(p) -> np.ndarray:
    """Validate and return ``p`` as a float array with trailing axis of length 3."""
    a = np.asarray(p, dtype=float)
    if a.ndim == 0 or a.shape[-1] != 3:
        raise ValueError(f"probability triple needs a trailing axis of length 3, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise OutOfRange("probabilities must be finite")
    if np.any(a < 0.0) or np.any(a > 1.0):
        raise OutOfRange("probabilities must lie in [0, 1]")
    return a


def to_density(p) -> np.ndarray:
    p = as_triple(p)
    off = (p[..., 0] - 0.5) + 1j * (p[..., 1] - 0.5)
    rho = np.empty(p.shape[:-1] + (2, 2), dtype=complex)
    rho[..., 0, 0] = p[..., 2]
    rho[..., 1, 1] = 1.0 - p[..., 2]
    rho[..., 0, 1] = np.conj(off)
    rho[..., 1, 0] = off
    return rho


def density_violation(rho) -> np.ndarray:
    """Largest violation of Hermiticity, unit trace and positivity, per matrix."""
    rho = np.asarray(rho, dtype=complex)
    herm = np.max(np.abs(rho - cmat.adjoint(rho)), axis=(-2, -1))
    tr = np.abs(cmat.trace(rho) - 1.0)
    d11, d22 = rho[..., 0, 0].real, rho[..., 1, 1].real
    off = 0.5 * (rho[..., 1, 0] + np.conj(rho[..., 0, 1]))
    lam_min = 0.5 * (d11 + d22) - np.hypot(0.5 * (d11 - d22), np.abs(off))
    return np.maximum.reduce([herm, tr, np.maximum(-lam_min, 0.0)])


def from_density(rho) -> np.ndarray:
    """Read the coin probabilities back off a 2x2 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim < 2 or rho.shape[-2:] != (2, 2):
        raise ValueError(f"expected 2x2 density matrices, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidDensity("density matrix has non-finite entries")
    bad = density_violation(rho)
    if np.any(bad > DENSITY_TOL):
        raise InvalidDensity(
            f"not a density matrix (worst violation {np.max(bad):.3e})"
        )
    p = np.empty(rho.shape[:-2] + (3,))
    p[..., 0] = rho[..., 0, 1].real + 0.5
    p[..., 1] = -rho[..., 0, 1].imag + 0.5
    p[..., 2] = rho[..., 0, 0].real
    return p


def quantum_margin(p) -> np.ndarray:
    """``1/4 - sum (p_k - 1/2)**2``; equals det(rho), nonnegative for valid states."""
    p = as_triple(p)
    return 0.25 - np.sum((p - 0.5) ** 2, axis=-1)


def is_quantum(p):
    """Return ``(valid, margin)`` where ``valid`` means ``margin >= -1e-12``."""
    margin = quantum_margin(p)
    return margin >= -QUANTUM_TOL, margin


def is_pure(p):
    return np.abs(quantum_margin(p)) <= PURITY_TOL


def require_quantum(p) -> np.ndarray:
    p = as_triple(p)
    ok, margin = is_quantum(p)
    if not np.all(ok):
        raise NotQuantum(f"triple lies outside the Bloch ball (margin {np.min(margin):.3e})")
    return p


def require_pure(p) -> np.ndarray:
    p = as_triple(p)
    if not np.all(is_pure(p)):
        raise NotPure(
            f"triple is not on the purity sphere (residual {np.max(np.abs(quantum_margin(p))):.3e})"
        )
    return p


def pure_state_vector(p) -> np.ndarray:
    """State vector ``(sqrt(p3), (p1-1/2 + i(p2-1/2))/sqrt(p3))`` of a pure triple.

    For ``p3 <= 1e-12`` the limit state ``(0, 1)`` is returned.
    """
    p = require_pure(p)
    if p.shape != (3,):
        raise ValueError("pure_state_vector takes a single triple")
    p1, p2, p3 = p
    if p3 <= 1e-12:
        return np.array([0.0, 1.0], dtype=complex)
    s = np.sqrt(p3)
    return np.array([s, ((p1 - 0.5) + 1j * (p2 - 0.5)) / s])


def bloch(p) -> np.ndarray:
    """Spin-projection means ``(Tr rho sx, Tr rho sy, Tr rho sz) = 2p - 1``."""
    return 2.0 * as_triple(p) - 1.0


def bloch_inverse(b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    if b.ndim == 0 or b.shape[-1] != 3:
        raise ValueError(f"Bloch vector needs a trailing axis of length 3, got {b.shape}")
    if np.any(np.abs(b) > 1.0) or not np.all(np.isfinite(b)):
        raise OutOfRange("Bloch components must lie in [-1, 1]")
    return (b + 1.0) / 2.0


# Projectors onto the "up" outcome of each coin: Tr(rho P_k) = p_k.
COIN_PROJECTORS = (
    0.5 * np.array([[1, 1], [1, 1]], dtype=complex),
    0.5 * np.array([[1, -1j], [1j, 1]], dtype=complex),
    np.array([[1, 0], [0, 0]], dtype=complex),
)


def measured_probabilities(rho) -> np.ndarray:
    """Coin probabilities as expectation values of the three "up" projectors."""
    rho = np.asarray(rho, dtype=complex)
    return np.stack(
        [np.real(cmat.trace(rho @ proj)) for proj in COIN_PROJECTORS], axis=-1
    )


def eigenvalues(p) -> np.ndarray:
    """Closed-form ``(lambda1, lambda2)``, ``lambda1 >= lambda2``, along the last axis."""
    p = as_triple(p)
    det = p[..., 2] * (1.0 - p[..., 2]) - (p[..., 0] - 0.5) ** 2 - (p[..., 1] - 0.5) ** 2
    root = np.sqrt(np.maximum(0.25 - det, 0.0))
    return np.stack([0.5 + root, 0.5 - root], axis=-1)


@dataclass(frozen=True)
class SpectralData:
    lambda1: float
    lambda2: float
    e1: np.ndarray
    e2: np.ndarray


def spectral(p) -> SpectralData:
    """Eigenvalues (descending) and eigenvectors of the density matrix of ``p``.

    Eigenvectors have the form ``(1, (lambda - p3)/((p1-1/2) - i(p2-1/2)))``,
    normalized and phase-fixed like :func:`coinrep.cmat.eig_hermitian`.
    ``lambda - p3`` is evaluated in a cancellation-free form.
    """
    p = require_quantum(p)
    if p.shape != (3,):
        raise ValueError("spectral takes a single triple")
    p1, p2, p3 = p
    lam1, lam2 = eigenvalues(p)
    rho12 = (p1 - 0.5) - 1j * (p2 - 0.5)
    mod2 = abs(rho12) ** 2
    if mod2 == 0.0:
        up = np.array([1.0, 0.0], dtype=complex)
        down = np.array([0.0, 1.0], dtype=complex)
        e1, e2 = (up, down) if p3 >= 0.5 else (down, up)
        return SpectralData(float(lam1), float(lam2), e1, e2)

    h = p3 - 0.5
    r = np.sqrt(h * h + mod2)
    if h > 0:
        shifts = (mod2 / (r + h), -r - h)
    else:
        shifts = (r - h, -mod2 / (r - h))
    vecs = []
    for d in shifts:
        ratio = d * np.conj(rho12) / mod2
        if abs(ratio) <= 1.0:
            v = np.array([1.0, ratio])
        else:
            # same direction, rescaled to avoid overflow of the second entry
            v = np.array([1.0 / ratio, 1.0])
        vecs.append(cmat.fix_phase(v / np.linalg.norm(v)))
    return SpectralData(float(lam1), float(lam2), vecs[0], vecs[1])


def _clipped_eigenvalues(p) -> np.ndarray:
    return np.clip(eigenvalues(require_quantum(p)), 0.0, 1.0)


def von_neumann_entropy(p):
    lam = _clipped_eigenvalues(p)
    return -np.sum(xlogy(lam, lam), axis=-1)


def tsallis_entropy(p, q: float):
    if not np.isfinite(q) or q <= 0 or q == 1:
        raise BadParameter("Tsallis index q must be positive and different from 1")
    lam = _clipped_eigenvalues(p)
    return (np.sum(lam ** q, axis=-1) - 1.0) / (1.0 - q)


def shannon_entropy(prob):
    prob = np.asarray(prob, dtype=float)
    if np.any(prob < 0) or np.any(prob > 1) or not np.all(np.isfinite(prob)):
        raise OutOfRange("probability must lie in [0, 1]")
    return -xlogy(prob, prob) - xlogy(1.0 - prob, 1.0 - prob)
