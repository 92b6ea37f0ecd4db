"""Qubit observables built from dichotomic coin variables.

Three coins carry the random variables ``(x, -x)``, ``(y, -y)`` and
``(z1, z2)``. Arranged as

    H = [[z1,      x - iy],
         [x + iy,  z2    ]]

they give an arbitrary Hermitian 2x2 observable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cmat, qubit
from .errors import OutOfRange


@dataclass(frozen=True)
class DichotomicObservable:
    x: float
    y: float
    z1: float
    z2: float

    def __post_init__(self):
        for name in ("x", "y", "z1", "z2"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))

    def coins(self) -> tuple["CoinRandomVariable", ...]:
        return (
            CoinRandomVariable(self.x, -self.x),
            CoinRandomVariable(self.y, -self.y),
            CoinRandomVariable(self.z1, self.z2),
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.z1, self.z2)


@dataclass(frozen=True)
class CoinRandomVariable:
    f_up: float
    f_down: float


SPIN_X = DichotomicObservable(0.5, 0.0, 0.0, 0.0)
SPIN_Y = DichotomicObservable(0.0, 0.5, 0.0, 0.0)
SPIN_Z = DichotomicObservable(0.0, 0.0, 0.5, -0.5)


def to_hermitian(obs: DichotomicObservable) -> np.ndarray:
    return np.array(
        [[obs.z1, obs.x - 1j * obs.y], [obs.x + 1j * obs.y, obs.z2]], dtype=complex
    )


def from_hermitian(h) -> DichotomicObservable:
    h = cmat.require_hermitian(cmat.as_cmat(h, 2))
    return DichotomicObservable(h[1, 0].real, h[1, 0].imag, h[0, 0].real, h[1, 1].real)


def pauli_decomposition(obs: DichotomicObservable) -> tuple[float, float, float, float]:
    """Coefficients of ``H`` on ``(1, sx, sy, sz)``."""
    return (
        0.5 * (obs.z1 + obs.z2),
        obs.x,
        obs.y,
        0.5 * (obs.z1 - obs.z2),
    )


def coin_moment(rv: CoinRandomVariable, prob_up: float, k: int) -> float:
    """``k``-th moment of a dichotomic variable on a coin with "up" probability ``prob_up``."""
    if not 0.0 <= prob_up <= 1.0:
        raise OutOfRange(f"prob_up must lie in [0, 1], got {prob_up}")
    if int(k) != k or k < 1:
        raise OutOfRange(f"moment order must be a positive integer, got {k}")
    return prob_up * rv.f_up ** k + (1.0 - prob_up) * rv.f_down ** k


def quantum_mean(p, obs: DichotomicObservable):
    """``<H> = x(2p1-1) + y(2p2-1) + p3(z1-z2) + z2``."""
    p = qubit.require_quantum(p)
    return (
        obs.x * (2 * p[..., 0] - 1)
        + obs.y * (2 * p[..., 1] - 1)
        + p[..., 2] * (obs.z1 - obs.z2)
        + obs.z2
    )


def quantum_moment(p, obs: DichotomicObservable, k: int) -> float:
    """``Tr(rho H**k)`` by repeated multiplication."""
    if int(k) != k or k < 1:
        raise OutOfRange(f"moment order must be a positive integer, got {k}")
    rho = qubit.to_density(qubit.require_quantum(p))
    h = to_hermitian(obs)
    hk = h
    for _ in range(int(k) - 1):
        hk = hk @ h
    return np.real(cmat.trace(rho @ hk))


def observable_eigenvalues(obs: DichotomicObservable) -> tuple[float, float]:
    """Roots of the characteristic polynomial, ``(z1+z2)/2 +- sqrt((z1-z2)**2/4 + x**2 + y**2)``."""
    mean = 0.5 * (obs.z1 + obs.z2)
    r = np.hypot(0.5 * (obs.z1 - obs.z2), np.hypot(obs.x, obs.y))
    return float(mean + r), float(mean - r)


def eigenvector(obs: DichotomicObservable, value: float) -> np.ndarray:
    """Normalized eigenvector of ``H`` for eigenvalue ``value``."""
    w = obs.x - 1j * obs.y
    # (x - iy, H_k - z1) and (H_k - z2, x + iy) both span the null space; keep the larger
    u = np.array([w, value - obs.z1])
    v = np.array([value - obs.z2, np.conj(w)])
    best = u if np.linalg.norm(u) >= np.linalg.norm(v) else v
    return cmat.fix_phase(best / np.linalg.norm(best))


@dataclass(frozen=True)
class Bistochastic:
    matrix: np.ndarray
    unitary: np.ndarray
    degenerate: bool


def bistochastic(obs: DichotomicObservable) -> Bistochastic:
    """Squared moduli of the unitary that diagonalizes ``H``.

    Column ``k`` of the unitary is the eigenvector for ``H_k`` (``H_1 >= H_2``).
    An observable proportional to the identity has no preferred eigenbasis; the
    identity is returned with ``degenerate=True``.
    """
    if obs.x ** 2 + obs.y ** 2 + (obs.z1 - obs.z2) ** 2 <= 1e-20:
        return Bistochastic(np.eye(2), np.eye(2, dtype=complex), True)
    h1, h2 = observable_eigenvalues(obs)
    u = np.column_stack([eigenvector(obs, h1), eigenvector(obs, h2)])
    return Bistochastic(np.abs(u) ** 2, u, False)
