"""Complex 2x2 matrices and 4x4 rank-1 densities as tables of coin probabilities.

A 2x2 matrix ``A`` is vectorized row-major, ``|A> = (A11, A12, A21, A22)``.
Two 16-component vectors come out of it: ``aprime``, the flattened ``A (x) A*``,
and ``atilde``, the flattened ``|A><A|``. They differ by a fixed permutation.

A 4x4 Hermitian unit-trace matrix is described by fifteen probabilities:

* diagonal coins ``p3^(22), p3^(33), p3^(44)`` with
  ``rho_jj = 1 - p3^(jj)`` for j = 2, 3, 4 and ``rho_11 = p3^(22) + p3^(33) + p3^(44) - 2``;
* a pair ``(p1^(jk), p2^(jk))`` for each of the six index pairs j < k, with
  ``rho_kj = p1^(jk) - 1/2 + i(p2^(jk) - 1/2)`` below the diagonal and the
  conjugate above it. This is the same convention as the 2x2 qubit matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import cmat
from .errors import InconsistentTable, NotNormalized, OutOfRange, TraceViolation, ZeroMatrix

PAIRS = tuple(f"{j + 1}{k + 1}" for j, k in combinations(range(4), 2))
DIAG = ("22", "33", "44")

# 1-based positions exchanged between atilde and aprime
T_SWAPS = ((3, 5), (4, 6), (11, 13), (12, 14))


def vectorize(a) -> np.ndarray:
    return cmat.as_cmat(a, 2).reshape(4).copy()


def devectorize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape != (4,):
        raise ValueError(f"expected a 4-vector, got shape {v.shape}")
    return v.reshape(2, 2).copy()


@dataclass(frozen=True)
class Vec16Pair:
    aprime: np.ndarray
    atilde: np.ndarray


def build_vec16(a) -> Vec16Pair:
    """The two 16-vectors of ``a``, written out component by component."""
    a = cmat.as_cmat(a, 2)
    a11, a12, a21, a22 = a[0, 0], a[0, 1], a[1, 0], a[1, 1]
    c = np.conj
    aprime = np.array([
        a11 * c(a11), a11 * c(a12), a12 * c(a11), a12 * c(a12),
        a11 * c(a21), a11 * c(a22), a12 * c(a21), a12 * c(a22),
        a21 * c(a11), a21 * c(a12), a22 * c(a11), a22 * c(a12),
        a21 * c(a21), a21 * c(a22), a22 * c(a21), a22 * c(a22),
    ])
    atilde = np.array([
        a11 * c(a11), a11 * c(a12), a11 * c(a21), a11 * c(a22),
        a12 * c(a11), a12 * c(a12), a12 * c(a21), a12 * c(a22),
        a21 * c(a11), a21 * c(a12), a21 * c(a21), a21 * c(a22),
        a22 * c(a11), a22 * c(a12), a22 * c(a21), a22 * c(a22),
    ])
    return Vec16Pair(aprime, atilde)


def permutation_T() -> np.ndarray:
    """16x16 permutation with ``aprime = T @ atilde``; real, orthogonal and involutive."""
    perm = np.arange(16)
    for i, j in T_SWAPS:
        perm[i - 1], perm[j - 1] = j - 1, i - 1
    t = np.zeros((16, 16), dtype=complex)
    t[np.arange(16), perm] = 1.0
    return t


def rank1_density(a) -> np.ndarray:
    """``|A><A| / <A|A>``, a 4x4 pure-state density matrix."""
    v = vectorize(a)
    norm2 = np.vdot(v, v).real
    if norm2 == 0.0:
        raise ZeroMatrix("cannot build a density matrix from the zero matrix")
    return np.outer(v, np.conj(v)) / norm2


@dataclass(frozen=True)
class ProbTable15:
    diag: dict
    pairs: dict

    def __post_init__(self):
        if set(self.diag) != set(DIAG) or set(self.pairs) != set(PAIRS):
            raise ValueError(f"table needs diag keys {DIAG} and pair keys {PAIRS}")
        diag = {k: float(self.diag[k]) for k in DIAG}
        pairs = {k: (float(self.pairs[k][0]), float(self.pairs[k][1])) for k in PAIRS}
        values = list(diag.values()) + [x for pr in pairs.values() for x in pr]
        if not all(np.isfinite(values)) or min(values) < 0.0 or max(values) > 1.0:
            raise OutOfRange("all fifteen table entries must be probabilities in [0, 1]")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "pairs", pairs)

    def values(self) -> np.ndarray:
        """The fifteen probabilities in a fixed order (diagonal first, then pairs)."""
        return np.array(
            [self.diag[k] for k in DIAG] + [x for k in PAIRS for x in self.pairs[k]]
        )

    def to_dict(self) -> dict:
        return {"diag": dict(self.diag), "pairs": {k: list(v) for k, v in self.pairs.items()}}

    @classmethod
    def from_dict(cls, d: dict) -> "ProbTable15":
        return cls(diag=d["diag"], pairs={k: tuple(v) for k, v in d["pairs"].items()})


def density4_from_probs(table: ProbTable15) -> np.ndarray:
    total = sum(table.diag.values())
    if total < 2.0:
        raise TraceViolation(f"diagonal probabilities sum to {total} < 2, so rho_11 < 0")
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = total - 2.0
    for j, key in enumerate(DIAG, start=1):
        rho[j, j] = 1.0 - table.diag[key]
    for key in PAIRS:
        j, k = int(key[0]) - 1, int(key[1]) - 1
        q1, q2 = table.pairs[key]
        rho[k, j] = (q1 - 0.5) + 1j * (q2 - 0.5)
        rho[j, k] = np.conj(rho[k, j])
    return rho


def probs_from_density4(rho) -> ProbTable15:
    """Inverse of :func:`density4_from_probs` for a Hermitian unit-trace 4x4 matrix."""
    rho = cmat.require_hermitian(cmat.as_cmat(rho, 4))
    if abs(cmat.trace(rho) - 1.0) > 1e-12:
        raise TraceViolation(f"trace is {cmat.trace(rho)}, expected 1")
    diag = {key: 1.0 - rho[j, j].real for j, key in enumerate(DIAG, start=1)}
    pairs = {}
    for key in PAIRS:
        j, k = int(key[0]) - 1, int(key[1]) - 1
        pairs[key] = (rho[k, j].real + 0.5, rho[k, j].imag + 0.5)
    return ProbTable15(diag, pairs)


def probs_from_amplitude2(a) -> ProbTable15:
    """Read the products ``A_m A_n*`` of a normalized 2x2 matrix into the fifteen slots."""
    a = cmat.as_cmat(a, 2)
    norm = np.sum(np.abs(a) ** 2)
    if abs(norm - 1.0) > 1e-12:
        raise NotNormalized(f"Tr(A^dagger A) = {norm}, expected 1")
    v = vectorize(a)
    return probs_from_density4(np.outer(v, np.conj(v)))


def amplitude2_from_probs(table: ProbTable15) -> np.ndarray:
    """Rebuild ``A`` from its table, up to a global phase.

    Entries are read off their products with the largest entry, which keeps
    the division well conditioned; the global phase is then fixed so the
    first nonzero entry in row-major order is real-positive.
    """
    rho = density4_from_probs(table)
    diag = rho.diagonal().real
    pivot = int(np.argmax(diag))
    if diag[pivot] <= 0.0:
        raise InconsistentTable("table describes the zero matrix")
    v = cmat.fix_phase(rho[:, pivot] / np.sqrt(diag[pivot]))
    if np.max(np.abs(np.outer(v, np.conj(v)) - rho)) > 1e-10:
        raise InconsistentTable("products are not those of a single matrix (rank > 1)")
    return devectorize(v)


def density4_eigenvalues(table: ProbTable15) -> np.ndarray:
    """Spectrum of the table's 4x4 matrix, for a positivity check."""
    return cmat.eig_hermitian(density4_from_probs(table))[0]


def t_check(samples: int = 1000, seed: int = 0) -> float:
    """Max ``|aprime - T atilde|`` over random complex 2x2 matrices."""
    rng = np.random.default_rng(seed)
    t = permutation_T()
    worst = 0.0
    for _ in range(samples):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        pair = build_vec16(a)
        worst = max(worst, float(np.max(np.abs(pair.aprime - t @ pair.atilde))))
    return worst
