"""Superposition of pure qubit states written as an addition rule for probabilities.

Two pure states ``p`` and ``P`` are combined under the control of a third
pure "key" triple ``Pi``. The probability rule (:func:`addition_rule`) is the
primary path. The operator form (:func:`superpose_oracle`) is an independent
check,

    rho = l1 rho1 + l2 rho2
          + sqrt(l1 l2) (rho1 rho0 rho2 + rho2 rho0 rho1) / sqrt(Tr(rho1 rho0 rho2 rho0)),

and :func:`resolve_weight_convention` measures which choice of ``(l1, l2)``
and key matrix ``rho0`` makes the two agree.

Which state plays ``rho0`` is not fixed in advance. The two readings tried
are ``rho0 = rho(Pi)`` itself ("direct"), and ``Pi`` re-expressed in the frame
spanned by the two input state vectors ("frame"). In the frame reading the
vectors use the ``(sqrt(p3), ...)`` gauge of :func:`coinrep.qubit.pure_state_vector`.
"""
from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from . import cmat, qubit
from .errors import (
    BadParameter,
    DegenerateDenominator,
    NoConsistentMapping,
    NotPure,
    VanishingNormalizer,
    ZeroOverlapDenominator,
)

logger = logging.getLogger(__name__)

P3_TOL = 1e-10
NORMALIZER_TOL = 1e-10
AGREEMENT_TOL = 1e-8


def normalizer(p, P, Pi):
    """The normalizing factor T of the addition rule (1 when the inputs are orthogonal)."""
    p, P, Pi = (np.asarray(a, dtype=float) for a in (p, P, Pi))
    a, b, c = p - 0.5, P - 0.5, Pi - 0.5
    s = np.sqrt(p[..., 2] * P[..., 2])
    return 1.0 + (2.0 / s) * (
        c[..., 0] * (a[..., 0] * b[..., 0] + b[..., 1] * a[..., 1] + p[..., 2] * P[..., 2])
        + c[..., 1] * (a[..., 1] * b[..., 0] - a[..., 0] * b[..., 1])
    )


def addition_rule(p, P, Pi):
    """Evaluate the probability addition rule term by term, without validation.

    Returns ``(result, T)``. Requires ``p3 > 0`` and ``P3 > 0``.
    """
    p, P, Pi = (np.asarray(a, dtype=float) for a in (p, P, Pi))
    a, b, c = p - 0.5, P - 0.5, Pi - 0.5
    p3, P3, Pi3 = p[..., 2], P[..., 2], Pi[..., 2]
    t = normalizer(p, P, Pi)
    r21 = np.sqrt(P3 / p3)
    r12 = np.sqrt(p3 / P3)

    out3 = (Pi3 * p3 + (1.0 - Pi3) * P3 + 2.0 * np.sqrt(p3 * P3) * c[..., 0]) / t
    out1 = (
        Pi3 * a[..., 0]
        + b[..., 0] * (1.0 - Pi3)
        + (c[..., 0] * a[..., 0] + c[..., 1] * a[..., 1]) * r21
        + (c[..., 0] * b[..., 0] - c[..., 1] * b[..., 1]) * r12
    ) / t
    out2 = (
        (a[..., 1] * Pi3 + b[..., 1] * (1.0 - Pi3))
        + r21 * (c[..., 0] * a[..., 1] - c[..., 1] * a[..., 0])
        + r12 * (c[..., 1] * b[..., 0] + c[..., 0] * b[..., 1])
    ) / t
    return np.stack([out1 + 0.5, out2 + 0.5, out3], axis=-1), t


def superpose_probabilities(p, P, Pi, with_normalizer: bool = False):
    """Superpose pure triples ``p`` and ``P`` with key ``Pi``.

    Raises ``NotPure`` for a mixed input, ``DegenerateDenominator`` when
    ``p3`` or ``P3`` is within 1e-10 of zero, and ``VanishingNormalizer``
    when ``|T| <= 1e-10``.
    """
    p, P, Pi = (qubit.as_triple(a) for a in (p, P, Pi))
    for name, tri in (("p", p), ("P", P), ("Pi", Pi)):
        if not np.all(qubit.is_pure(tri)):
            raise NotPure(f"input {name} is not a pure state")
    if np.any(p[..., 2] <= P3_TOL) or np.any(P[..., 2] <= P3_TOL):
        raise DegenerateDenominator("p3 and P3 must exceed 1e-10")
    t = normalizer(p, P, Pi)
    if np.any(np.abs(t) <= NORMALIZER_TOL):
        raise VanishingNormalizer(f"|T| = {np.min(np.abs(t)):.3e} (destructive interference)")
    out, t = addition_rule(p, P, Pi)
    # rounding can push a probability a few ulps outside [0, 1]
    out = np.clip(out, 0.0, 1.0)
    return (out, t) if with_normalizer else out


def _oracle_raw(rho1, rho2, rho0, lambda1, lambda2, strict=True):
    l1 = np.asarray(lambda1, dtype=float)[..., None, None]
    l2 = np.asarray(lambda2, dtype=float)[..., None, None]
    mixing = l1 * l2
    overlap = np.real(cmat.trace(rho1 @ rho0 @ rho2 @ rho0))[..., None, None]
    # a zero weight drops the interference term, whatever the overlap
    active = mixing > 0
    undefined = active & (overlap <= 1e-20)
    if strict and np.any(undefined):
        raise ZeroOverlapDenominator(f"Tr(rho1 rho0 rho2 rho0) = {np.min(overlap):.3e}")
    safe = np.where(active & ~undefined, overlap, 1.0)
    cross = (rho1 @ rho0 @ rho2 + rho2 @ rho0 @ rho1) / np.sqrt(safe)
    raw = l1 * rho1 + l2 * rho2 + np.where(active, np.sqrt(mixing) * cross, 0.0)
    raw = np.where(undefined, np.nan, raw)
    return raw, np.real(cmat.trace(raw))


def superpose_oracle(rho1, rho2, rho0, lambda1, lambda2) -> np.ndarray:
    """Operator-form superposition of pure density matrices.

    Accepts single matrices or stacks. The raw result is divided by its trace
    when that deviates from 1 by more than 1e-12; the deviation is logged.
    """
    mats = [np.asarray(r, dtype=complex) for r in (rho1, rho2, rho0)]
    for name, r in zip(("rho1", "rho2", "rho0"), mats):
        purity = np.real(cmat.trace(r @ r))
        if np.any(np.abs(purity - 1.0) > qubit.PURITY_TOL):
            raise NotPure(f"{name} is not a pure state (Tr rho^2 = {np.min(purity):.12f})")
    l1 = np.asarray(lambda1, dtype=float)
    l2 = np.asarray(lambda2, dtype=float)
    if np.any(l1 < 0) or np.any(l2 < 0) or np.any(l1 > 1) or np.any(l2 > 1):
        raise BadParameter("weights must lie in [0, 1]")
    if np.any(np.abs(l1 + l2 - 1.0) > 1e-12):
        raise BadParameter("weights must sum to 1")
    raw, tr = _oracle_raw(*mats, l1, l2)
    dev = np.abs(tr - 1.0)
    if np.any(dev > 1e-12):
        logger.info("operator superposition: raw trace off by up to %.3e, renormalized", np.max(dev))
        return np.where((dev > 1e-12)[..., None, None], raw / tr[..., None, None], raw)
    return raw


def gauge_vectors(p) -> np.ndarray:
    """State vectors ``(sqrt(p3), (p1-1/2 + i(p2-1/2))/sqrt(p3))`` for pure triples (batched).

    Rows with ``p3 <= 1e-12`` get the limit vector ``(0, 1)``.
    """
    p = np.asarray(p, dtype=float)
    p3 = p[..., 2]
    safe = np.where(p3 > 1e-12, p3, 1.0)
    s = np.sqrt(safe)
    off = (p[..., 0] - 0.5) + 1j * (p[..., 1] - 0.5)
    v = np.stack([s + 0j, off / s], axis=-1)
    limit = np.array([0.0, 1.0], dtype=complex)
    return np.where((p3 > 1e-12)[..., None], v, limit)


def _projector(v):
    return v[..., :, None] * np.conj(v)[..., None, :]


def key_direct(p, P, Pi) -> np.ndarray:
    return qubit.to_density(Pi)


def key_frame(p, P, Pi) -> np.ndarray:
    """Key projector on ``k`` with ``<psi_j|k> = psi0_j`` for the gauge vectors of p, P."""
    u = np.stack([gauge_vectors(p), gauge_vectors(P)], axis=-1)
    psi0 = gauge_vectors(Pi)
    k = np.linalg.solve(cmat.adjoint(u), psi0[..., None])[..., 0]
    k = k / np.linalg.norm(k, axis=-1, keepdims=True)
    return _projector(k)


def weights_pi3(Pi):
    Pi = np.asarray(Pi, dtype=float)
    return Pi[..., 2], 1.0 - Pi[..., 2]


def weights_half(Pi):
    Pi = np.asarray(Pi, dtype=float)
    half = np.full(Pi.shape[:-1], 0.5)
    return half, half


# ordered: the first candidate that passes the orthogonal sweep is selected
CANDIDATES = {
    "pi3-direct": (weights_pi3, key_direct),
    "half-direct": (weights_half, key_direct),
    "pi3-frame": (weights_pi3, key_frame),
    "half-frame": (weights_half, key_frame),
}


def oracle_probabilities(p, P, Pi, mapping: str) -> np.ndarray:
    """Coin probabilities of the operator-form superposition under ``mapping``.

    Probabilities are read as projector expectation values so that an
    inconsistent candidate shows up as a deviation, not a validation error.
    Samples where the candidate's denominator vanishes come back as NaN.
    """
    weights, key = CANDIDATES[mapping]
    l1, l2 = weights(Pi)
    with np.errstate(invalid="ignore", divide="ignore"):
        key_rho = key(p, P, Pi)
        raw, tr = _oracle_raw(
            qubit.to_density(p), qubit.to_density(P), key_rho, l1, l2, strict=False
        )
        return qubit.measured_probabilities(raw / tr[..., None, None])


def random_pure(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` Haar-random pure triples."""
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    off = z[:, 1] * np.conj(z[:, 0])
    return np.column_stack([off.real + 0.5, off.imag + 0.5, np.abs(z[:, 0]) ** 2])


def sample_inputs(rng: np.random.Generator, n: int, regime: str):
    """Valid ``(p, P, Pi)`` batches for one sweep regime.

    ``orthogonal``: ``P`` is the antipode of ``p``. ``general``: independent states.
    ``control``: orthogonal inputs with ``Pi1 = Pi2 = 1/2`` (``Pi3`` in {0, 1}).
    """
    p = random_pure(rng, n)
    if regime == "general":
        P = random_pure(rng, n)
    else:
        P = 1.0 - p
    if regime == "control":
        Pi = np.full((n, 3), 0.5)
        Pi[:, 2] = rng.integers(0, 2, size=n)
    else:
        Pi = random_pure(rng, n)
    keep = (p[:, 2] > 1e-6) & (P[:, 2] > 1e-6)
    if regime == "general":
        keep &= np.abs(normalizer(p, P, Pi)) > 1e-3
    return p[keep], P[keep], Pi[keep]


@dataclass
class SweepResult:
    mapping: str
    regime: str
    samples: int
    undefined: int
    max_deviation: float
    mean_deviation: float

    @property
    def consistent(self) -> bool:
        return self.undefined == 0 and self.max_deviation < AGREEMENT_TOL


@dataclass
class ConventionReport:
    seed: int
    samples: int
    tolerance: float
    results: list[SweepResult] = field(default_factory=list)
    selected: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def lookup(self, mapping: str, regime: str) -> SweepResult:
        for r in self.results:
            if r.mapping == mapping and r.regime == regime:
                return r
        raise KeyError((mapping, regime))


def resolve_weight_convention(
    seed: int = 0, samples: int = 10_000, strict: bool = True
) -> ConventionReport:
    """Sweep random pure inputs and compare the probability rule with each candidate.

    Regimes are ``orthogonal``, ``general`` and ``control``. The first mapping
    (in ``CANDIDATES`` order) whose orthogonal-sweep deviation stays below
    1e-8, with no undefined samples, is selected. With ``strict`` a ``NoConsistentMapping`` is raised
    when none qualifies; the report is attached as ``err.report``.
    """
    rng = np.random.default_rng(seed)
    report = ConventionReport(seed=seed, samples=samples, tolerance=AGREEMENT_TOL)
    for regime in ("orthogonal", "general", "control"):
        p, P, Pi = sample_inputs(rng, samples, regime)
        rule, _ = addition_rule(p, P, Pi)
        for name in CANDIDATES:
            dev = np.max(np.abs(oracle_probabilities(p, P, Pi, name) - rule), axis=-1)
            bad = ~np.isfinite(dev)
            good = dev[~bad]
            report.results.append(
                SweepResult(
                    name,
                    regime,
                    int(len(dev)),
                    int(bad.sum()),
                    float(good.max()) if good.size else float("nan"),
                    float(good.mean()) if good.size else float("nan"),
                )
            )
    for name in CANDIDATES:
        if report.lookup(name, "orthogonal").consistent:
            report.selected = name
            break
    if report.selected is None and strict:
        err = NoConsistentMapping("no weight/key mapping reproduces the probability rule")
        err.report = report
        raise err
    return report


SELECTED_CONVENTION = "pi3-frame"
