"""Unitary evolution of the coin probabilities (units with hbar = 1).

Two independent routes produce a :class:`Trajectory`:

* :func:`propagate` conjugates the density matrix with ``u(t) = exp(-i t H)``;
* :func:`integrate_vonneumann` runs classical RK4 on ``(p1, p2, p3)`` with
  rates read off the commutator ``d rho/dt = -i [H, rho]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import cmat, qubit
from .observable import DichotomicObservable, to_hermitian


@dataclass(frozen=True)
class EvolutionProblem:
    initial: np.ndarray
    hamiltonian: DichotomicObservable
    t_final: float
    steps: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "initial", qubit.require_quantum(self.initial))
        if self.initial.shape != (3,):
            raise ValueError("initial state must be a single probability triple")
        if not np.isfinite(self.t_final) or self.t_final <= 0:
            raise ValueError(f"t_final must be positive and finite, got {self.t_final}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps}")
        object.__setattr__(self, "steps", int(self.steps))

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_final, self.steps + 1)


@dataclass
class Trajectory:
    times: np.ndarray
    probs: np.ndarray
    method: str
    hamiltonian: DichotomicObservable
    meta: dict = field(default_factory=dict)

    def eigenvalue_drift(self) -> np.ndarray:
        """``|lambda1(t) - lambda1(0)|`` for every sample."""
        lam = qubit.eigenvalues(np.clip(self.probs, 0.0, 1.0))[:, 0]
        return np.abs(lam - lam[0])

    def to_dict(self) -> dict:
        drift = self.eigenvalue_drift()
        return {
            "schema_version": 1,
            "kind": "trajectory",
            "method": self.method,
            "hamiltonian": dict(zip(("x", "y", "z1", "z2"), self.hamiltonian.as_tuple())),
            "samples": [
                {"t": float(t), "p1": float(p[0]), "p2": float(p[1]), "p3": float(p[2]),
                 "eigenvalue_drift": float(d)}
                for t, p, d in zip(self.times, self.probs, drift)
            ],
            **self.meta,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Trajectory":
        samples = d["samples"]
        return cls(
            times=np.array([s["t"] for s in samples]),
            probs=np.array([[s["p1"], s["p2"], s["p3"]] for s in samples]),
            method=d["method"],
            hamiltonian=DichotomicObservable(**d["hamiltonian"]),
        )


def propagator(obs: DichotomicObservable, t: float) -> np.ndarray:
    return cmat.expm_herm_generator(to_hermitian(obs), t)


def superoperator(obs: DichotomicObservable, t: float) -> np.ndarray:
    """``u(t) (x) u*(t)``, acting on the row-major vector ``(p3, p, p*, 1-p3)``."""
    u = propagator(obs, t)
    return cmat.kron(u, np.conj(u))


def kinetic_vector(p) -> np.ndarray:
    """``(p3, p, p*, 1 - p3)`` with ``p = p1 - 1/2 - i(p2 - 1/2)``."""
    return qubit.to_density(p).reshape(-1)


def propagate(problem: EvolutionProblem) -> Trajectory:
    rho0 = qubit.to_density(problem.initial)
    times = problem.times()
    probs = np.empty((len(times), 3))
    for k, t in enumerate(times):
        u = propagator(problem.hamiltonian, t)
        probs[k] = qubit.from_density(u @ rho0 @ cmat.adjoint(u))
    return Trajectory(times, probs, "propagator", problem.hamiltonian)


def propagate_superoperator(problem: EvolutionProblem) -> Trajectory:
    """Same trajectory as :func:`propagate`, via the 4x4 action on the kinetic vector."""
    vec0 = kinetic_vector(problem.initial)
    times = problem.times()
    probs = np.empty((len(times), 3))
    for k, t in enumerate(times):
        rho = (superoperator(problem.hamiltonian, t) @ vec0).reshape(2, 2)
        probs[k] = qubit.from_density(rho)
    return Trajectory(times, probs, "superoperator", problem.hamiltonian)


def _density_unchecked(p: np.ndarray) -> np.ndarray:
    off = (p[0] - 0.5) + 1j * (p[1] - 0.5)
    return np.array([[p[2], np.conj(off)], [off, 1.0 - p[2]]])


def commutator_rates(p, h: np.ndarray) -> np.ndarray:
    """``d(p1, p2, p3)/dt`` from ``d rho/dt = -i [H, rho]``."""
    rho = _density_unchecked(np.asarray(p, dtype=float))
    drho = -1j * (h @ rho - rho @ h)
    return np.array([drho[1, 0].real, drho[1, 0].imag, drho[0, 0].real])


def integrate_vonneumann(problem: EvolutionProblem) -> Trajectory:
    h = to_hermitian(problem.hamiltonian)
    times = problem.times()
    dt = problem.t_final / problem.steps
    probs = np.empty((len(times), 3))
    y = problem.initial.astype(float).copy()
    probs[0] = y
    for k in range(problem.steps):
        k1 = commutator_rates(y, h)
        k2 = commutator_rates(y + 0.5 * dt * k1, h)
        k3 = commutator_rates(y + 0.5 * dt * k2, h)
        k4 = commutator_rates(y + dt * k3, h)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        probs[k + 1] = y
    return Trajectory(times, probs, "integrator", problem.hamiltonian)


def max_deviation(a: Trajectory, b: Trajectory) -> float:
    return float(np.max(np.abs(a.probs - b.probs)))


def convergence_ratio(problem: EvolutionProblem) -> tuple[float, float, float]:
    """Errors against the propagator at ``steps`` and ``2*steps``, and their ratio."""
    coarse = problem
    fine = EvolutionProblem(problem.initial, problem.hamiltonian, problem.t_final, 2 * problem.steps)
    e1 = max_deviation(integrate_vonneumann(coarse), propagate(coarse))
    e2 = max_deviation(integrate_vonneumann(fine), propagate(fine))
    return e1, e2, e1 / e2


# -- printed kinetic equations ------------------------------------------------


def printed_kinetic_rates(p, obs: DichotomicObservable):
    """Rates ``(dp3/dt, dp/dt, dp*/dt)`` from the component equations as printed."""
    p = np.asarray(p, dtype=float)
    w = obs.x - 1j * obs.y
    c = (p[0] - 0.5) - 1j * (p[1] - 0.5)
    dz = obs.z1 - obs.z2
    dp3 = -1j * (w * np.conj(c) - w * c)
    dc = -1j * (dz - 2 * w) * c
    dc_conj = 1j * (dz - 2 * np.conj(w)) * np.conj(c)
    return dp3, dc, dc_conj


def corrected_kinetic_rates(p, obs: DichotomicObservable):
    """Component equations re-derived from the commutator."""
    p = np.asarray(p, dtype=float)
    w = obs.x - 1j * obs.y
    c = (p[0] - 0.5) - 1j * (p[1] - 0.5)
    dz = obs.z1 - obs.z2
    dp3 = -1j * (w * np.conj(c) - np.conj(w) * c)
    dc = -1j * (dz * c + w * (1.0 - 2.0 * p[2]))
    dc_conj = 1j * (dz * np.conj(c) + np.conj(w) * (1.0 - 2.0 * p[2]))
    return dp3, dc, dc_conj


def commutator_kinetic_rates(p, obs: DichotomicObservable):
    rho = qubit.to_density(p)
    h = to_hermitian(obs)
    d = -1j * (h @ rho - rho @ h)
    return d[0, 0], d[0, 1], d[1, 0]


@dataclass
class KineticFormReport:
    samples: int
    printed: dict
    corrected: dict

    def to_dict(self) -> dict:
        return {"samples": self.samples, "printed": self.printed, "corrected": self.corrected}


def random_ball(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` triples uniform in the Bloch ball."""
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    r = rng.random(n) ** (1.0 / 3.0)
    return np.clip(0.5 + 0.5 * r[:, None] * v, 0.0, 1.0)


def check_kinetic_form(obs: DichotomicObservable, seed: int = 0, samples: int = 1000) -> KineticFormReport:
    """Max deviation of printed and corrected component equations from the commutator."""
    rng = np.random.default_rng(seed)
    names = ("dp3", "dp", "dp_conj")
    printed = dict.fromkeys(names, 0.0)
    corrected = dict.fromkeys(names, 0.0)
    for p in random_ball(rng, samples):
        truth = commutator_kinetic_rates(p, obs)
        for name, a, b, t in zip(
            names, printed_kinetic_rates(p, obs), corrected_kinetic_rates(p, obs), truth
        ):
            printed[name] = max(printed[name], float(abs(a - t)))
            corrected[name] = max(corrected[name], float(abs(b - t)))
    return KineticFormReport(samples, printed, corrected)
