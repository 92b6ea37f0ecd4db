import numpy as np
import pytest

from coinrep import evolve, qubit
from coinrep.observable import DichotomicObservable, to_hermitian

from test_cmat import series_expm

ZERO = DichotomicObservable(0, 0, 0, 0)
HALF_Z = DichotomicObservable(0, 0, 0.5, -0.5)
GENERIC = DichotomicObservable(0.3, -0.7, 0.4, -0.2)


def problem(h, p=(0.6, 0.7, 0.8), t=1.0, steps=1000):
    return evolve.EvolutionProblem(np.array(p), h, t, steps)


def test_problem_validation():
    with pytest.raises(ValueError):
        problem(ZERO, t=0.0)
    with pytest.raises(ValueError):
        problem(ZERO, steps=0)
    with pytest.raises(Exception):
        problem(ZERO, p=(1, 1, 1))
    assert len(problem(ZERO, steps=10).times()) == 11


@pytest.mark.parametrize("method", [evolve.propagate, evolve.integrate_vonneumann,
                                    evolve.propagate_superoperator])
def test_zero_generator_constant(method):
    traj = method(problem(ZERO, steps=50))
    assert np.array_equal(traj.probs, np.tile([0.6, 0.7, 0.8], (51, 1)))


def test_diagonal_generator_preserves_population():
    traj = evolve.propagate(problem(DichotomicObservable(0, 0, 1.3, -0.4), t=5.0, steps=200))
    np.testing.assert_allclose(traj.probs[:, 2], 0.8, atol=1e-15)


def test_precession():
    traj = evolve.propagate(problem(HALF_Z, p=(1.0, 0.5, 0.5), t=np.pi, steps=1000))
    assert traj.probs[-1, 0] == pytest.approx(0.0, abs=1e-15)
    t = traj.times
    np.testing.assert_allclose(traj.probs[:, 0] - 0.5, 0.5 * np.cos(t), atol=1e-14)
    np.testing.assert_allclose(np.abs(traj.probs[:, 1] - 0.5), np.abs(0.5 * np.sin(t)), atol=1e-14)


def test_propagator_matches_series(rng):
    for _ in range(20):
        h = DichotomicObservable(*rng.uniform(-1, 1, 4))
        t = rng.uniform(0, 3)
        np.testing.assert_allclose(evolve.propagator(h, t), series_expm(to_hermitian(h), t), atol=1e-12)


def test_superoperator_route_agrees(rng):
    a = evolve.propagate(problem(GENERIC, steps=100))
    b = evolve.propagate_superoperator(problem(GENERIC, steps=100))
    assert evolve.max_deviation(a, b) < 1e-14


def test_kinetic_vector_order():
    v = evolve.kinetic_vector([0.6, 0.7, 0.8])
    np.testing.assert_allclose(v, [0.8, 0.1 - 0.2j, 0.1 + 0.2j, 0.2], atol=1e-15)


def test_integrator_precession():
    pr = problem(HALF_Z, p=(1.0, 0.5, 0.5), t=np.pi, steps=1000)
    a = evolve.integrate_vonneumann(pr)
    b = evolve.propagate(pr)
    assert abs(a.probs[-1, 0] - b.probs[-1, 0]) < 1e-8


def test_integrator_agreement_and_drift():
    pr = problem(GENERIC)
    a, b = evolve.propagate(pr), evolve.integrate_vonneumann(pr)
    assert evolve.max_deviation(a, b) < 1e-9
    assert a.eigenvalue_drift().max() < 1e-10
    assert b.eigenvalue_drift().max() < 1e-10


@pytest.mark.parametrize("steps", [10, 20, 40])
def test_fourth_order_convergence(steps):
    _, _, ratio = evolve.convergence_ratio(problem(GENERIC, steps=steps))
    assert 14 <= ratio <= 18


def test_trajectory_round_trip():
    traj = evolve.propagate(problem(GENERIC, steps=5))
    doc = traj.to_dict()
    assert doc["kind"] == "trajectory" and len(doc["samples"]) == 6
    back = evolve.Trajectory.from_dict(doc)
    assert np.array_equal(back.probs, traj.probs)
    assert back.hamiltonian == traj.hamiltonian


def test_kinetic_form_diagonal():
    rep = evolve.check_kinetic_form(DichotomicObservable(0, 0, 0.9, -0.3), samples=200)
    assert rep.printed["dp3"] == 0.0
    assert max(rep.corrected.values()) < 1e-14


def test_kinetic_form_generic():
    rep = evolve.check_kinetic_form(GENERIC, samples=500)
    assert rep.printed["dp3"] > 1e-2
    assert rep.printed["dp"] > 1e-2
    assert max(rep.corrected.values()) < 1e-14


def test_commutator_rates_match_propagator():
    h = to_hermitian(GENERIC)
    p = np.array([0.6, 0.7, 0.8])
    dt = 1e-6
    a = evolve.propagate(evolve.EvolutionProblem(p, GENERIC, dt, 1)).probs[-1]
    b = evolve.propagate(evolve.EvolutionProblem(p, GENERIC, 2 * dt, 1)).probs[-1]
    numeric = (4 * a - b - 3 * p) / (2 * dt)
    np.testing.assert_allclose(evolve.commutator_rates(p, h), numeric, atol=1e-8)


def test_random_ball_inside(rng):
    p = evolve.random_ball(rng, 1000)
    assert np.all(qubit.is_quantum(p)[0])
