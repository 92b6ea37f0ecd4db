"""
Observables from dichotomic coin variables
==========================================

Four real numbers (x, y, z1, z2) define a Hermitian 2x2 observable. Its
mean in any state is a linear function of the coin probabilities.
"""
import numpy as np

from coinrep import qubit
from coinrep.observable import (
    SPIN_X,
    SPIN_Y,
    SPIN_Z,
    DichotomicObservable,
    bistochastic,
    observable_eigenvalues,
    quantum_mean,
    to_hermitian,
)

h = DichotomicObservable(x=0.3, y=-0.4, z1=1.0, z2=-0.2)
print("H =\n", to_hermitian(h))

p = [0.6, 0.7, 0.8]
mean = quantum_mean(p, h)
trace = np.trace(qubit.to_density(p) @ to_hermitian(h)).real
print(f"<H> closed form = {float(mean):.12f}, Tr(rho H) = {trace:.12f}")

# Spin projections have eigenvalues +-1/2 and the usual commutator
print("spin-x eigenvalues:", observable_eigenvalues(SPIN_X))
sx, sy, sz = (to_hermitian(s) for s in (SPIN_X, SPIN_Y, SPIN_Z))
print("[sx, sy] == i sz:", np.array_equal(sx @ sy - sy @ sx, 1j * sz))

# The diagonal of H is a mixture of its eigenvalues, weighted by a bistochastic matrix
b = bistochastic(h)
h1, h2 = observable_eigenvalues(h)
u11 = b.matrix[0, 0]
print("M =\n", b.matrix)
print(f"z1 = {h.z1}, u11*H1 + (1-u11)*H2 = {u11 * h1 + (1 - u11) * h2:.12f}")
