"""
A qubit as three coins
======================

Each qubit state is a triple of "up" probabilities, one per coin. The
triple and the density matrix carry the same information.
"""
import numpy as np

from coinrep import qubit

# A generic mixed state
p = np.array([0.6, 0.7, 0.8])
rho = qubit.to_density(p)
print("rho =\n", rho)

# Reading the coins back off the matrix gives the same numbers
print("from_density:", qubit.from_density(rho))

# Each coin is an ordinary measurement: Tr(rho P_k) = p_k
print("measured:", qubit.measured_probabilities(rho))

# Not every triple is a state. The quantum margin equals det(rho)
for triple in ([0.5, 0.5, 0.5], [0.6, 0.7, 0.8], [1.0, 1.0, 1.0]):
    ok, margin = qubit.is_quantum(triple)
    print(f"{triple}: quantum={bool(ok)}, margin={float(margin):+.3f}")

# Spectrum and entropies
sd = qubit.spectral(p)
print(f"lambda = ({sd.lambda1:.6f}, {sd.lambda2:.6f})")
print(f"von Neumann entropy = {float(qubit.von_neumann_entropy(p)):.6f}")
print(f"Tsallis entropy (q=2) = {float(qubit.tsallis_entropy(p, 2.0)):.6f}")

# Pure states sit on the sphere of radius 1/2 around (1/2, 1/2, 1/2)
corner = 0.5 + 1 / (2 * np.sqrt(3))
pure = np.full(3, corner)
print("pure:", bool(qubit.is_pure(pure)), "vector:", qubit.pure_state_vector(pure))
