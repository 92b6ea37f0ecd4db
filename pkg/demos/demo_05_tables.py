"""
A complex 2x2 matrix as fifteen probabilities
=============================================

A normalized 2x2 matrix A is flattened to a 4-vector. Its rank-one 4x4
density matrix is written as fifteen probabilities, and A comes back up
to a global phase.
"""
import numpy as np

from coinrep import mat4prob

a = np.array([[1, 1], [0, 0]]) / np.sqrt(2)
table = mat4prob.probs_from_amplitude2(a)
print("diagonal coins:", table.diag)
print("pair coins:", table.pairs)
print("rebuilt:\n", mat4prob.amplitude2_from_probs(table))

# Two 16-vectors built from A differ by a fixed permutation
rng = np.random.default_rng(0)
b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
pair = mat4prob.build_vec16(b)
t = mat4prob.permutation_T()
print("|aprime - T atilde| =", np.max(np.abs(pair.aprime - t @ pair.atilde)))
print("T is an involution:", np.array_equal(t @ t, np.eye(16)))
