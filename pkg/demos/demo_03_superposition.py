"""
Superposition as a rule for adding probabilities
================================================

Two pure states p and P are combined, under a third pure "key" state Pi,
into a new pure state. The rule acts on probabilities only. It is checked
here against the operator form of the same superposition.
"""
import numpy as np

from coinrep import qubit, superpose

rng = np.random.default_rng(0)
p, P, Pi = (superpose.random_pure(rng, 1)[0] for _ in range(3))
out, t = superpose.superpose_probabilities(p, P, Pi, with_normalizer=True)
print("p  =", p)
print("P  =", P)
print("Pi =", Pi)
print("result =", out, " T =", t)
print("result is pure:", bool(qubit.is_pure(out)))

oracle = superpose.oracle_probabilities(p, P, Pi, superpose.SELECTED_CONVENTION)
print("operator form:", oracle, " max deviation:", np.max(np.abs(oracle - out)))

# Which weights and key make the two forms agree is measured, not assumed
conv = superpose.resolve_weight_convention(seed=0, samples=2000)
for r in conv.results:
    print(f"{r.mapping:12s} {r.regime:10s} max dev {r.max_deviation:.2e}  undefined {r.undefined}")
print("selected:", conv.selected)

# With Pi1 = Pi2 = 1/2 the interference terms cancel and T = 1
mix, t = superpose.addition_rule(p, P, [0.5, 0.5, 0.3])
print("convex mix T =", t)
