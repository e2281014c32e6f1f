"""Weightings of the complete graph and their flows.

A weighting certifies that a divisor rewrites to an effective boundary sum
when its flow across every cut is at least the required value.

Run: python demos/weightings.py
"""
from semiample import cyclic_weighting, effectivity_oracle, standard_function, verify_effectivity
from semiample.trees import CyclicOrdering
from semiample.weightings import democratic_weighting, partition_flow

f = standard_function("A", 5)
d = (1, 2, 3, 4, 0)
sigma = CyclicOrdering.identity(5)
w = cyclic_weighting(f, d, sigma)
print("cyclic weighting, vertex flows:", ", ".join(str(w.vertex_flow(i)) for i in range(1, 6)))
print("flow across {1,2}:", partition_flow(w, (1, 2)), " f(d1 + d2) =", f(1 + 2))
print("effective:", verify_effectivity(w, f, d, ordering=sigma).status)

# Rank one weighting with prescribed vertex flows.
dem = democratic_weighting([3, 5, 7, 11])
print("\ndemocratic weighting vertex flows:", ", ".join(str(dem.vertex_flow(i)) for i in range(1, 5)))

# The linear-programming oracle decides whether any effective weighting exists.
v = effectivity_oracle(standard_function("B", 5), (2, 2, 2, 4))
print("\nB_5 on (2,2,2,4):", v.status, "F-curve:", v.witness["fcurve"])
