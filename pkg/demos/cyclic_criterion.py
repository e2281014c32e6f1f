"""The cyclic semiampleness criterion on a few divisors.

Run: python demos/cyclic_criterion.py
"""
from semiample import SymmetricDivisor, cyclic_semiample_test, psi_minus_delta
from semiample.criteria import cyclic_lhs

for n in range(5, 13):
    rep = cyclic_semiample_test(psi_minus_delta(n))
    print(f"psi - Delta, n={n}: {rep.verdict}; tight subsets {rep.details['tight']},"
          f" of which not intervals {rep.details['tight_non_interval']}")

# Every cyclic interval is tight whatever the coefficients.
D = SymmetricDivisor.build(9, [1, 1, 2])
print("\nleft side on {0,1,2} for (1,1,2):", cyclic_lhs(D, (0, 1, 2)))
rep = cyclic_semiample_test(D)
print("(1,1,2) on 9 points:", rep.verdict, "at S =", rep.witness, "value", rep.details["value"])
