"""Parasymmetric divisors, boundary rewriting and symmetric classes.

Run: python demos/divisors.py
"""
from semiample import (SymmetricDivisor, keel_rewrite, parasymmetric, psi_minus_delta,
                       standard_function, to_symmetric_class)
from semiample.divisors import format_divisor, symmetric_expression
from semiample.weightings import Weighting

# A_n on the all-ones tuple gives the zero class.
for n in (5, 8, 11):
    D = parasymmetric(standard_function("A", n), (1,) * n)
    print(f"A_{n} on (1)_{n}: class is zero = {to_symmetric_class(D).is_zero()}")

D = parasymmetric(standard_function("E", 3), (1,) * 9)
print("E_3 on (1)_9:", format_divisor(to_symmetric_class(D)))

print("psi - Delta on 8 points:", format_divisor(psi_minus_delta(8)))

# Rewriting with any weighting keeps the class.
expr = symmetric_expression(SymmetricDivisor.build(6, [2, -1]))
w = Weighting.from_dict(6, {(1, 2): 3, (2, 5): -1, (4, 6): 2})
print("class before:", format_divisor(to_symmetric_class(expr)),
      " after:", format_divisor(to_symmetric_class(keel_rewrite(expr, w), strict=False)))
