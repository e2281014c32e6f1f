"""F-nef divisors from functions with a raised value at zero.

Run: python demos/new_nef_divisors.py
"""
from semiample import (cyclic_semiample_test, democratic_test, new_nef_divisor,
                       standard_function, to_symmetric_class)
from semiample.divisors import format_divisor

expr, report = new_nef_divisor(standard_function("A", 3), (1,) * 9)
D = to_symmetric_class(expr)
print("class:", format_divisor(D))
print(f"hypotheses {report.verdict}: zero-sum minimum {report.details['minimum']} >= m(f) = {report.details['m']}")
print("cyclic criterion:", cyclic_semiample_test(D).verdict)
print("democratic test:", democratic_test(D).verdict)

expr, report = new_nef_divisor(standard_function("A", 5), (1,) * 10)
print("\nA_5 on (1)_10:", format_divisor(to_symmetric_class(expr)),
      f"(minimum {report.details['minimum']}, m(f) = {report.details['m']})")
