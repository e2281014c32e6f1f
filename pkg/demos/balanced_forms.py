"""Cyclic quadratic forms: balanced, weakly balanced, and where they fail.

A form is balanced when, on every hyperplane sum(x) = n, its integer minimum
sits at the near-constant vector.  The check here is exact: a finite
reduction to short vectors, no sampling.

Run: python demos/balanced_forms.py
"""
from semiample import is_balanced, is_weakly_balanced, named_form, q_from_function, standard_function
from semiample.quadforms import balanced_vector, evaluate

for m in range(2, 9):
    Q = q_from_function(standard_function("A", m))
    print(f"Q_A{m}: {is_balanced(Q).status}")

print()
for m in range(4, 14):
    v = is_balanced(named_form("B", m))
    if v.failed:
        x = v.witness
        print(f"B form, m={m}: {v.status}; Q{x} = {v.details['value']}"
              f" < {v.details['bound']} = Q{balanced_vector(m, sum(x))}")
    else:
        print(f"B form, m={m}: {v.status}")

# Weak balance only looks at 0/1 vectors, so it is cheaper and weaker.
Q = named_form("B", 5)
print("\nB form, m=5, weakly balanced:", is_weakly_balanced(Q).status)
print("value on the periodic witness:", evaluate(Q, (-1, -1, 0, 1, 0)))
