"""F-nef functions on cyclic groups.

Run: python demos/fnef_functions.py
"""
from semiample import is_fnef, m_of, standard_function, tilde
from semiample.groupfn import fnef_deficit

# A_m(i) = i(m - i) is F-nef for every m.
print("A_m F-nef for m = 2..16:", all(is_fnef(standard_function("A", m)).passed for m in range(2, 17)))

# B_m bumps the value at +-1 to 3m - 1.  Small odd moduli break it.
for m in range(4, 17):
    v = is_fnef(standard_function("B", m))
    note = f"fails at {v.witness}, deficit {v.details['deficit']}" if v.failed else "F-nef"
    print(f"B_{m}: {note}")

B5 = standard_function("B", 5)
print("deficit of B_5 at (2, 2, 2):", fnef_deficit(B5, 2, 2, 2))

# m(f) and the function with f(0) replaced by m(f).
A7 = standard_function("A", 7)
print("m(A_7) =", m_of(A7), " tilde(A_7) == E_7:", tilde(A7) == standard_function("E", 7))
