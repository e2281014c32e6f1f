"""Boundary representatives of 2D, one per binary tree.

For a divisor passing the cyclic criterion, each tree gets a nonnegative
boundary representative avoiding the tree's own strata.

Run: python demos/certificates.py
"""
from semiample import emit_certificates, psi_minus_delta
from semiample.criteria import iter_certificates
from semiample.divisors import format_divisor

for n in (5, 6, 7):
    D = psi_minus_delta(n)
    print(f"{format_divisor(D)}: {len(emit_certificates(D))} representatives")

tree, sigma, w, rep = next(iter_certificates(psi_minus_delta(6)))
print("\ntree", tree.to_newick(), "ordering", sigma.order)
for side, c in sorted(rep.boundary.items()):
    if c:
        print("  ", side, c)
