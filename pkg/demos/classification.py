"""Classify the extremal rays of the symmetric F-cone.

Each ray is tried against the cyclic criterion, then the second criterion,
then the democratic test.  Counts are (rays, cyclic, second, democratic).

Run: python demos/classification.py [max_n]
"""
import sys
import time

from semiample import semiample_test

top = int(sys.argv[1]) if len(sys.argv) > 1 else 14
for n in range(8, top + 1):
    start = time.perf_counter()
    row = semiample_test(n)
    print(f"n={n:2d}  {row.counts}  ({time.perf_counter() - start:.1f}s)")

row = semiample_test(9)
for rec in row.records:
    print(rec.category.ljust(10), rec.ray)

# The democratic test with the sound flow coefficients finds less.
exact = semiample_test(9, convention="exact")
print("n=9 with exact democratic flows:", exact.counts)
