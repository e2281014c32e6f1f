"""Exact linear algebra and short-vector enumeration over the rationals."""

import math
from fractions import Fraction

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**8


def ldl(matrix):
    """Exact symmetric decomposition ``M = L D L^T`` without pivoting.

    Returns ``(mu, diag)`` where ``mu[i][j]`` (``j > i``) are the
    coefficients of the completed-square form

        x^T M x = sum_i diag[i] * (x_i + sum_{j > i} mu[i][j] x_j)^2

    or ``None`` if a zero pivot is met before the end (the matrix is then not
    positive definite).
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    mu = [[Fraction(0)] * n for _ in range(n)]
    diag = []
    for i in range(n):
        p = a[i][i]
        if p <= 0:
            return None
        diag.append(p)
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / p
        for j in range(i + 1, n):
            if a[i][j]:
                f = a[i][j] / p
                for k in range(j, n):
                    a[j][k] -= f * a[i][k]
                    if k != j:
                        a[k][j] = a[j][k]
    return mu, diag


def is_positive_definite(matrix):
    return ldl(matrix) is not None


def is_psd(matrix):
    """Exact positive semidefiniteness test by symmetric elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    live = list(range(len(a)))
    while live:
        if any(a[i][i] < 0 for i in live):
            return False
        piv = next((i for i in live if a[i][i] > 0), None)
        if piv is None:
            # all remaining diagonal entries vanish: PSD only if the block is zero
            return all(a[i][j] == 0 for i in live for j in live)
        live.remove(piv)
        p = a[piv][piv]
        for i in live:
            if a[i][piv]:
                f = a[i][piv] / p
                for j in live:
                    a[i][j] -= f * a[piv][j]
    return True


def nullspace(matrix):
    """Rational basis of the kernel in reduced echelon form.

    Returns ``(pivots, basis)``; each basis vector has a 1 in its own free
    column and 0 in the other free columns.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    return free, _kernel_basis(rows, pivots, free, ncols)


def solve(matrix, rhs):
    """Exact solution of a square non-singular system."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _kernel_basis(rows, pivots, free, ncols):
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def _integer_range(center, radius_sq):
    """Integers t with ``(t + center)^2 <= radius_sq`` as ``(lo, hi)``."""
    if radius_sq < 0:
        return 1, 0
    num, den = radius_sq.numerator, radius_sq.denominator
    s = Fraction(math.isqrt(num * den), den)   # floor-ish of sqrt(radius_sq)
    lo = math.floor(-center - s) - 1
    hi = math.ceil(-center + s) + 1
    while lo <= hi and (lo + center) ** 2 > radius_sq:
        lo += 1
    while hi >= lo and (hi + center) ** 2 > radius_sq:
        hi -= 1
    return lo, hi


def short_vectors(matrix, bound, budget=DEFAULT_BUDGET, center=None):
    """All integer vectors ``x`` with ``(x - c)^T M (x - c) <= bound``.

    M must be positive definite and ``c`` (default 0) is a rational centre.
    Fincke-Pohst enumeration with exact rational bounds.  Yields tuples
    ``(x, value)``.  Raises :class:`BudgetExceeded` once more than ``budget``
    tree nodes have been visited.
    """
    dec = ldl(matrix)
    if dec is None:
        raise ValueError("matrix is not positive definite")
    mu, diag = dec
    n = len(diag)
    bound = Fraction(bound)
    c = [Fraction(0)] * n if center is None else [Fraction(t) for t in center]
    x = [0] * n
    visited = 0

    def rec(i, remaining):
        nonlocal visited
        if i < 0:
            yield tuple(x), bound - remaining
            return
        center = sum((mu[i][j] * (x[j] - c[j]) for j in range(i + 1, n)), -c[i])
        lo, hi = _integer_range(center, remaining / diag[i])
        for t in range(lo, hi + 1):
            visited += 1
            if visited > budget:
                raise BudgetExceeded(budget)
            x[i] = t
            yield from rec(i - 1, remaining - diag[i] * (t + center) ** 2)
        x[i] = 0

    yield from rec(n - 1, bound)
