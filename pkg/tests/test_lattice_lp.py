from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiample.errors import BudgetExceeded
from semiample.lattice import is_positive_definite, is_psd, ldl, nullspace, short_vectors, solve
from semiample.lp import check_certificate, feasibility


def quad(M, x):
    return sum(M[i][j] * x[i] * x[j] for i in range(len(x)) for j in range(len(x)))


def test_definiteness():
    assert is_positive_definite([[2, -1], [-1, 2]])
    assert not is_positive_definite([[1, 1], [1, 1]])
    assert is_psd([[1, 1], [1, 1]])
    assert not is_psd([[1, 2], [2, 1]])
    assert is_psd([[0, 0], [0, 0]])
    assert not is_psd([[0, 1], [1, 0]])


def test_ldl_completes_the_square():
    M = [[4, 2, 0], [2, 5, 1], [0, 1, 3]]
    mu, diag = ldl(M)
    for x in product(range(-2, 3), repeat=3):
        squares = sum(diag[i] * (x[i] + sum(mu[i][j] * x[j] for j in range(i + 1, 3))) ** 2
                      for i in range(3))
        assert squares == quad(M, x)


def test_nullspace_and_solve():
    free, basis = nullspace([[1, 2, 3], [2, 4, 6]])
    assert len(basis) == 2
    for v in basis:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
    x = solve([[2, 1], [1, 3]], [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(1, 12))
def test_short_vectors_match_box(seed, bound):
    a, b, c = seed
    # a positive definite matrix from an integer triangular factor
    L = [[1, 0, 0], [a, 1, 0], [b, c, 1]]
    M = [[sum(L[i][k] * L[j][k] for k in range(3)) for j in range(3)] for i in range(3)]
    got = {x for x, v in short_vectors(M, bound)}
    # det M = 1, so |x_i| <= sqrt(bound * (M^-1)_ii) and a box of 60 is ample
    R = 60
    grid = np.stack(np.meshgrid(*[np.arange(-R, R + 1)] * 3, indexing="ij"), -1).reshape(-1, 3)
    vals = np.einsum("ni,ij,nj->n", grid, np.array(M), grid)
    want = {tuple(int(t) for t in x) for x in grid[vals <= bound]}
    assert got == want


def test_short_vectors_with_centre():
    M = [[2, 0], [0, 2]]
    centre = [Fraction(1, 2), 0]
    got = sorted(x for x, v in short_vectors(M, Fraction(1, 2), center=centre))
    assert got == [(0, 0), (1, 0)]


def test_short_vectors_budget():
    with pytest.raises(BudgetExceeded):
        list(short_vectors([[1, 0], [0, 1]], 10**6, budget=10))


def test_lp_feasible_point_satisfies():
    res = feasibility([[1, 1]], [2], [[1, -1]], [1], 2)
    assert res.feasible
    x, y = res.point
    assert x + y == 2 and x - y >= 1


def test_lp_infeasible_certificate():
    eq, eqr, ge, ger = [[1, 1]], [1], [[1, 0], [0, 1]], [1, 1]
    res = feasibility(eq, eqr, ge, ger, 2)
    assert not res.feasible
    assert check_certificate(eq, eqr, ge, ger, res.certificate)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_lp_verdicts_are_checked(rows, rhs):
    rhs = rhs[:len(rows)]
    res = feasibility([], [], rows, rhs, 2)
    if res.feasible:
        assert all(sum(a * x for a, x in zip(r, res.point)) >= b for r, b in zip(rows, rhs))
    else:
        assert check_certificate([], [], rows, rhs, res.certificate)
