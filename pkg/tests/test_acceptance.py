"""Exit criteria.  Each ``test_criterion_NN_*`` is one criterion; the
conftest prints a PASS/FAIL line per criterion at the end of the run."""

import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiample.criteria import (cyclic_lhs, cyclic_scan, cyclic_semiample_test,
                                democratic_test, iter_certificates, new_nef_divisor,
                                semiample_test)
from semiample.divisors import (DivisorExpression, SymmetricDivisor, is_fnef_divisor,
                                keel_rewrite, parasymmetric, psi_minus_delta,
                                symmetric_expression, to_symmetric_class)
from semiample.fcone import fcone_inequalities, fcone_rays
from semiample.groupfn import is_fnef, m_of, make_symmetric_function, standard_function, tilde
from semiample.quadforms import canonical_vector, evaluate, is_balanced, named_form, q_from_function
from semiample.trees import CyclicOrdering
from semiample.weightings import Weighting, cyclic_weighting, effectivity_oracle, partition_flow

TABLE = {8: (4, 3, 1, 0), 9: (4, 3, 0, 1), 10: (7, 6, 1, 0), 11: (10, 6, 0, 4),
         12: (10, 6, 1, 3), 13: (18, 9, 0, 9), 14: (27, 13, 1, 13)}
EXTENDED = {15: (26, 11, 0, 15), 16: (74, 19, 7, 48), 17: (113, 22, 0, 84)}


def double_factorial(k):
    out = 1
    while k > 1:
        out, k = out * k, k - 2
    return out


def symmetric_values(m, free):
    return make_symmetric_function(m, [free[min(a, m - a)] for a in range(m)])


# 1 ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", sorted(TABLE))
def test_criterion_01_table_reproduction(n):
    assert semiample_test(n).counts == TABLE[n]


@pytest.mark.slow
@pytest.mark.parametrize("n", [
    15, 16,
    pytest.param(17, marks=pytest.mark.xfail(
        strict=True, reason="91 rays pass the democratic test here, against 84 in the reference row")),
])
def test_extended_table_rows(n):
    assert semiample_test(n).counts == EXTENDED[n]


# 2 ---------------------------------------------------------------------------

@pytest.mark.parametrize("n,count", [(5, 1), (6, 2), (20, 739),
                                     pytest.param(25, 28334, marks=pytest.mark.slow)])
def test_criterion_02_ray_counts(n, count):
    rays = fcone_rays(n)
    assert len(rays) == count
    if n == 20:
        reports = cyclic_scan([SymmetricDivisor.build(n, r) for r in rays])
        assert sum(r.passed for r in reports) == 60


# 3 ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(5, 13))
def test_criterion_03_vanishing_class(n):
    D = parasymmetric(standard_function("A", n), (1,) * n)
    assert to_symmetric_class(D).is_zero()


# 4 ---------------------------------------------------------------------------

PERIODIC = {
    5: (-1, -1, 0, 1, 0),
    7: (-1, -1, 0, 1, 1, 1, 0),
    11: (-1, -1, 0, 1, 0, -1, -1, 0, 1, 1, 0),
    13: (-1, -1, 0, 1, 1, 1, 0, -1, -1, 0, 1, 1, 0),
}


def test_criterion_04_balancedness():
    for m in range(2, 9):
        assert is_balanced(q_from_function(standard_function("A", m))).passed, m
    for m in (4, 6, 8, 9, 12):
        assert is_balanced(named_form("B", m)).passed, m
    for m, pattern in PERIODIC.items():
        v = is_balanced(named_form("B", m))
        assert v.failed, m
        assert (v.details["value"], v.details["bound"]) == (1, 3)
        assert v.witness == canonical_vector(pattern)
        assert evaluate(named_form("B", m), pattern) == 1
    for m in (2, 6, 10):
        assert is_balanced(named_form("C", m)).passed, m
    for m in (1, 3, 5):
        assert is_balanced(named_form("D", m)).passed, m


# 5 ---------------------------------------------------------------------------

def test_criterion_05_fnef_classification():
    b_nef = {m for m in range(4, 17) if is_fnef(standard_function("B", m)).passed}
    assert b_nef == {4, 6} | set(range(8, 17))
    assert all(is_fnef(standard_function("E", m)).passed for m in range(3, 17))
    assert is_fnef(standard_function("E", 2)).failed
    assert all(is_fnef(standard_function("A", m)).passed for m in range(2, 17))


# 6 ---------------------------------------------------------------------------

def test_criterion_06_tilde_suite():
    for m in range(3, 11):
        A = standard_function("A", m)
        assert m_of(A) == m
        assert tilde(A) == standard_function("E", m)
    expr, report = new_nef_divisor(standard_function("A", 3), (1,) * 9)
    assert report.passed
    D = to_symmetric_class(expr)
    assert D == Fraction(3, 2) * SymmetricDivisor.build(9, [1, 1, 2])
    assert is_fnef_divisor(standard_function("E", 3), (1,) * 9).passed
    assert all(sum(r * a for r, a in zip(row, D.coeffs)) >= 0 for row in fcone_inequalities(9))
    assert democratic_test(D).passed
    assert cyclic_semiample_test(D).failed


# 7 ---------------------------------------------------------------------------

def polygon_profile(m, d, order, I):
    """Residues mod m of the polygon vertices swept by the blocks in I."""
    z = [0] * m
    v = 0
    for label in order:
        for _ in range(d[label - 1] % m or m):
            v += 1
            if label in I:
                z[v % m] += 1
    return z


def test_criterion_07_cyclic_weighting_flows():
    rng = random.Random(2024)
    for _ in range(200):
        m = rng.randint(2, 6)
        n = rng.randint(3, 8)
        f = symmetric_values(m, [rng.randint(-5, 5) for _ in range(m // 2 + 1)])
        d = [rng.randrange(m) for _ in range(n - 1)]
        d.append(-sum(d) % m)
        order = list(range(1, n + 1))
        rng.shuffle(order)
        sigma = CyclicOrdering.of(order)
        w = cyclic_weighting(f, d, sigma)
        Q = q_from_function(f)
        for k in range(1, n):
            for I in combinations(range(1, n + 1), k):
                assert partition_flow(w, I) == evaluate(Q, polygon_profile(m, d, sigma.order, set(I)))


# 8 ---------------------------------------------------------------------------

def oracle_says_fnef(f):
    m = f.modulus
    return all(effectivity_oracle(f, (a, b, c, -(a + b + c) % m)).passed
               for a in range(m) for b in range(a, m) for c in range(b, m))


def test_criterion_08_oracle_equivalence():
    for m in range(1, 5):
        for free in product(range(-2, 3), repeat=m // 2 + 1):
            f = symmetric_values(m, free)
            assert oracle_says_fnef(f) == is_fnef(f).passed, (m, free)
    rng = random.Random(55)
    for _ in range(100):
        f = symmetric_values(5, [rng.randint(-2, 2) for _ in range(3)])
        assert oracle_says_fnef(f) == is_fnef(f).passed, f


# 9 ---------------------------------------------------------------------------

def cyclic_divisors(n, count=3):
    pool = [psi_minus_delta(n)] + [SymmetricDivisor.build(n, r) for r in fcone_rays(n)]
    pool.append(pool[0] + pool[-1])
    out = [D for D in pool if cyclic_semiample_test(D).passed]
    return out[:count]


@pytest.mark.parametrize("n", [5, 6, 7])
def test_criterion_09_certificates(n):
    divisors = cyclic_divisors(n)
    assert len(divisors) == 3
    for D in divisors:
        target = symmetric_expression(2 * D)
        count = 0
        for tree, sigma, w, rep in iter_certificates(D):
            count += 1
            assert rep.is_boundary()                   # zero psi residual
            assert rep.is_effective_boundary()
            assert all(rep.coefficient(s) == 0 for s in tree.splits(internal_only=True))
            assert to_symmetric_class(rep, strict=False) == to_symmetric_class(target)
        assert count == double_factorial(2 * n - 5)


# 10 --------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(5, 13))
def test_criterion_10_psi_minus_delta_strict(n):
    D = psi_minus_delta(n)
    assert cyclic_semiample_test(D).passed
    tight = [S for k in range(2, n - 1) for S in combinations(range(n), k) if cyclic_lhs(D, S) == 0]
    assert not tight, f"equality holds on {len(tight)} subsets, first {tight[0]}"


# 11 --------------------------------------------------------------------------

@st.composite
def symmetric_inputs(draw):
    n = draw(st.integers(5, 8))
    coeffs = [draw(st.integers(-6, 6)) for _ in range(n // 2 - 1)]
    psi = draw(st.integers(-4, 4))
    expr = symmetric_expression(SymmetricDivisor.build(n, coeffs))
    expr = DivisorExpression.build(n, [psi] * n, expr.boundary)
    pairs = list(combinations(range(1, n + 1), 2))
    weights = {p: draw(st.integers(-4, 4)) for p in pairs}
    return expr, Weighting.from_dict(n, weights)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(symmetric_inputs())
def test_criterion_11_keel_rewrite_invariance(data):
    expr, w = data
    assert to_symmetric_class(keel_rewrite(expr, w), strict=False) == to_symmetric_class(expr)
