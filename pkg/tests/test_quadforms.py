from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiample.errors import SymmetryViolation
from semiample.groupfn import make_symmetric_function, standard_function
from semiample.quadforms import (balanced_vector, canonical_vector, evaluate, form_from_generator,
                                 form_from_linear, indicator, is_balanced, is_ell_balanced,
                                 is_psd, is_weakly_balanced, min_on_zero_sum, named_form,
                                 parse_form, psd_reduction, q_from_function)


def expand(Q, x):
    """Direct double sum, independent of the lag-based evaluator."""
    m = Q.modulus
    return sum(Q.generator[(j - i) % m] * x[i] * x[j] for i in range(m) for j in range(m))


@st.composite
def generators(draw, max_m=6, lo=-4, hi=4):
    m = draw(st.integers(2, max_m))
    free = [draw(st.integers(lo, hi)) for _ in range(m // 2 + 1)]
    return form_from_generator(m, [free[min(a, m - a)] for a in range(m)])


def box_violators(Q, R):
    m = Q.modulus
    out = []
    for x in product(range(-R, R + 1), repeat=m):
        if expand(Q, x) < expand(Q, balanced_vector(m, sum(x))):
            out.append(x)
    return out


def test_generator_must_be_symmetric():
    with pytest.raises(SymmetryViolation):
        form_from_generator(4, [1, 2, 3, 4])


@settings(max_examples=60, deadline=None)
@given(generators(), st.data())
def test_evaluate_matches_expansion(Q, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=Q.modulus, max_size=Q.modulus))
    assert evaluate(Q, x) == expand(Q, x)


def test_contiguous_indicator_gives_f():
    for f in (standard_function("A", 7), standard_function("B", 8),
              make_symmetric_function(6, [0, 2, 5, 1, 5, 2])):
        Q = q_from_function(f)
        m = f.modulus
        for r in range(m + 1):
            assert evaluate(Q, indicator(m, range(r))) == f(r) - f(0)


def test_balanced_vector():
    assert balanced_vector(4, 6) == (2, 2, 1, 1)
    assert balanced_vector(3, -1) == (0, 0, -1)
    assert sum(balanced_vector(5, 13)) == 13


def test_named_forms():
    assert named_form("A", 4).generator == (1, 0, 0, 0)
    assert named_form("B", 6).generator == (3, -2, 1, 0, 1, -2)
    # direct expansion of sum (x_i - x_{i+1} + x_{i+2})^2
    Q = named_form("B", 7)
    x = (3, -1, 0, 2, 5, -2, 1)
    direct = sum((x[i] - x[(i + 1) % 7] + x[(i + 2) % 7]) ** 2 for i in range(7))
    assert evaluate(Q, x) == direct
    with pytest.raises(Exception):
        named_form("C", 4)


def test_form_from_linear_is_sum_of_squares():
    L = [1, 2, 0, -1, 1]
    Q = form_from_linear(5, L)
    x = (2, -1, 3, 0, 1)
    direct = sum(sum(L[j] * x[(i + j) % 5] for j in range(5)) ** 2 for i in range(5))
    assert evaluate(Q, x) == direct


@settings(max_examples=40, deadline=None)
@given(generators(), st.data())
def test_psd_reduction_constant_on_hyperplanes(Q, data):
    m = Q.modulus
    P = psd_reduction(Q)
    x = data.draw(st.lists(st.integers(-3, 3), min_size=m, max_size=m))
    n = sum(x)
    v = balanced_vector(m, n)
    assert evaluate(P, x) - m * evaluate(Q, x) == evaluate(P, v) - m * evaluate(Q, v)


def test_psd_reduction_of_a():
    # m Q_A + (m - 2) (sum x)^2 for the sum of squares
    assert is_psd(psd_reduction(named_form("A", 5)))


@pytest.mark.parametrize("m", range(2, 9))
def test_type_a_balanced(m):
    v = is_balanced(q_from_function(standard_function("A", m)))
    assert v.passed


@pytest.mark.parametrize("m,pattern", [
    (5, (-1, -1, 0, 1, 0)),
    (7, (-1, -1, 0, 1, 1, 1, 0)),
    (11, (-1, -1, 0, 1, 0, -1, -1, 0, 1, 1, 0)),
    (13, (-1, -1, 0, 1, 1, 1, 0, -1, -1, 0, 1, 1, 0)),
])
def test_b_unbalanced_with_periodic_witness(m, pattern):
    v = is_balanced(named_form("B", m))
    assert v.failed
    assert v.details["value"] == 1 and v.details["bound"] == 3
    assert v.witness == canonical_vector(pattern)
    assert evaluate(named_form("B", m), pattern) == 1


@pytest.mark.parametrize("m", [4, 6, 8, 9, 10, 12])
def test_b_balanced(m):
    assert is_balanced(named_form("B", m)).passed


@pytest.mark.parametrize("kind,m", [("C", 2), ("C", 6), ("C", 10), ("D", 1), ("D", 3), ("D", 5)])
def test_c_and_d_balanced(kind, m):
    assert is_balanced(named_form(kind, m)).passed


@settings(max_examples=40, deadline=None)
@given(generators(max_m=4, lo=-3, hi=3))
def test_balanced_agrees_with_box(Q):
    v = is_balanced(Q)
    found = box_violators(Q, 2)
    if v.passed:
        assert not found
    elif v.failed:
        w = v.witness
        assert evaluate(Q, w) < evaluate(Q, balanced_vector(Q.modulus, sum(w)))
    else:
        assert not found


def test_indefinite_form_fails():
    Q = form_from_generator(3, [-1, 0, 0])
    v = is_balanced(Q)
    assert v.failed
    assert evaluate(Q, v.witness) < 0


def brute_weakly(Q):
    m = Q.modulus
    for r in range(m + 1):
        target = evaluate(Q, balanced_vector(m, r))
        for S in combinations(range(m), r):
            if evaluate(Q, indicator(m, S)) < target:
                return False
    return True


@settings(max_examples=60, deadline=None)
@given(generators(max_m=7))
def test_weakly_balanced_matches_brute_force(Q):
    v = is_weakly_balanced(Q)
    assert v.passed == brute_weakly(Q)
    if v.failed:
        S = v.witness
        m = Q.modulus
        assert evaluate(Q, indicator(m, S)) < evaluate(Q, balanced_vector(m, len(S)))
        assert 0 in S


def test_balanced_implies_weakly_balanced():
    for m in range(4, 14):
        Q = named_form("B", m)
        if is_balanced(Q).passed:
            assert is_weakly_balanced(Q).passed


def test_ell_balanced():
    Q = named_form("B", 5)
    # the 0/1 box is exactly the weakly balanced condition
    assert is_ell_balanced(Q, 1).passed == is_weakly_balanced(Q).passed
    # the periodic witness shifted into [0, 2]^5
    assert evaluate(Q, (0, 0, 1, 2, 1)) == 4 < evaluate(Q, balanced_vector(5, 4)) == 6
    v = is_ell_balanced(Q, 2)
    assert v.failed and v.details["value"] == 4 and v.details["bound"] == 6


@settings(max_examples=30, deadline=None)
@given(generators(max_m=5))
def test_ell_one_is_weak_balance(Q):
    assert is_ell_balanced(Q, 1).passed == is_weakly_balanced(Q).passed


def test_min_on_zero_sum():
    Q = q_from_function(standard_function("A", 5))
    res = min_on_zero_sum(Q)
    assert res.status == "exact" and res.value == 10
    assert sum(res.vector) == 0
    flat = form_from_generator(3, [1, 1, 1])
    res = min_on_zero_sum(flat)
    assert res.status == "exact" and res.value == 0 and any(res.vector)
    res = min_on_zero_sum(form_from_generator(3, [-1, 0, 0]))
    assert res.status == "unbounded"


def test_parse_form():
    assert parse_form("5:4,-1,-1,-1,-1") == form_from_generator(5, [4, -1, -1, -1, -1])
    assert parse_form("2:1/2,3").generator == (Fraction(1, 2), 3)
