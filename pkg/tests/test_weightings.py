import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiample.errors import DivisionByZero, SumNotZero
from semiample.groupfn import is_fnef, make_symmetric_function, standard_function
from semiample.quadforms import q_from_function
from semiample.trees import CyclicOrdering, all_binary_trees, caterpillar, parse_newick
from semiample.weightings import (Weighting, build_tree_weighting, cyclic_weighting,
                                  democratic_flow, democratic_weighting, effectivity_oracle,
                                  partition_flow, sigma_vector, verify_effectivity)


def gon_profile(m, d, order, I):
    """Residues mod m of the polygon vertices covered by the blocks in I."""
    z = [0] * m
    v = 0
    for label in order:
        length = d[label - 1] % m or m
        for _ in range(length):
            v += 1
            if label in I:
                z[v % m] += 1
    return z


def form_value(f, x):
    Q = q_from_function(f)
    m = f.modulus
    return sum(Q.generator[(j - i) % m] * x[i] * x[j] for i in range(m) for j in range(m))


def random_case(rng, max_m=6, max_n=8):
    m = rng.randint(2, max_m)
    n = rng.randint(3, max_n)
    free = [rng.randint(-4, 4) for _ in range(m // 2 + 1)]
    f = make_symmetric_function(m, [free[min(a, m - a)] for a in range(m)])
    d = [rng.randrange(m) for _ in range(n - 1)]
    d.append(-sum(d) % m)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return f, d, CyclicOrdering.of(order)


def test_weighting_indexing_and_flows():
    w = Weighting.from_dict(4, {(1, 2): 1, (3, 4): 2, (1, 3): Fraction(1, 2)})
    assert w.w(2, 1) == 1 and w.w(1, 4) == 0
    assert w.vertex_flow(1) == Fraction(3, 2)
    assert partition_flow(w, (1, 2)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        w.w(2, 2)
    with pytest.raises(ValueError):
        partition_flow(w, (1, 2, 3, 4))


def test_json_round_trip():
    w = Weighting.from_dict(5, {(1, 2): Fraction(-3, 7), (2, 5): 4})
    assert Weighting.from_json(w.to_json()) == w


def test_sigma_vector_matches_polygon():
    rng = random.Random(7)
    for _ in range(50):
        f, d, sigma = random_case(rng)
        n = len(d)
        I = rng.sample(range(1, n + 1), rng.randint(1, n - 1))
        assert list(sigma_vector(f.modulus, d, sigma, I)) == gon_profile(f.modulus, d, sigma.order, set(I))


def test_cyclic_weighting_flows():
    rng = random.Random(11)
    for _ in range(60):
        f, d, sigma = random_case(rng)
        w = cyclic_weighting(f, d, sigma)
        n = len(d)
        for k in range(1, n):
            for I in combinations(range(1, n + 1), k):
                assert w.flow(I) == form_value(f, gon_profile(f.modulus, d, sigma.order, set(I)))


def test_cyclic_weighting_vertex_and_contiguous():
    f = standard_function("A", 5)
    d = (1, 2, 3, 4)
    sigma = CyclicOrdering.identity(4)
    w = cyclic_weighting(f, d, sigma)
    assert verify_effectivity(w, f, d, ordering=sigma).passed


def test_cyclic_weighting_needs_zero_sum():
    with pytest.raises(SumNotZero):
        cyclic_weighting(standard_function("A", 5), (1, 1, 1), CyclicOrdering.identity(3))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-10, 10), min_size=3, max_size=8))
def test_democratic_weighting(values):
    w = democratic_weighting(values)
    n = len(values)
    for i in range(1, n + 1):
        assert w.vertex_flow(i) == values[i - 1]
    for k in range(1, n):
        for I in combinations(range(1, n + 1), k):
            assert w.flow(I) == democratic_flow(values, I)


def test_displayed_democratic_variant():
    values = [3, 5, 7, 11]
    # at |I| = 1 the displayed coefficient no longer gives the vertex flow
    assert democratic_flow(values, (1,), "exact") == 3
    assert democratic_flow(values, (1,), "displayed") != 3
    # it exceeds the true flow by 2k S_J / ((n-1)(n-2))
    for I in [(1, 2), (1,), (2, 3, 4)]:
        k = len(I)
        s_j = sum(v for i, v in enumerate(values, 1) if i not in I)
        extra = Fraction(2 * k * s_j, 3 * 2)
        assert democratic_flow(values, I, "displayed") - democratic_flow(values, I) == extra
    with pytest.raises(ValueError):
        democratic_flow(values, (1,), "other")


def test_tree_weighting_caterpillar():
    f = standard_function("A", 5)
    d = (1, 1, 1, 1, 1)
    w = build_tree_weighting(f, d, caterpillar(5))
    assert [w.vertex_flow(i) for i in range(1, 6)] == [4] * 5
    assert w.flow((1, 2)) == 6
    assert verify_effectivity(w, f, d, tree=caterpillar(5)).passed


@pytest.mark.parametrize("m", [5, 6, 7])
def test_tree_weighting_is_tree_effective(m):
    f = standard_function("A", m)
    rng = random.Random(m)
    for tree in rng.sample(all_binary_trees(6), 15):
        d = [rng.randrange(1, m) for _ in range(5)]
        d.append(-sum(d) % m)
        try:
            w = build_tree_weighting(f, d, tree)
        except DivisionByZero:
            continue
        for i in range(1, 7):
            assert w.vertex_flow(i) == f(d[i - 1])
        for split in tree.splits(internal_only=True):
            assert w.flow(split) == f(sum(d[i - 1] for i in split))


def test_tree_weighting_division_by_zero():
    f = standard_function("A", 4)
    with pytest.raises(DivisionByZero):
        build_tree_weighting(f, (2, 2, 1, 3), parse_newick("((1,2),3,4);"))


def test_verify_effectivity_witnesses():
    f = standard_function("A", 4)
    d = (1, 1, 1, 1)
    v = verify_effectivity(Weighting.zero(4), f, d)
    assert v.failed and v.witness["kind"] == "vertex" and v.witness["I"] == (1,)
    # vertex flows right, one cut too small
    w = Weighting.from_dict(4, {(1, 2): 3, (3, 4): 3})
    v = verify_effectivity(w, f, d)
    assert v.witness == {"kind": "cut", "I": (1, 2), "flow": 0, "required": 4}


def test_oracle_b5_infeasible():
    v = effectivity_oracle(standard_function("B", 5), (2, 2, 2, 4))
    assert v.failed
    assert v.witness["fcurve"] == (2, 2, 2)


def test_oracle_feasible_weighting_verifies():
    f = standard_function("A", 5)
    d = (1, 2, 3, 4, 0)
    v = effectivity_oracle(f, d)
    assert v.passed
    assert verify_effectivity(v.details["weighting"], f, d).passed


def test_oracle_agrees_with_fnef_on_four_points():
    rng = random.Random(3)
    for _ in range(30):
        m = rng.randint(2, 5)
        free = [rng.randint(-2, 2) for _ in range(m // 2 + 1)]
        f = make_symmetric_function(m, [free[min(a, m - a)] for a in range(m)])
        ok = all(effectivity_oracle(f, (a, b, c, -(a + b + c) % m)).passed
                 for a in range(m) for b in range(a, m) for c in range(b, m))
        assert ok == is_fnef(f).passed
