"""Weightings of the complete graph on ``1..n`` and effectivity checks.

A weighting assigns a rational weight ``w(i~j)`` to every edge.  The flow
across a partition ``I | J`` is ``w(I|J) = sum_{i in I, j in J} w(i~j)`` and
the flow through a vertex is ``w(i) = w({i} | rest)``.  A weighting is
effective for ``(f, d)`` when every vertex flow equals ``f(d_i)`` and every
partition flow is at least ``f(d(I))``.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DivisionByZero, NotBinary, SumNotZero
from .groupfn import SymmetricFunction, fnef_deficit, format_rational
from .lp import feasibility
from .quadforms import q_from_function
from .trees import CyclicOrdering, LabeledTree, binary_refinement, partition_sides, planar_orderings
from .verdict import failed, passed


def _pairs(n):
    return list(combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class Weighting:
    n: int
    weights: tuple   # aligned with combinations(1..n, 2)

    @classmethod
    def from_dict(cls, n, edges):
        w = {tuple(sorted(k)): Fraction(v) for k, v in edges.items()}
        return cls(n, tuple(w.get(p, Fraction(0)) for p in _pairs(n)))

    @classmethod
    def zero(cls, n):
        return cls(n, tuple(Fraction(0) for _ in _pairs(n)))

    def as_dict(self):
        return dict(zip(_pairs(self.n), self.weights))

    def w(self, i, j):
        if i == j:
            raise ValueError("no loops")
        i, j = min(i, j), max(i, j)
        n = self.n
        # index of (i, j) in lexicographic pair order
        idx = (i - 1) * (2 * n - i) // 2 + (j - i - 1)
        return self.weights[idx]

    def vertex_flow(self, i):
        return sum(self.w(i, j) for j in range(1, self.n + 1) if j != i)

    def flow(self, I):
        return partition_flow(self, I)

    def __add__(self, other):
        return Weighting(self.n, tuple(a + b for a, b in zip(self.weights, other.weights)))

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return Weighting(self.n, tuple(scalar * a for a in self.weights))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def to_json(self):
        edges = [[i, j, format_rational(x)] for (i, j), x in zip(_pairs(self.n), self.weights)]
        return json.dumps({"edges": edges, "n": self.n}, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls.from_dict(data["n"], {(i, j): Fraction(x) for i, j, x in data["edges"]})


def partition_flow(w, I):
    I = set(I)
    if not I or len(I) >= w.n or not I <= set(range(1, w.n + 1)):
        raise ValueError("I must be a non-empty proper subset of 1..n")
    J = [j for j in range(1, w.n + 1) if j not in I]
    return sum((w.w(i, j) for i in I for j in J), Fraction(0))


def block_sum(d, I, m):
    return sum(d[i - 1] for i in I) % m


# -- cyclic weightings --------------------------------------------------------

def _block_lengths(d, m):
    return [(x % m) or m for x in d]


def sigma_vector(m, d, sigma, I):
    """Residue profile of the blocks of I laid around an N-gon.

    Blocks of lengths ``<d_i>`` (``m`` when ``d_i = 0``) are placed on
    vertices ``1..N`` in the order given by ``sigma``; entry j counts the
    vertices of the blocks in I whose index is ``j mod m``.
    """
    lengths = _block_lengths(d, m)
    I = set(I)
    z = [0] * m
    pos = 1
    for label in sigma.order:
        ln = lengths[label - 1]
        if label in I:
            for v in range(pos, pos + ln):
                z[v % m] += 1
        pos += ln
    return tuple(z)


def _residue_profiles(d, m, sigma):
    lengths = _block_lengths(d, m)
    prof = {}
    pos = 1
    for label in sigma.order:
        c = [0] * m
        for v in range(pos, pos + lengths[label - 1]):
            c[v % m] += 1
        prof[label] = c
        pos += lengths[label - 1]
    return prof


def cyclic_weighting(f: SymmetricFunction, d, sigma: CyclicOrdering):
    """The weighting induced by ``-q_f`` on the N-gon, collapsed to blocks.

    Flows satisfy ``w(I|J) = Q_f(sigma_vector(m, d, sigma, I))``.

    Raises
    ------
    SumNotZero
        If ``sum(d)`` is not divisible by m.
    """
    m = f.modulus
    n = len(d)
    if sigma.n != n:
        raise ValueError("ordering and tuple sizes differ")
    if sum(d) % m:
        raise SumNotZero(f"sum of d is {sum(d)} which is not 0 mod {m}")
    q = q_from_function(f).generator
    prof = _residue_profiles(d, m, sigma)
    weights = []
    for i, j in _pairs(n):
        ci, cj = prof[i], prof[j]
        total = Fraction(0)
        for r, a in enumerate(ci):
            if a:
                for s, b in enumerate(cj):
                    if b:
                        total += a * b * q[(r - s) % m]
        weights.append(-total)
    return Weighting(n, tuple(weights))


def t_cyclic_weighting(f, d, tree):
    """Average of the cyclic weightings over the planar embeddings of a tree."""
    orders = planar_orderings(tree)
    total = Weighting.zero(len(d))
    for sigma in orders:
        total = total + cyclic_weighting(f, d, sigma)
    return total * Fraction(1, len(orders))


# -- democratic weighting -----------------------------------------------------

def democratic_weighting(values):
    """``w(i~j) = c_i + c_j`` with ``c_i = v_i/(n-2) - S/(2(n-1)(n-2))``.

    Here ``S = sum(values)``.  Vertex flows equal the given values.
    """
    v = [Fraction(x) for x in values]
    n = len(v)
    if n < 3:
        raise ValueError("need at least three vertices")
    total = sum(v)
    c = [x / (n - 2) - total / (2 * (n - 1) * (n - 2)) for x in v]
    return Weighting(n, tuple(c[i - 1] + c[j - 1] for i, j in _pairs(n)))


def democratic_flow(values, I, convention="exact"):
    """Flow of the democratic weighting across ``I | J`` in closed form.

    With ``k = |I|`` and ``S_I``, ``S_J`` the value sums of the two sides the
    flow is

        k(k-1)/((n-1)(n-2)) S_J + (n-k)(n-k-1)/((n-1)(n-2)) S_I.

    ``convention="displayed"`` replaces ``k(k-1)`` by ``k(k+1)``.  That
    variant is not a flow of any weighting (at ``k = 1`` it differs from the
    vertex flow); it is kept because published classification tables were
    computed with it.
    """
    v = [Fraction(x) for x in values]
    n = len(v)
    I = set(I)
    k = len(I)
    s_i = sum(v[i - 1] for i in I)
    s_j = sum(v) - s_i
    den = (n - 1) * (n - 2)
    if convention == "exact":
        a = k * (k - 1)
    elif convention == "displayed":
        a = k * (k + 1)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return Fraction(a, den) * s_j + Fraction((n - k) * (n - k - 1), den) * s_i


# -- tree weightings ----------------------------------------------------------

def build_tree_weighting(f: SymmetricFunction, d, tree: LabeledTree):
    """Recursive tree weighting: merge a cherry, solve the smaller problem,
    and split the merged vertex back.

    For a cherry ``x, y`` with ``a = d_x``, ``b = d_y``:

        w(x~y) = (f(a) + f(b) - f(a+b)) / 2
        w(x~i) = (f(a) - f(b) + f(a+b)) / (2 f(a+b)) * w0(z~i)
        w(y~i) = (f(b) - f(a) + f(a+b)) / (2 f(a+b)) * w0(z~i)

    so that the flow through x is ``f(a)`` and through y is ``f(b)``.  Trees
    with nodes of higher valence are first refined to binary trees.

    Raises
    ------
    DivisionByZero
        If some merge has ``f(a + b) = 0``.
    """
    n = tree.n
    if len(d) != n:
        raise ValueError("tuple length must match the tree")
    tree = binary_refinement(tree)
    adj = {k: set(v) for k, v in tree.adjacency().items()}
    values = {i: d[i - 1] for i in range(1, n + 1)}
    raw = _tree_weights(f, adj, values)
    return Weighting(n, tuple(raw[frozenset(p)] for p in _pairs(n)))


def _leaf(node):
    return not (isinstance(node, int) and node < 0)


def _tree_weights(f, adj, values):
    leaves = sorted((x for x in adj if _leaf(x)), key=repr)
    if len(leaves) == 3:
        out = {}
        for x, y in combinations(leaves, 2):
            a, b = values[x], values[y]
            out[frozenset((x, y))] = (f(a) + f(b) - f(a + b)) / 2
        return out
    if len(leaves) < 3:
        raise ValueError("need at least three leaves")
    # deterministic cherry: the internal node with two leaf neighbours whose
    # smallest leaf is least
    cherries = []
    for node in adj:
        if _leaf(node):
            continue
        ls = sorted((x for x in adj[node] if _leaf(x)), key=repr)
        if len(ls) >= 2:
            cherries.append((repr(ls[0]), node, ls[0], ls[1]))
    cherries.sort(key=lambda t: t[0])
    _, node, x, y = cherries[0]
    a, b = values[x], values[y]
    fab = f(a + b)
    if fab == 0:
        raise DivisionByZero(f"f({a} + {b}) = 0 at the merge of {x} and {y}")
    z = ("merge", x, y)
    sub = {k: set(v) for k, v in adj.items() if k not in (x, y)}
    sub[node] -= {x, y}
    other = sub.pop(node)
    (parent,) = other
    sub[parent].discard(node)
    sub[parent].add(z)
    sub[z] = {parent}
    # the parent may now have valence two if it was not a branching node
    sub_values = {k: v for k, v in values.items() if k not in (x, y)}
    sub_values[z] = a + b
    sub = _suppress(sub)
    w0 = _tree_weights(f, sub, sub_values)
    out = {}
    ax = (f(a) - f(b) + fab) / (2 * fab)
    ay = (f(b) - f(a) + fab) / (2 * fab)
    out[frozenset((x, y))] = (f(a) + f(b) - fab) / 2
    for key, val in w0.items():
        if z in key:
            (i,) = key - {z}
            out[frozenset((x, i))] = ax * val
            out[frozenset((y, i))] = ay * val
        else:
            out[key] = val
    return out


def _suppress(adj):
    for node in list(adj):
        if not _leaf(node) and len(adj[node]) == 2:
            u, v = adj.pop(node)
            adj[u].discard(node)
            adj[v].discard(node)
            adj[u].add(v)
            adj[v].add(u)
    return adj


# -- verification -------------------------------------------------------------

def verify_effectivity(w, f, d, tree=None, ordering=None):
    """Check a weighting against ``(f, d)``.

    Vertex flows must equal ``f(d_i)``; every partition flow must be at least
    ``f(d(I))``; with ``tree`` (resp. ``ordering``) the flows across
    T-partitions (resp. contiguous partitions) must be equalities.

    The witness is a dict with keys ``kind`` (``"vertex"``, ``"cut"`` or
    ``"equality"``), ``I`` (the side without n, or the vertex), ``flow`` and
    ``required``; partitions are scanned by size of I, then lexicographically.
    """
    n = w.n
    m = f.modulus
    if len(d) != n:
        raise ValueError("tuple length must match the weighting")
    for i in range(1, n + 1):
        flow = w.vertex_flow(i)
        need = f(d[i - 1])
        if flow != need:
            return failed({"kind": "vertex", "I": (i,), "flow": flow, "required": need})
    for I in partition_sides(n, 2):
        flow = partition_flow(w, I)
        need = f(block_sum(d, I, m))
        if flow < need:
            return failed({"kind": "cut", "I": I, "flow": flow, "required": need})
    tight = []
    if tree is not None:
        tight = tree.splits(internal_only=True)
    elif ordering is not None:
        tight = [I for I in ordering.contiguous_partitions() if 2 <= len(I) <= n - 2]
    for I in tight:
        flow = partition_flow(w, I)
        need = f(block_sum(d, I, m))
        if flow != need:
            return failed({"kind": "equality", "I": I, "flow": flow, "required": need})
    return passed()


def effectivity_oracle(f, d, tree=None, ordering=None):
    """Decide by exact linear programming whether some weighting is effective.

    Returns a passing verdict with the weighting in ``details["weighting"]``,
    or a failing one whose witness holds a Farkas certificate mapping
    constraint labels to multipliers.  For four points the F-curve triple
    with negative value, when there is one, is reported as well.
    """
    n = len(d)
    m = f.modulus
    pairs = _pairs(n)
    index = {p: k for k, p in enumerate(pairs)}

    def cut_row(I):
        row = [0] * len(pairs)
        J = [j for j in range(1, n + 1) if j not in I]
        for i in I:
            for j in J:
                row[index[(min(i, j), max(i, j))]] = 1
        return row

    eq_rows, eq_rhs, eq_labels = [], [], []
    for i in range(1, n + 1):
        eq_rows.append(cut_row((i,)))
        eq_rhs.append(f(d[i - 1]))
        eq_labels.append(("vertex", (i,)))
    tight = set()
    if tree is not None:
        tight = set(tree.splits(internal_only=True))
    elif ordering is not None:
        tight = {I for I in ordering.contiguous_partitions() if 2 <= len(I) <= n - 2}
    ge_rows, ge_rhs, ge_labels = [], [], []
    for I in partition_sides(n, 2):
        need = f(block_sum(d, I, m))
        if I in tight:
            eq_rows.append(cut_row(I))
            eq_rhs.append(need)
            eq_labels.append(("equality", I))
        else:
            ge_rows.append(cut_row(I))
            ge_rhs.append(need)
            ge_labels.append(("cut", I))
    result = feasibility(eq_rows, eq_rhs, ge_rows, ge_rhs, len(pairs))
    if result.feasible:
        return passed(weighting=Weighting(n, result.point))
    witness = {}
    if result.certificate is not None:
        y_eq, y_ge = result.certificate
        witness["certificate"] = {lab: y for lab, y in zip(eq_labels + ge_labels, y_eq + y_ge) if y}
    if n == 4:
        a, b, c = d[0], d[1], d[2]
        if fnef_deficit(f, a, b, c) < 0:
            witness["fcurve"] = (a % m, b % m, c % m)
    return failed(witness)
