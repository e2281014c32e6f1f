"""Leaf-labelled trees and cyclic orderings.

Trees are unrooted, with leaves labelled ``1..n`` and unlabelled internal
nodes of valence at least three.  Internal nodes are represented by negative
integers.  A cyclic ordering is a bijection from the labels to the vertices
of an n-gon, up to rotation; reflections give distinct orderings.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import NotBinary


@dataclass(frozen=True)
class LabeledTree:
    n: int
    edges: frozenset   # frozenset of frozenset({u, v})

    @classmethod
    def from_edges(cls, n, edges):
        tree = cls(n, frozenset(frozenset(e) for e in edges))
        tree._validate()
        return tree

    def adjacency(self):
        adj = {}
        for e in self.edges:
            u, v = tuple(e)
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return {k: sorted(vs) for k, vs in adj.items()}

    def _validate(self):
        adj = self.adjacency()
        leaves = sorted(k for k in adj if k > 0)
        if leaves != list(range(1, self.n + 1)):
            raise ValueError("leaves must be labelled 1..n")
        if any(len(adj[k]) != 1 for k in leaves) and self.n > 2:
            raise ValueError("labelled vertices must be leaves")
        if any(len(adj[k]) < 3 for k in adj if k < 0):
            raise ValueError("internal nodes need valence at least 3")
        if len(self.edges) != len(adj) - 1:
            raise ValueError("not a tree")

    @property
    def internal_nodes(self):
        return sorted(k for k in self.adjacency() if k < 0)

    def is_binary(self):
        adj = self.adjacency()
        return all(len(adj[k]) == 3 for k in adj if k < 0)

    def splits(self, internal_only=False):
        """T-partitions as sorted tuples of the side not containing n."""
        adj = self.adjacency()
        out = set()
        for e in self.edges:
            u, v = tuple(e)
            side = _leaves_beyond(adj, u, v)
            if self.n in side:
                side = frozenset(range(1, self.n + 1)) - side
            if internal_only and (len(side) < 2 or self.n - len(side) < 2):
                continue
            out.add(tuple(sorted(side)))
        return sorted(out, key=lambda s: (len(s), s))

    def to_newick(self):
        adj = self.adjacency()
        if self.n <= 2:
            return "(" + ",".join(str(i) for i in range(1, self.n + 1)) + ");"
        root = adj[self.n][0]

        def render(node, parent):
            if node > 0:
                return str(node)
            kids = [k for k in adj[node] if k != parent]
            parts = sorted((render(k, node) for k in kids), key=_newick_key)
            return "(" + ",".join(parts) + ")"

        kids = sorted((render(k, root) for k in adj[root]), key=_newick_key)
        return "(" + ",".join(kids) + ");"

    def __str__(self):
        return self.to_newick()


def _newick_key(text):
    nums = [int(t) for t in text.replace("(", " ").replace(")", " ").replace(",", " ").split()]
    return min(nums)


def _leaves_beyond(adj, u, v):
    """Leaves reachable from v without crossing the edge u-v."""
    seen, stack, out = {u, v}, [v], set()
    while stack:
        x = stack.pop()
        if x > 0:
            out.add(x)
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(out)


def parse_newick(text):
    """Parse a Newick string such as ``((1,2),(3,4),5);``.

    Internal nodes of valence two (a binary root) are suppressed.
    """
    text = text.strip()
    if text.endswith(";"):
        text = text[:-1]
    pos = 0
    counter = [0]
    edges = []

    def fresh():
        counter[0] -= 1
        return counter[0]

    def parse():
        nonlocal pos
        if text[pos] == "(":
            pos += 1
            node = fresh()
            while True:
                child = parse()
                edges.append((node, child))
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == ")":
                    pos += 1
                    break
                raise ValueError(f"unexpected {text[pos]!r} in Newick string")
            return node
        start = pos
        while pos < len(text) and text[pos] not in ",()":
            pos += 1
        token = text[start:pos].strip()
        if not token.isdigit():
            raise ValueError(f"bad leaf label {token!r}")
        return int(token)

    root = parse()
    if pos != len(text):
        raise ValueError("trailing characters in Newick string")
    edges = _suppress_degree_two(edges)
    n = sum(1 for e in edges for x in e if x > 0)
    return LabeledTree.from_edges(n, _renumber(edges))


def _suppress_degree_two(edges):
    edges = [tuple(e) for e in edges]
    while True:
        deg = {}
        for u, v in edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        two = [x for x, d in deg.items() if x < 0 and d == 2]
        if not two:
            return edges
        x = two[0]
        nbrs = [v if u == x else u for u, v in edges if x in (u, v)]
        edges = [e for e in edges if x not in e] + [tuple(nbrs)]


def _renumber(edges):
    mapping, nxt = {}, 0
    out = []
    for u, v in edges:
        pair = []
        for x in (u, v):
            if x < 0:
                if x not in mapping:
                    nxt -= 1
                    mapping[x] = nxt
                x = mapping[x]
            pair.append(x)
        out.append(tuple(pair))
    return out


def star_tree(n):
    return LabeledTree.from_edges(n, [(-1, i) for i in range(1, n + 1)])


def caterpillar(n):
    """Binary caterpillar: a spine with cherries {1, 2} and {n-1, n}."""
    if n < 3:
        raise ValueError("need n >= 3")
    if n == 3:
        return star_tree(3)
    spine = [-k for k in range(1, n - 1)]
    edges = [(spine[0], 1), (spine[0], 2), (spine[-1], n - 1), (spine[-1], n)]
    edges += [(spine[k], k + 2) for k in range(1, n - 3)]
    edges += list(zip(spine, spine[1:]))
    return LabeledTree.from_edges(n, edges)


def all_binary_trees(n):
    """All unrooted binary trees on leaves ``1..n``; there are ``(2n-5)!!``."""
    if n < 3:
        raise ValueError("need n >= 3")
    trees = [[(-1, 1), (-1, 2), (-1, 3)]]
    for leaf in range(4, n + 1):
        grown = []
        node = -(leaf - 2)
        for edges in trees:
            for k, (u, v) in enumerate(edges):
                rest = edges[:k] + edges[k + 1:]
                grown.append(rest + [(u, node), (node, v), (node, leaf)])
        trees = grown
    return [LabeledTree.from_edges(n, e) for e in trees]


def binary_refinement(tree):
    """A binary tree whose splits contain those of ``tree``.

    Each node of valence ``k > 3`` is replaced by a comb of ``k - 2`` nodes.
    """
    if tree.is_binary():
        return tree
    adj = tree.adjacency()
    edges = [tuple(e) for e in tree.edges]
    fresh = min(adj) - 1
    for node in sorted(k for k in adj if k < 0):
        nbrs = adj[node]
        if len(nbrs) <= 3:
            continue
        edges = [e for e in edges if node not in e]
        edges += [(node, nbrs[0]), (node, nbrs[1])]
        prev = node
        for x in nbrs[2:-2]:
            edges += [(prev, fresh), (fresh, x)]
            prev, fresh = fresh, fresh - 1
        edges += [(prev, fresh), (fresh, nbrs[-2]), (fresh, nbrs[-1])]
        fresh -= 1
    return LabeledTree.from_edges(tree.n, edges)


@dataclass(frozen=True)
class CyclicOrdering:
    """Labels around an n-gon, stored rotated so label 1 comes first."""

    order: tuple

    @classmethod
    def of(cls, labels):
        labels = tuple(labels)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise ValueError("ordering must be a permutation of 1..n")
        k = labels.index(1)
        return cls(labels[k:] + labels[:k])

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self):
        return len(self.order)

    def reversed(self):
        return CyclicOrdering.of((self.order[0],) + tuple(reversed(self.order[1:])))

    def position(self, label):
        return self.order.index(label)

    def is_contiguous(self, subset):
        """Whether ``subset`` occupies a cyclic arc of the polygon."""
        subset = set(subset)
        n = self.n
        if not subset or len(subset) == n:
            return True
        inside = [self.order[p] in subset for p in range(n)]
        # count arcs = number of transitions from outside to inside
        starts = sum(1 for p in range(n) if inside[p] and not inside[p - 1])
        return starts == 1

    def contiguous_partitions(self):
        """Partitions ``I | J`` with both sides arcs, as the side without n."""
        n = self.n
        out = set()
        for start in range(n):
            for length in range(1, n):
                arc = frozenset(self.order[(start + k) % n] for k in range(length))
                if n in arc:
                    arc = frozenset(range(1, n + 1)) - arc
                out.add(tuple(sorted(arc)))
        return sorted(out, key=lambda s: (len(s), s))


def planar_orderings(tree):
    """Leaf orders of the planar embeddings of a binary tree.

    Embeddings that differ by a global reflection give the same weighting,
    so one representative of each pair is returned: ``2^(n-3)`` orderings
    for ``n >= 3``.
    """
    if not tree.is_binary():
        raise NotBinary("planar orderings are defined here for binary trees")
    n = tree.n
    if n < 3:
        return [CyclicOrdering.identity(n)]
    adj = tree.adjacency()
    root = adj[1][0]
    flippable = [v for v in sorted(adj) if v < 0 and v != root]
    seen, out = set(), []
    for bits in range(1 << len(flippable)):
        flip = {v for k, v in enumerate(flippable) if bits >> k & 1}
        order = [1]

        def walk(node, parent):
            if node > 0:
                order.append(node)
                return
            kids = [k for k in adj[node] if k != parent]
            if node in flip:
                kids = kids[::-1]
            for k in kids:
                walk(k, node)

        walk(root, 1)
        sigma = CyclicOrdering.of(order)
        key = min(sigma.order, sigma.reversed().order)
        if key not in seen:
            seen.add(key)
            out.append(sigma)
    return out


def partition_sides(n, min_size=1):
    """One side of every partition ``I | J`` of ``1..n``: the side without n.

    Only partitions with both sides of size at least ``min_size`` are
    listed, ordered by the size of I and then lexicographically.
    """
    for k in range(min_size, n - min_size + 1):
        yield from combinations(range(1, n), k)
