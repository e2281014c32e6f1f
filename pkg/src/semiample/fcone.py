"""The symmetric F-cone and its extreme rays.

A symmetric divisor on the moduli space of n-pointed stable rational curves
is written ``sum a_r Delta_r`` with coordinates ``a_2 .. a_{n//2}``.  It lies
in the F-cone when every F-curve meets it non-negatively.  For a quadruple
``a <= b <= c <= d`` of positive integers summing to n that intersection is

    a_{a+b} + a_{a+c} + a_{b+c} - a_a - a_b - a_c - a_d

with ``a_0 = a_1 = 0`` and ``a_j = a_{n-j}``.

Extreme rays are computed with the double description method in exact
integer arithmetic.  Rays are primitive integer vectors; for a pointed cone
with all inequalities of the form ``row . x >= 0`` every ray is unique up to
positive scaling, so primitive normalisation makes them canonical.
"""

import csv
import json
import math
import os
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import NotPointed

SNAPSHOT_VERSION = 1


def fcurve_quadruples(n):
    """Quadruples ``a <= b <= c <= d`` of positive integers with sum ``n``."""
    out = []
    for a in range(1, n // 4 + 1):
        for b in range(a, (n - a) // 3 + 1):
            for c in range(b, (n - a - b) // 2 + 1):
                out.append((a, b, c, n - a - b - c))
    return out


def _column(n, j):
    j %= n
    j = min(j, n - j)
    return j - 2 if j >= 2 else None


def fcurve_row(n, quad):
    """Coefficient row of the F-inequality for ``quad`` in ``a_2..a_{n//2}``."""
    a, b, c, d = quad
    row = [0] * (n // 2 - 1)
    for j, sign in ((a + b, 1), (a + c, 1), (b + c, 1),
                    (a, -1), (b, -1), (c, -1), (d, -1)):
        k = _column(n, j)
        if k is not None:
            row[k] += sign
    return tuple(row)


def fcone_inequalities(n):
    """Distinct non-zero F-inequalities for the symmetric F-cone of size n.

    Each row ``r`` stands for ``r . (a_2, ..., a_{n//2}) >= 0``.  Rows are
    reduced to primitive form and duplicates removed, keeping the first
    occurrence in quadruple order.
    """
    if n < 5:
        raise ValueError("the symmetric F-cone needs n >= 5")
    seen = set()
    rows = []
    for quad in fcurve_quadruples(n):
        row = _primitive(fcurve_row(n, quad))
        if any(row) and row not in seen:
            seen.add(row)
            rows.append(row)
    return rows


def _primitive(vec):
    g = reduce(math.gcd, vec, 0)
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)


def _normalize_ray(vec):
    vec = _primitive(vec)
    for x in vec:
        if x:
            if x < 0:
                vec = tuple(-y for y in vec)
            break
    return vec


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _independent_rows(rows, dim):
    """Greedy maximal independent subset of ``rows`` (indices), exact."""
    basis = []      # reduced rows in echelon form: (pivot, row)
    chosen = []
    for idx, row in enumerate(rows):
        vec = [Fraction(x) for x in row]
        for pivot, brow in basis:
            if vec[pivot]:
                factor = vec[pivot] / brow[pivot]
                vec = [x - factor * y for x, y in zip(vec, brow)]
        pivot = next((k for k, x in enumerate(vec) if x), None)
        if pivot is not None:
            basis.append((pivot, vec))
            chosen.append(idx)
            if len(chosen) == dim:
                break
    return chosen


def _solve_unit(matrix, j):
    """Solve ``matrix . x = e_j`` exactly and return x scaled to integers."""
    dim = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j))]
           for i, row in enumerate(matrix)]
    for col in range(dim):
        piv = next(r for r in range(col, dim) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(dim):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    sol = [aug[r][dim] for r in range(dim)]
    den = reduce(lambda acc, x: acc * x.denominator // math.gcd(acc, x.denominator), sol, 1)
    return _primitive(tuple(int(x * den) for x in sol))


def _order(rows, order):
    if order == "zeros":
        return sorted(range(len(rows)), key=lambda i: (sum(1 for x in rows[i] if x == 0), i))
    if order == "given":
        return list(range(len(rows)))
    if order == "lex":
        return sorted(range(len(rows)), key=lambda i: rows[i])
    raise ValueError(f"unknown insertion order {order!r}")


def _words(masks, nwords):
    out = np.zeros((len(masks), nwords), dtype=np.uint64)
    lim = (1 << 64) - 1
    for i, m in enumerate(masks):
        for w in range(nwords):
            out[i, w] = (m >> (64 * w)) & lim
    return out


class _State:
    """Rays and their zero sets after processing a prefix of the inequalities."""

    def __init__(self, processed, rays, zeros):
        self.processed = processed   # row indices in processing order
        self.rays = rays             # list of integer tuples
        self.zeros = zeros           # list of int bitmasks over positions in `processed`


def _initial_state(rows, sequence, dim):
    ordered = [rows[i] for i in sequence]
    chosen = _independent_rows(ordered, dim)
    if len(chosen) < dim:
        raise NotPointed("the inequality system does not define a pointed cone")
    basis_rows = [ordered[i] for i in chosen]
    processed = [sequence[i] for i in chosen]
    full = (1 << dim) - 1
    rays, zeros = [], []
    for j in range(dim):
        rays.append(_solve_unit(basis_rows, j))
        zeros.append(full & ~(1 << j))
    return _State(processed, rays, zeros)


def _insert(state, row, dim):
    """Intersect the current cone with ``row . x >= 0``."""
    t = len(state.processed)
    bit = 1 << t
    vals = [_dot(row, r) for r in state.rays]
    pos = [i for i, v in enumerate(vals) if v > 0]
    neg = [i for i, v in enumerate(vals) if v < 0]
    new_rays, new_zeros = [], []
    for i, v in enumerate(vals):
        if v > 0:
            new_rays.append(state.rays[i])
            new_zeros.append(state.zeros[i])
        elif v == 0:
            new_rays.append(state.rays[i])
            new_zeros.append(state.zeros[i] | bit)
    if pos and neg:
        _combine(state, vals, pos, neg, dim, bit, new_rays, new_zeros)
    state.processed.append(None)  # placeholder replaced by caller
    state.rays, state.zeros = new_rays, new_zeros


def _combine(state, vals, pos, neg, dim, bit, new_rays, new_zeros):
    zeros = state.zeros
    nbits = len(state.processed)
    nwords = max(1, (nbits + 63) // 64)
    zw = _words(zeros, nwords)
    # ray_sets[j]: bitset over ray indices that vanish on processed row j
    ray_sets = [0] * nbits
    for idx, z in enumerate(zeros):
        flag = 1 << idx
        while z:
            low = z & -z
            ray_sets[low.bit_length() - 1] |= flag
            z ^= low
    neg_arr = np.asarray(neg, dtype=np.int64)
    neg_words = zw[neg_arr]
    need = dim - 2
    rays = state.rays
    everything = (1 << len(rays)) - 1
    block = 512
    for start in range(0, len(pos), block):
        chunk = pos[start:start + block]
        common = np.zeros((len(chunk), len(neg)), dtype=np.int64)
        for w in range(nwords):
            common += np.bitwise_count(zw[chunk, w][:, None] & neg_words[None, :, w]).astype(np.int64)
        for pi, qi in zip(*np.nonzero(common >= need)):
            p = chunk[pi]
            q = neg[qi]
            c = zeros[p] & zeros[q]
            target = (1 << p) | (1 << q)
            acc = everything
            while c:
                low = c & -c
                acc &= ray_sets[low.bit_length() - 1]
                if acc == target:
                    break
                c ^= low
            if acc != target:
                continue
            vp, vq = vals[p], vals[q]
            rp, rq = rays[p], rays[q]
            new_rays.append(_primitive(tuple(vp * y - vq * x for x, y in zip(rp, rq))))
            new_zeros.append((zeros[p] & zeros[q]) | bit)


def extreme_rays(inequalities, order="zeros", snapshot=None, resume=False, progress=None):
    """Extreme rays of the pointed cone ``{x : row . x >= 0 for every row}``.

    Parameters
    ----------
    inequalities : sequence of integer sequences
        All rows must have the same length.
    order : {"zeros", "given", "lex"}
        Insertion order.  ``"zeros"`` inserts rows with fewer zero
        coefficients first.
    snapshot : path, optional
        JSON file written after every insertion.  With ``resume=True`` an
        existing snapshot for the same input is loaded and the computation
        continues from it.
    progress : callable, optional
        Called as ``progress(done, total, nrays)`` after each insertion.

    Returns
    -------
    list of tuple of int
        Primitive rays, sorted lexicographically.

    Raises
    ------
    NotPointed
        If the rows do not have full rank.
    """
    rows = [tuple(int(x) for x in r) for r in inequalities]
    if not rows:
        raise NotPointed("no inequalities")
    dim = len(rows[0])
    sequence = _order(rows, order)
    state = None
    if snapshot and resume and os.path.exists(snapshot):
        state = _load_snapshot(snapshot, rows)
    if state is None:
        state = _initial_state(rows, sequence, dim)
    done = set(state.processed)
    remaining = [i for i in sequence if i not in done]
    total = len(rows)
    for idx in remaining:
        _insert(state, rows[idx], dim)
        state.processed[-1] = idx
        if snapshot:
            _write_snapshot(snapshot, rows, state)
        if progress:
            progress(len(state.processed), total, len(state.rays))
    return sorted(_normalize_ray(r) for r in state.rays)


def _fingerprint(rows):
    return [list(r) for r in rows]


def _write_snapshot(path, rows, state):
    data = {
        "version": SNAPSHOT_VERSION,
        "inequalities": _fingerprint(rows),
        "processed": state.processed,
        "rays": [list(r) for r in state.rays],
        "zeros": [format(z, "x") for z in state.zeros],
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh, sort_keys=True)
    os.replace(tmp, path)


def _load_snapshot(path, rows):
    with open(path) as fh:
        data = json.load(fh)
    if data.get("version") != SNAPSHOT_VERSION or data.get("inequalities") != _fingerprint(rows):
        return None
    return _State(list(data["processed"]),
                  [tuple(r) for r in data["rays"]],
                  [int(z, 16) for z in data["zeros"]])


def fcone_rays(n, **kwargs):
    """Extreme rays of the symmetric F-cone, as tuples ``(a_2, ..., a_{n//2})``."""
    return extreme_rays(fcone_inequalities(n), **kwargs)


def ray_counts(n, **kwargs):
    return len(fcone_rays(n, **kwargs))


def write_rays_csv(rays, path_or_file):
    """Write rays one per line as comma-separated integers."""
    def _write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        for ray in sorted(rays):
            writer.writerow(ray)
    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            _write(fh)


def read_rays_csv(path):
    with open(path, newline="") as fh:
        return [tuple(int(x) for x in row) for row in csv.reader(fh) if row]
