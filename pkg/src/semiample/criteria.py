"""Sufficient criteria for semiampleness of symmetric boundary divisors.

Each test takes a :class:`SymmetricDivisor` ``D = sum a_r Delta_r`` and
returns a :class:`CriterionReport`.  The three divisor tests are

* :func:`cyclic_semiample_test`: for every subset S of ``Z_n``

      2 a_|S| + sum_{i, j in S} (2 a_{i-j} - a_{i-j+1} - a_{i-j-1}) >= 0,

  which is weak balancedness of the quadratic form of ``p_D``;
* :func:`second_criterion_test`: positivity, subadditivity and a quadratic
  inequality for ``f = lambda A_n + p_D``;
* :func:`democratic_test`: every democratic weighting of every multiset
  ``d_1 + ... + d_k = n`` is effective for ``f``.

:func:`semiample_test` runs all three over the extremal rays of the
symmetric F-cone.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np

from .divisors import (SymmetricDivisor, keel_rewrite, parasymmetric, symmetric_expression)
from .errors import (BudgetExceeded, ConditionDaggerFails, Inconclusive, NonzeroAtZero,
                     ResourceLimit, UnsupportedModulus)
from .fcone import fcone_rays
from .groupfn import (SymmetricFunction, associated_fnef_function, lambda_fnef, m_of, tilde)
from .quadforms import (_chunks, _lex_least, is_balanced, is_weakly_balanced, lag_counts,
                        mask_to_tuple, min_on_zero_sum, q_from_function)
from .trees import all_binary_trees, planar_orderings
from .verdict import FAIL, INCONCLUSIVE, PASS
from .weightings import cyclic_weighting

MAX_CYCLIC_N = 26
MAX_CERTIFICATE_N = 11
MAX_TABLE_N = 20


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    verdict: str
    witness: Any = None
    certificate: Any = None
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.verdict == FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self):
        return self.verdict == PASS

    @property
    def failed(self):
        return self.verdict == FAIL

    def __bool__(self):
        return self.passed

    def to_json_obj(self):
        out = {"criterion": self.criterion, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    return x


def _check_n(D, low=5):
    if D.n < low:
        raise UnsupportedModulus(f"need n >= {low}, got {D.n}")


def _lcm_den(values):
    den = 1
    for v in values:
        den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    return den


# -- cyclic criterion -----------------------------------------------------------

def _cyclic_coefficients(D):
    """Integer vectors ``(c, t)`` with LHS(S) = lags(S) . c + t[|S|], up to scale."""
    n = D.n
    den = _lcm_den(D.coeffs)
    a = [int(D.a(r) * den) for r in range(n + 1)]
    c = [2 * a[k % n] - a[(k + 1) % n] - a[(k - 1) % n] for k in range(n)]
    t = [2 * a[s % n] for s in range(n + 1)]
    return c, t


def _interval_mask(masks, n):
    """Whether each mask is a cyclic interval of ``Z_n`` (or empty/full)."""
    full = np.uint64((1 << n) - 1)
    m = masks.astype(np.uint64)
    rot = ((m << np.uint64(1)) | (m >> np.uint64(n - 1))) & full
    starts = np.bitwise_count(m & ~rot)
    return (starts <= 1)


def cyclic_scan(divisors):
    """Run the cyclic criterion on several divisors with one subset scan.

    Returns one report per divisor.  All divisors must share n.
    """
    if not divisors:
        return []
    n = divisors[0].n
    if any(D.n != n for D in divisors):
        raise ValueError("divisors must share n")
    _check_n(divisors[0])
    if n > MAX_CYCLIC_N:
        raise ResourceLimit(f"cyclic scan is limited to n <= {MAX_CYCLIC_N}")
    cols = [_cyclic_coefficients(D) for D in divisors]
    C = np.array([c for c, _ in cols], dtype=np.int64).T          # n x R
    T = np.array([t for _, t in cols], dtype=np.int64).T          # (n+1) x R
    if np.abs(C).max(initial=0) * n * n + np.abs(T).max(initial=0) >= 1 << 62:
        raise OverflowError("coefficients too large for the integer scan")
    R = len(divisors)
    best = [None] * R            # (size, mask)
    tight = np.zeros(R, dtype=np.int64)
    tight_open = np.zeros(R, dtype=np.int64)
    for masks in _chunks(n):
        lags = lag_counts(masks, n)
        sizes = lags[:, 0]
        vals = lags @ C + T[sizes]
        interval = _interval_mask(masks, n)
        zero = vals == 0
        tight += zero.sum(axis=0)
        tight_open += (zero & ~interval[:, None]).sum(axis=0)
        neg = vals < 0
        for r in np.flatnonzero(neg.any(axis=0)):
            bad = masks[neg[:, r]]
            bad_sizes = sizes[neg[:, r]]
            size = int(bad_sizes.min())
            mask = _lex_least(bad[bad_sizes == size], n)
            cand = (size, mask_to_tuple(mask))
            if best[r] is None or cand < best[r]:
                best[r] = cand
    reports = []
    for r, D in enumerate(divisors):
        details = {"tight": int(tight[r]), "tight_non_interval": int(tight_open[r])}
        if best[r] is None:
            reports.append(CriterionReport("cyclic", PASS, details=details))
        else:
            S = best[r][1]
            reports.append(CriterionReport("cyclic", FAIL, witness=S,
                                           details={**details, "value": cyclic_lhs(D, S)}))
    return reports


def cyclic_lhs(D, S):
    """``2 a_|S| + sum_{i,j in S} (2 a_{i-j} - a_{i-j+1} - a_{i-j-1})``."""
    a = D.a
    return 2 * a(len(S)) + sum(2 * a(i - j) - a(i - j + 1) - a(i - j - 1) for i in S for j in S)


def cyclic_semiample_test(D: SymmetricDivisor):
    """The cyclic criterion over all subsets S of ``Z_n``.

    Subsets are normalised to contain 0.  The witness is the least failing
    S by size, then lexicographically.  ``details`` counts the tight
    subsets and how many of those are not cyclic intervals.
    """
    return cyclic_scan([D])[0]


# -- second criterion -----------------------------------------------------------

def second_criterion_inequality(f, a, b, A, B):
    """Slack of the quadratic inequality for ``a + b + A + B = n``.

    ``(f(b) - f(a) + f(a+b)) f(A) + (f(a) - f(b) + f(a+b)) f(B)
    + (f(a) + f(b) - f(a+b)) f(a+b) - 2 f(B+b) f(a+b)``.
    """
    s = f(a + b)
    return ((f(b) - f(a) + s) * f(A) + (f(a) - f(b) + s) * f(B)
            + (f(a) + f(b) - s) * s - 2 * f(B + b) * s)


def _second_for_lambda(D, lam):
    n = D.n
    f = associated_fnef_function(n, D.coeffs, lam)
    for r in range(n):
        if f(r) < 0:
            return ("negative", (r,))
    for x in range(n + 1):
        for y in range(n + 1 - x):
            if f(x) + f(y) < f(x + y):
                return ("subadditivity", (x, y))
    for a in range(n + 1):
        for b in range(n + 1 - a):
            for A in range(n + 1 - a - b):
                B = n - a - b - A
                if second_criterion_inequality(f, a, b, A, B) < 0:
                    return ("quadratic", (a, b, A, B))
    return None


def second_criterion_test(D: SymmetricDivisor, lambdas=None):
    """Test ``f = lambda A_n + p_D`` for each lambda (default: the least
    F-nef one).  Values below that bound are skipped and reported."""
    _check_n(D)
    floor = lambda_fnef(D.n, D.coeffs)
    lambdas = [floor] if lambdas is None else [Fraction(x) for x in lambdas]
    skipped, first = [], None
    for lam in lambdas:
        if lam < floor:
            skipped.append(lam)
            continue
        bad = _second_for_lambda(D, lam)
        if bad is None:
            return CriterionReport("second", PASS, details={"lambda": lam, "skipped": skipped})
        if first is None:
            first = (lam,) + bad
    if first is None:
        return CriterionReport("second", FAIL, witness=("skipped", tuple(skipped)),
                               details={"lambda_fnef": floor, "skipped": skipped})
    lam, kind, where = first
    return CriterionReport("second", FAIL, witness=(kind, where),
                           details={"lambda": lam, "skipped": skipped})


# -- democratic test ------------------------------------------------------------

def _partitions(n, k, largest=None):
    """Partitions of n into exactly k parts, non-increasing, lex ascending."""
    largest = n if largest is None else largest
    if k == 0:
        if n == 0:
            yield ()
        return
    lo = -(-n // k)
    for first in range(lo, min(n - k + 1, largest) + 1):
        for rest in _partitions(n - first, k - 1, first):
            yield (first,) + rest


def _sub_multisets(part):
    """Proper non-empty sub-multisets, as non-decreasing tuples ordered by
    size and then lexicographically."""
    values = sorted(set(part))
    counts = [part.count(v) for v in values]
    out = []

    def rec(i, acc):
        if i == len(values):
            if 0 < len(acc) < len(part):
                out.append(tuple(acc))
            return
        for c in range(counts[i] + 1):
            rec(i + 1, acc + [values[i]] * c)

    rec(0, [])
    return sorted(out, key=lambda t: (len(t), t))


def _coefficient(k, K, convention):
    if convention == "exact":
        return k * (k - 1)
    if convention == "displayed":
        return k * (k + 1)
    raise ValueError(f"unknown convention {convention!r}")


@lru_cache(maxsize=32)
def democratic_rows(n, convention="displayed"):
    """Constraint rows of the democratic test on ``n`` points.

    Row ``r`` says ``rows[r] . (f(0), ..., f(n // 2)) >= 0``; it is the
    inequality ``flow >= f(d(I))`` multiplied by ``(K-1)(K-2)``.  Only the
    first occurrence of each row is kept and ``labels[r]`` is its
    ``(d, I)`` in enumeration order: K ascending, then ``d`` and ``I`` in
    the orders of :func:`_partitions` and :func:`_sub_multisets`.
    """
    h = n // 2
    seen, rows, labels = set(), [], []

    def fold(x):
        x %= n
        return min(x, n - x)

    for K in range(4, n + 1):
        den = (K - 1) * (K - 2)
        for part in _partitions(n, K):
            for I in _sub_multisets(part):
                J = list(part)
                for x in I:
                    J.remove(x)
                k = len(I)
                row = [0] * (h + 1)
                cj = _coefficient(k, K, convention)
                ci = (K - k) * (K - k - 1)
                for x in J:
                    row[fold(x)] += cj
                for x in I:
                    row[fold(x)] += ci
                row[fold(sum(I))] -= den
                key = tuple(row)
                if key not in seen:
                    seen.add(key)
                    rows.append(row)
                    labels.append((part, I))
    return np.array(rows, dtype=np.int64).reshape(-1, h + 1), tuple(labels)


def democratic_lambda_interval(D, convention="displayed"):
    """All lambda for which ``lambda A_n + p_D`` is non-negative and passes
    the democratic test, as ``(low, high)`` (``None`` bounds are infinite),
    or ``None`` when no lambda works."""
    n = D.n
    rows, _ = democratic_rows(n, convention)
    A = [Fraction(r * (n - r)) for r in range(n // 2 + 1)]
    p = [-D.a(r) for r in range(n // 2 + 1)]
    cons = [(A[r], p[r]) for r in range(1, n // 2 + 1)]
    for row in rows.tolist():
        cons.append((sum(c * x for c, x in zip(row, A)), sum(c * x for c, x in zip(row, p))))
    low = high = None
    for sa, sc in cons:       # sa * lam + sc >= 0
        if sa > 0:
            v = -sc / sa
            low = v if low is None else max(low, v)
        elif sa < 0:
            v = -sc / sa
            high = v if high is None else min(high, v)
        elif sc < 0:
            return None
    if low is not None and high is not None and low > high:
        return None
    return low, high


def democratic_test(D: SymmetricDivisor, f=None, convention="displayed", search=False):
    """Democratic weightings for every multiset ``d_1 + ... + d_K = n``.

    ``f`` defaults to the associated F-nef function of D.  For ``K <= 3``
    every cut is a vertex cut and the test is automatic.

    ``convention="displayed"`` uses ``k(k+1)`` in place of ``k(k-1)`` in
    the closed-form flow (see :func:`~semiample.weightings.democratic_flow`);
    this reproduces the reference classification counts but is not a flow
    of a weighting, so a pass is not a certificate.  ``"exact"`` is the
    sound test.  With ``search`` a failing default is retried over every
    admissible lambda.
    """
    _check_n(D)
    n = D.n
    if f is None:
        f = associated_fnef_function(n, D.coeffs)
    elif f.modulus != n:
        raise ValueError("f must live on Z_n")
    details = {"convention": convention, "sound": convention == "exact"}
    neg = [r for r in range(1, n) if f(r) < 0]
    report = None
    if neg:
        report = CriterionReport("democratic", FAIL, witness=("negative", (neg[0],)), details=details)
    else:
        rows, labels = democratic_rows(n, convention)
        vals = [f(r) for r in range(n // 2 + 1)]
        den = _lcm_den(vals)
        fv = [int(v * den) for v in vals]
        if len(rows) and np.abs(rows).max() * max(map(abs, fv), default=0) * len(fv) < 1 << 62:
            slack = rows @ np.array(fv, dtype=np.int64)
            bad = np.flatnonzero(slack < 0)
            first = int(bad[0]) if len(bad) else None
        else:
            first = next((i for i, row in enumerate(rows.tolist())
                          if sum(c * x for c, x in zip(row, fv)) < 0), None)
        if first is None:
            return CriterionReport("democratic", PASS, details=details)
        d, I = labels[first]
        report = CriterionReport("democratic", FAIL, witness=(d, I), details=details)
    if search:
        interval = democratic_lambda_interval(D, convention)
        if interval is not None:
            low, high = interval
            lam = low if low is not None else (high if high is not None else Fraction(0))
            return CriterionReport("democratic", PASS, details={**details, "lambda": lam})
    return report


# -- effectivity via balancedness ----------------------------------------------

def _require_zero_at_zero(f):
    if f(0) != 0:
        raise NonzeroAtZero(f"f(0) = {f(0)}")


def weak_cyclic_effectivity(f: SymmetricFunction):
    """Weak cyclic effectivity of f, decided by weak balancedness of ``Q_f``."""
    _require_zero_at_zero(f)
    v = is_weakly_balanced(q_from_function(f))
    return CriterionReport("weak-cyclic-effectivity", v.status, witness=v.witness, details=dict(v.details))


def cyclic_effectivity(f: SymmetricFunction, budget=None):
    """Cyclic effectivity of f, decided by balancedness of ``Q_f``."""
    _require_zero_at_zero(f)
    kwargs = {} if budget is None else {"budget": budget}
    v = is_balanced(q_from_function(f), **kwargs)
    return CriterionReport("cyclic-effectivity", v.status, witness=v.witness, details=dict(v.details))


def new_nef_divisor(f: SymmetricFunction, d, assume_cyclic=False, budget=None):
    """``parasymmetric(tilde(f), d)`` with a report on its hypotheses.

    The hypotheses are: f is cyclically effective (skipped with
    ``assume_cyclic``) and the minimum of ``Q_f`` on non-zero integer
    vectors of sum zero is at least ``m(f)``.  A failing cyclic check gives
    a failing report; a failing minimum raises
    :class:`ConditionDaggerFails`.
    """
    m = f.modulus
    if m < 3:
        raise UnsupportedModulus("need m >= 3")
    _require_zero_at_zero(f)
    expr = parasymmetric(tilde(f), d)
    if not assume_cyclic:
        rep = cyclic_effectivity(f, budget)
        if rep.verdict == INCONCLUSIVE:
            raise Inconclusive(rep.details.get("reason", "balancedness undecided"))
        if rep.failed:
            return expr, CriterionReport("new-nef", FAIL, witness=rep.witness,
                                         details={"stage": "cyclic-effectivity"})
    bound = m_of(f)
    kwargs = {} if budget is None else {"budget": budget}
    low = min_on_zero_sum(q_from_function(f), **kwargs)
    if low.status == "inconclusive":
        raise Inconclusive("minimum on the zero-sum lattice not determined")
    if low.status == "unbounded":
        raise ConditionDaggerFails(low.vector, None, bound)
    if low.value < bound:
        raise ConditionDaggerFails(low.vector, low.value, bound)
    return expr, CriterionReport("new-nef", PASS, certificate=low.vector,
                                 details={"minimum": low.value, "m": bound})


# -- certificates ---------------------------------------------------------------

def _double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def iter_certificates(D: SymmetricDivisor, max_n=MAX_CERTIFICATE_N):
    """Yield ``(tree, ordering, weighting, representative)`` per binary tree.

    The representative is ``2D`` rewritten with the cyclic weighting of
    ``2 p_D`` for a planar ordering of the tree.  Each one is checked: no
    psi part, non-negative boundary coefficients vanishing on the tree's
    internal splits, and rewriting back gives ``2D``.
    """
    _check_n(D)
    n = D.n
    if n > max_n:
        raise BudgetExceeded(_double_factorial(2 * n - 5),
                             f"{_double_factorial(2 * n - 5)} trees exceed the limit n <= {max_n}")
    f = 2 * D.p()
    two_d = parasymmetric(f, (1,) * n)
    target = symmetric_expression(2 * D)
    if two_d != target:
        raise AssertionError("2D does not match its boundary expression")
    for tree in all_binary_trees(n):
        sigma = planar_orderings(tree)[0]
        w = cyclic_weighting(f, (1,) * n, sigma)
        rep = keel_rewrite(two_d, w)
        if not rep.is_effective_boundary():
            raise AssertionError(f"representative for {tree} is not effective; "
                                 "D fails the cyclic criterion")
        if any(rep.coefficient(s) for s in tree.splits(internal_only=True)):
            raise AssertionError(f"representative for {tree} meets its own stratum")
        if keel_rewrite(rep, -w) != two_d:
            raise AssertionError("rewriting back does not reproduce 2D")
        yield tree, sigma, w, rep


def emit_certificates(D: SymmetricDivisor, max_n=MAX_CERTIFICATE_N):
    """Boundary representatives of ``2D``, one per binary tree.

    Requires D to pass :func:`cyclic_semiample_test`.
    """
    rep = cyclic_semiample_test(D)
    if not rep.passed:
        raise ValueError(f"D fails the cyclic criterion at S = {rep.witness}")
    return [cert for *_, cert in iter_certificates(D, max_n)]


# -- classification -------------------------------------------------------------

@dataclass(frozen=True)
class RayRecord:
    ray: tuple
    category: str            # "cyclic", "second", "democratic" or "open"
    reports: tuple


@dataclass(frozen=True)
class ClassificationRow:
    n: int
    records: tuple

    @property
    def counts(self):
        cats = [r.category for r in self.records]
        return (len(cats), cats.count("cyclic"), cats.count("second"), cats.count("democratic"))

    def to_json_obj(self):
        rays, cyc, sec, dem = self.counts
        return {
            "counts": {"cyclic": cyc, "democratic": dem, "rays": rays, "second": sec},
            "n": self.n,
            "rays": [{"category": r.category, "ray": list(r.ray),
                      "reports": [x.to_json_obj() for x in r.reports]} for r in self.records],
        }


def _classify_rest(args):
    n, ray, convention = args
    D = SymmetricDivisor.build(n, ray)
    second = second_criterion_test(D)
    if second.passed:
        return "second", (second,)
    dem = democratic_test(D, convention=convention)
    return ("democratic" if dem.passed else "open"), (second, dem)


def semiample_test(n, jobs=1, convention="displayed", max_n=MAX_TABLE_N, rays=None):
    """Classify the extremal rays of the symmetric F-cone of ``n`` points.

    Each ray goes to the first of the cyclic, second and democratic tests
    that it passes, or to ``"open"``.
    """
    if n < 5:
        raise UnsupportedModulus("need n >= 5")
    if n > max_n:
        raise ResourceLimit(f"classification is limited to n <= {max_n}")
    rays = fcone_rays(n) if rays is None else [tuple(r) for r in rays]
    divisors = [SymmetricDivisor.build(n, r) for r in rays]
    cyclic = cyclic_scan(divisors)
    rest = [(n, tuple(r), convention) for r, c in zip(rays, cyclic) if not c.passed]
    if jobs > 1 and len(rest) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            outcomes = list(pool.map(_classify_rest, rest))
    else:
        outcomes = [_classify_rest(x) for x in rest]
    outcomes = iter(outcomes)
    records = []
    for r, c in zip(rays, cyclic):
        if c.passed:
            records.append(RayRecord(tuple(r), "cyclic", (c,)))
        else:
            cat, reps = next(outcomes)
            records.append(RayRecord(tuple(r), cat, (c,) + reps))
    return ClassificationRow(n, tuple(records))

