"""Divisor expressions on the moduli space of n-pointed rational curves.

A :class:`DivisorExpression` is a formal combination
``sum_k psi[k] psi_k + sum boundary[J] Delta_{I,J}`` over partitions with
both sides of size at least two.  Boundary keys are the sorted tuple of the
side containing label n.  Expressions are formal: two expressions may
differ by the Keel relations

    psi_i + psi_j = sum_{i in I, j in J} Delta_{I,J}

and still represent the same class.  A :class:`SymmetricDivisor` is a class
``sum_r a_r Delta_r`` in the symmetric part, with ``Delta_r`` the sum of the
boundary divisors having a side of size r.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .errors import NotSymmetric, SumNotZero, UnsupportedModulus
from .groupfn import (SymmetricFunction, _coefficients, fnef_deficit, format_rational,
                      p_from_coefficients)
from .trees import partition_sides
from .verdict import failed, passed


def boundary_key(n, side):
    """Canonical key of a partition: the sorted side containing n."""
    side = set(side)
    if n not in side:
        side = set(range(1, n + 1)) - side
    return tuple(sorted(side))


def other_side(n, key):
    return tuple(i for i in range(1, n + 1) if i not in key)


@dataclass(frozen=True)
class DivisorExpression:
    n: int
    psi: tuple
    boundary: dict = field(hash=False)

    @classmethod
    def build(cls, n, psi, boundary=None):
        psi = tuple(Fraction(x) for x in psi)
        if len(psi) != n:
            raise ValueError(f"expected {n} psi coefficients")
        clean = {}
        for side, coef in (boundary or {}).items():
            coef = Fraction(coef)
            key = boundary_key(n, side)
            if len(key) < 2 or n - len(key) < 2:
                raise ValueError(f"partition {side} has a side of size < 2")
            if coef:
                clean[key] = clean.get(key, Fraction(0)) + coef
        return cls(n, psi, {k: v for k, v in clean.items() if v})

    def coefficient(self, side):
        return self.boundary.get(boundary_key(self.n, side), Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, DivisorExpression) and self.n == other.n
                and self.psi == other.psi and self.boundary == other.boundary)

    def __add__(self, other):
        total = dict(self.boundary)
        for k, v in other.boundary.items():
            total[k] = total.get(k, Fraction(0)) + v
        return DivisorExpression.build(self.n, [a + b for a, b in zip(self.psi, other.psi)], total)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return DivisorExpression.build(self.n, [scalar * a for a in self.psi],
                                       {k: scalar * v for k, v in self.boundary.items()})

    __rmul__ = __mul__

    def is_boundary(self):
        return all(x == 0 for x in self.psi)

    def is_effective_boundary(self):
        return self.is_boundary() and all(v >= 0 for v in self.boundary.values())

    def to_json_obj(self):
        return {
            "boundary": {",".join(map(str, k)): format_rational(v) for k, v in sorted(self.boundary.items())},
            "n": self.n,
            "psi": [format_rational(x) for x in self.psi],
        }


def parasymmetric(f: SymmetricFunction, d):
    """``sum f(d_i) psi_i - sum f(d(I)) Delta_{I,J}``."""
    n = len(d)
    m = f.modulus
    _check_sum(d, m)
    psi = [f(x) for x in d]
    boundary = {}
    for I in partition_sides(n, 2):
        val = f(sum(d[i - 1] for i in I) % m)
        if val:
            boundary[boundary_key(n, I)] = -val
    return DivisorExpression.build(n, psi, boundary)


def _check_sum(d, m):
    if sum(d) % m:
        raise SumNotZero(f"sum of d is {sum(d)}, not 0 mod {m}")


def fcurve_intersection(f, sums):
    """Intersection with the F-curve whose four blocks have sums A, B, C, D.

    Equals ``f(A) + f(B) + f(C) + f(D) - f(A+B) - f(A+C) - f(B+C)`` with
    ``D = -(A + B + C)``.
    """
    a, b, c = sums
    return fnef_deficit(f, a, b, c)


def _reachable_block_sums(d, m):
    """Sums ``(A, B, C)`` of the first three blocks over all ordered
    partitions of the points into four non-empty blocks."""
    # state[mask, A, B, C]; mask records which blocks are non-empty
    state = np.zeros((16, m, m, m), dtype=bool)
    state[0, 0, 0, 0] = True
    for x in d:
        x %= m
        new = np.zeros_like(state)
        for mask in range(16):
            cur = state[mask]
            if not cur.any():
                continue
            new[mask | 1] |= np.roll(cur, x, axis=0)
            new[mask | 2] |= np.roll(cur, x, axis=1)
            new[mask | 4] |= np.roll(cur, x, axis=2)
            new[mask | 8] |= cur
        state = new
    return [tuple(int(t) for t in idx) for idx in np.argwhere(state[15])]


def is_fnef_divisor(f, d):
    """Check every F-curve of the moduli space against ``parasymmetric(f, d)``.

    The value on an F-curve only depends on the four block sums, so the
    achievable sums are computed by dynamic programming over the points.
    The witness is the lexicographically least failing ``(A, B, C)``.
    """
    m = f.modulus
    if len(d) < 4:
        return passed()
    for sums in sorted(_reachable_block_sums(d, m)):
        val = fcurve_intersection(f, sums)
        if val < 0:
            return failed(sums, value=val)
    return passed()


def keel_rewrite(D, w):
    """Subtract ``sum w(i~j) (psi_i + psi_j - sum Delta)``.

    The new psi coefficients are ``psi_k - w(k)`` and every boundary
    coefficient gains the flow ``w(I|J)``.  The class is unchanged.
    """
    n = D.n
    if w.n != n:
        raise ValueError("weighting and divisor sizes differ")
    psi = [D.psi[k - 1] - w.vertex_flow(k) for k in range(1, n + 1)]
    boundary = dict(D.boundary)
    for I in partition_sides(n, 2):
        key = boundary_key(n, I)
        boundary[key] = boundary.get(key, Fraction(0)) + w.flow(I)
    return DivisorExpression.build(n, psi, boundary)


@dataclass(frozen=True)
class SymmetricDivisor:
    n: int
    coeffs: tuple   # a_2 .. a_{n//2}

    @classmethod
    def build(cls, n, coeffs):
        return cls(n, _coefficients(n, coeffs))

    def a(self, r):
        r %= self.n
        r = min(r, self.n - r)
        return self.coeffs[r - 2] if r >= 2 else Fraction(0)

    def p(self):
        return p_from_coefficients(self.n, self.coeffs)

    def __add__(self, other):
        return SymmetricDivisor(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return SymmetricDivisor(self.n, tuple(scalar * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coeffs)

    def __str__(self):
        return format_divisor(self)


def partitions_of_type(n, r):
    """Number of boundary divisors with a side of size r."""
    return comb(n, r) // 2 if 2 * r == n else comb(n, r)


def to_symmetric_class(D, strict=True):
    """The symmetric class of D.

    With ``strict`` the expression itself must be symmetric: constant psi
    and boundary coefficients depending only on the size of the smaller
    side; otherwise :class:`NotSymmetric` is raised.  With ``strict=False``
    the average over all relabellings is returned; this is well defined on
    classes because relabelling permutes the Keel relations.

    In both cases ``a_r`` is the boundary part plus ``psi * r(n-r)/(n-1)``,
    from summing the Keel relations over all pairs.
    """
    n = D.n
    h = n // 2
    totals = {r: Fraction(0) for r in range(2, h + 1)}
    values = {r: set() for r in range(2, h + 1)}
    for I in partition_sides(n, 2):
        r = min(len(I), n - len(I))
        c = D.coefficient(I)
        totals[r] += c
        values[r].add(c)
    if strict:
        if len(set(D.psi)) > 1:
            raise NotSymmetric("psi coefficients are not constant")
        bad = [r for r, vs in values.items() if len(vs) > 1]
        if bad:
            raise NotSymmetric(f"boundary coefficients of size {bad[0]} differ")
    psi_mean = sum(D.psi) / n
    coeffs = [totals[r] / partitions_of_type(n, r) + psi_mean * Fraction(r * (n - r), n - 1)
              for r in range(2, h + 1)]
    return SymmetricDivisor(n, tuple(coeffs))


def symmetric_expression(D: SymmetricDivisor):
    """The expression ``sum_r a_r Delta_r`` with no psi part."""
    n = D.n
    boundary = {}
    for I in partition_sides(n, 2):
        boundary[boundary_key(n, I)] = D.a(len(I))
    return DivisorExpression.build(n, [0] * n, boundary)


def psi_minus_delta(n):
    """``psi - Delta``: coefficients ``(i(n-i) - (n-1)) / (n-1)``."""
    return SymmetricDivisor(n, tuple(Fraction(i * (n - i) - (n - 1), n - 1) for i in range(2, n // 2 + 1)))


@dataclass(frozen=True)
class BoundaryFactor:
    """One factor of a boundary stratum: the points of one side followed by
    the attaching point, which carries the sum of the other side."""

    labels: tuple
    d: tuple

    @property
    def attach(self):
        return self.d[-1]


def restrict_to_boundary(f, d, I):
    """Factor data for ``parasymmetric(f, d)`` restricted to ``Delta_{I,J}``."""
    n = len(d)
    m = f.modulus
    _check_sum(d, m)
    I = sorted(set(I))
    J = [j for j in range(1, n + 1) if j not in I]
    if len(I) < 2 or len(J) < 2:
        raise ValueError("both sides need at least two points")
    sum_i = sum(d[i - 1] for i in I) % m
    sum_j = sum(d[j - 1] for j in J) % m
    left = BoundaryFactor(tuple(I) + ("p",), tuple(d[i - 1] % m for i in I) + (sum_j,))
    right = BoundaryFactor(tuple(J) + ("q",), tuple(d[j - 1] % m for j in J) + (sum_i,))
    return left, right


def restrict_divisor(D, I):
    """Pull back an expression to ``Delta_{I,J} = M(I+p) x M(J+q)``.

    Uses ``psi_i -> psi_i`` on its factor, ``Delta_{A, rest}`` with A strictly
    inside one side becoming the boundary divisor of that factor, and
    ``-Delta_{I,J} -> psi_p (x) psi_q``.  Other boundary divisors restrict
    to zero.  Factors are labelled by the side's points in order and then
    the attaching point.
    """
    n = D.n
    I = sorted(set(I))
    J = [j for j in range(1, n + 1) if j not in I]
    own = D.coefficient(I)
    factors = []
    for side in (I, J):
        k = len(side) + 1
        local = {lab: pos + 1 for pos, lab in enumerate(side)}
        psi = [D.psi[lab - 1] for lab in side] + [-own]
        boundary = {}
        for key, coef in D.boundary.items():
            for part in (key, other_side(n, key)):
                if set(part) < set(side):
                    loc = tuple(local[x] for x in part)
                    boundary[boundary_key(k, loc)] = boundary.get(boundary_key(k, loc), 0) + coef
        factors.append(DivisorExpression.build(k, psi, boundary) if k >= 4 else
                       DivisorExpression.build(k, psi, {}))
    return tuple(factors)


def parse_divisor(text):
    """Parse ``n:a2,a3,...`` into a symmetric divisor."""
    head, sep, body = text.partition(":")
    if not sep:
        raise ValueError(f"literal {text!r} is missing ':'")
    n = int(head)
    if n < 4:
        raise UnsupportedModulus("symmetric divisors need n >= 4")
    vals = [Fraction(v.strip()) for v in body.split(",")] if body.strip() else []
    return SymmetricDivisor.build(n, vals)


def format_divisor(D):
    return f"{D.n}:" + ",".join(format_rational(a) for a in D.coeffs)
