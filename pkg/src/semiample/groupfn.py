"""Symmetric functions on the cyclic group Z_m.

A symmetric function is a map ``f : Z_m -> Q`` with ``f(-a) = f(a)``.  Values
are exact :class:`fractions.Fraction` objects and indices wrap modulo m, so
``f(-1)`` and ``f(m - 1)`` are the same value.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import SymmetryViolation, UnsupportedModulus
from .verdict import failed, passed


@dataclass(frozen=True)
class SymmetricFunction:
    modulus: int
    values: tuple

    def __call__(self, k):
        return self.values[k % self.modulus]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return self.modulus

    def _check_same(self, other):
        if not isinstance(other, SymmetricFunction) or other.modulus != self.modulus:
            raise TypeError("functions must share a modulus")

    def __add__(self, other):
        self._check_same(other)
        return SymmetricFunction(self.modulus, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check_same(other)
        return SymmetricFunction(self.modulus, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return SymmetricFunction(self.modulus, tuple(-a for a in self.values))

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return SymmetricFunction(self.modulus, tuple(scalar * a for a in self.values))

    __rmul__ = __mul__

    def with_value(self, k, value):
        vals = list(self.values)
        vals[k % self.modulus] = Fraction(value)
        return make_symmetric_function(self.modulus, vals)

    def __str__(self):
        return format_function(self)


def make_symmetric_function(m, values):
    """Build a symmetric function on Z_m from its values at ``0 .. m-1``.

    Raises
    ------
    SymmetryViolation
        With ``.index`` set to the smallest ``a`` where ``f(a) != f(-a)``.
    """
    if m < 1:
        raise UnsupportedModulus(f"modulus must be positive, got {m}")
    vals = tuple(Fraction(v) for v in values)
    if len(vals) != m:
        raise ValueError(f"expected {m} values, got {len(vals)}")
    for a in range(m):
        if vals[a] != vals[-a % m]:
            raise SymmetryViolation(a)
    return SymmetricFunction(m, vals)


def standard_function(kind, m):
    """The functions ``A_m``, ``B_m`` and ``E_m``.

    ``A_m(i) = <i><m - i>`` where ``<i>`` is the representative in
    ``[0, m)``.  ``B_m`` agrees with ``A_m`` except at ``+-1`` where it takes
    the value ``3m - 1``; ``E_m`` agrees with ``A_m`` except ``E_m(0) = m``.
    """
    if m < 1:
        raise UnsupportedModulus(f"modulus must be positive, got {m}")
    vals = [Fraction(i * (m - i)) for i in range(m)]
    if kind == "A":
        pass
    elif kind == "B":
        if m < 3:
            raise UnsupportedModulus("B_m needs m >= 3")
        vals[1] = vals[m - 1] = Fraction(3 * m - 1)
    elif kind == "E":
        vals[0] = Fraction(m)
    else:
        raise ValueError(f"unknown standard function {kind!r}")
    return SymmetricFunction(m, tuple(vals))


def fnef_deficit(f, a, b, c):
    """``f(a)+f(b)+f(c)+f(a+b+c) - f(a+b) - f(a+c) - f(b+c)``."""
    return f(a) + f(b) + f(c) + f(a + b + c) - f(a + b) - f(a + c) - f(b + c)


def is_fnef(f):
    """Check the F-nef inequality for every triple in Z_m.

    Returns a passing verdict or one whose witness is the lexicographically
    least violating triple ``(a, b, c)`` with entries in ``[0, m)``.
    """
    m = f.modulus
    for a, b, c in product(range(m), repeat=3):
        if fnef_deficit(f, a, b, c) < 0:
            return failed((a, b, c), deficit=fnef_deficit(f, a, b, c))
    return passed()


def d_f(f, a, b):
    """``f(a) + f(b) - f(a + b)``; non-negative for F-nef f."""
    return f(a) + f(b) - f(a + b)


def m_of(f):
    """``min (2 f(a) + 2 f(b) - f(a + b) - f(a - b)) / 2`` over non-zero a, b.

    Pairs with a zero entry contribute ``f(0)`` at most and are left out; for
    ``A_m`` the value is m.  On the trivial group the value is ``f(0)``.
    """
    m = f.modulus
    if m == 1:
        return f(0)
    return min(2 * f(a) + 2 * f(b) - f(a + b) - f(a - b)
               for a in range(1, m) for b in range(1, m)) / 2


def tilde(f):
    """``f`` with its value at 0 replaced by ``m(f)``."""
    return f.with_value(0, m_of(f))


def p_from_coefficients(n, coeffs):
    """The function ``p_D`` on Z_n attached to ``D = sum a_r Delta_r``.

    ``coeffs`` lists ``a_2, ..., a_{n//2}``; ``p_D(0) = p_D(1) = 0`` and
    ``p_D(r) = -a_r``.
    """
    coeffs = _coefficients(n, coeffs)
    vals = [Fraction(0)] * n
    for r, a in enumerate(coeffs, start=2):
        vals[r] = vals[n - r] = -a
    return SymmetricFunction(n, tuple(vals))


def _coefficients(n, coeffs):
    if n < 4:
        raise UnsupportedModulus("symmetric divisors need n >= 4")
    coeffs = tuple(Fraction(a) for a in coeffs)
    if len(coeffs) != n // 2 - 1:
        raise ValueError(f"expected {n // 2 - 1} coefficients a_2..a_{n // 2}, got {len(coeffs)}")
    return coeffs


def lambda_fnef(n, coeffs):
    """Least ``lambda`` making ``lambda * A_n + p_D`` F-nef.

    The maximum, over ``a, b, c, d`` in ``[1, n-1]`` with sum ``2n``, of

        (p(a+b) + p(a+c) + p(b+c) - p(a) - p(b) - p(c) - p(d))
        / (2n * min(a, b, c, d, n-a, n-b, n-c, n-d))
    """
    p = p_from_coefficients(n, coeffs)
    best = None
    for a in range(1, n):
        for b in range(1, n):
            for c in range(1, n):
                d = 2 * n - a - b - c
                if not 1 <= d <= n - 1:
                    continue
                num = p(a + b) + p(a + c) + p(b + c) - p(a) - p(b) - p(c) - p(d)
                den = 2 * n * min(a, b, c, d, n - a, n - b, n - c, n - d)
                val = num / den
                if best is None or val > best:
                    best = val
    return best


def associated_fnef_function(n, coeffs, lam=None):
    """``f_D = lambda * A_n + p_D`` with ``lambda = lambda_fnef`` by default.

    The result is F-nef whenever D is F-nef.
    """
    if lam is None:
        lam = lambda_fnef(n, coeffs)
    return Fraction(lam) * standard_function("A", n) + p_from_coefficients(n, coeffs)


def parse_function(text):
    """Parse the literal ``m:v0,v1,...,v_{m-1}`` (values may be ``p/q``)."""
    m, vals = _split_literal(text)
    return make_symmetric_function(m, vals)


def format_function(f):
    return f"{f.modulus}:" + ",".join(format_rational(v) for v in f.values)


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _split_literal(text):
    head, sep, body = text.partition(":")
    if not sep:
        raise ValueError(f"literal {text!r} is missing ':'")
    m = int(head)
    vals = [Fraction(v.strip()) for v in body.split(",")] if body.strip() else []
    return m, vals
