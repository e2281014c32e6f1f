"""Exact linear feasibility by phase-one simplex with Bland's rule.

The system is ``E x = e``, ``G x >= g`` over free rational variables.  A
feasible point or a Farkas certificate is returned; both are checked exactly
before they are handed back.
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    point: tuple = None          # x when feasible
    certificate: tuple = None    # (y_eq, y_ge) when infeasible


def feasibility(eq_rows, eq_rhs, ge_rows, ge_rhs, nvars):
    """Decide whether ``{x : E x = e, G x >= g}`` is non-empty."""
    eq_rows = [[Fraction(a) for a in r] for r in eq_rows]
    ge_rows = [[Fraction(a) for a in r] for r in ge_rows]
    eq_rhs = [Fraction(b) for b in eq_rhs]
    ge_rhs = [Fraction(b) for b in ge_rhs]
    n_eq, n_ge = len(eq_rows), len(ge_rows)
    rows = n_eq + n_ge
    # columns: u (nvars), v (nvars), surplus (n_ge), artificial (rows)
    ncols = 2 * nvars + n_ge + rows
    signs = []
    tableau = []
    for i, (coeffs, rhs) in enumerate(list(zip(eq_rows, eq_rhs)) + list(zip(ge_rows, ge_rhs))):
        row = [Fraction(0)] * (ncols + 1)
        for j, a in enumerate(coeffs):
            row[j] = a
            row[nvars + j] = -a
        if i >= n_eq:
            row[2 * nvars + (i - n_eq)] = Fraction(-1)
        row[ncols] = rhs
        sign = -1 if rhs < 0 else 1
        if sign < 0:
            row = [-x for x in row]
        row[2 * nvars + n_ge + i] = Fraction(1)
        signs.append(sign)
        tableau.append(row)
    basis = [2 * nvars + n_ge + i for i in range(rows)]
    cost = [Fraction(0)] * (2 * nvars + n_ge) + [Fraction(1)] * rows

    def reduced(j):
        return cost[j] - sum(cost[basis[i]] * tableau[i][j] for i in range(rows))

    while True:
        entering = next((j for j in range(ncols) if reduced(j) < 0), None)
        if entering is None:
            break
        best, leave = None, None
        for i in range(rows):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:   # cannot happen: phase one is bounded below by 0
            break
        _pivot(tableau, leave, entering)
        basis[leave] = entering
    objective = sum(cost[basis[i]] * tableau[i][ncols] for i in range(rows))
    if objective == 0:
        x = [Fraction(0)] * (2 * nvars)
        for i, b in enumerate(basis):
            if b < 2 * nvars:
                x[b] = tableau[i][ncols]
        point = tuple(x[j] - x[nvars + j] for j in range(nvars))
        return LPResult(True, point=point)
    # dual of phase one: y = c_B B^{-1}, read off the artificial columns
    art = 2 * nvars + n_ge
    y = [sum(cost[basis[i]] * tableau[i][art + k] for i in range(rows)) for k in range(rows)]
    y = [yk * s for yk, s in zip(y, signs)]
    cert = (tuple(y[:n_eq]), tuple(y[n_eq:]))
    if not check_certificate(eq_rows, eq_rhs, ge_rows, ge_rhs, cert):
        cert = None
    return LPResult(False, certificate=cert)


def _pivot(tableau, r, c):
    p = tableau[r][c]
    pivot_row = [x / p for x in tableau[r]]
    tableau[r] = pivot_row
    nz = [j for j, x in enumerate(pivot_row) if x]
    for i, row in enumerate(tableau):
        if i != r:
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * pivot_row[j]


def check_certificate(eq_rows, eq_rhs, ge_rows, ge_rhs, cert):
    """Farkas check: ``y_E E + y_G G = 0``, ``y_G >= 0``, ``y_E e + y_G g > 0``."""
    y_eq, y_ge = cert
    if any(y < 0 for y in y_ge):
        return False
    nvars = len((eq_rows or ge_rows)[0])
    for j in range(nvars):
        total = sum(y * r[j] for y, r in zip(y_eq, eq_rows)) + sum(y * r[j] for y, r in zip(y_ge, ge_rows))
        if total != 0:
            return False
    return sum(y * b for y, b in zip(y_eq, eq_rhs)) + sum(y * b for y, b in zip(y_ge, ge_rhs)) > 0
