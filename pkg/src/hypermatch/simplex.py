"""Dense exact-rational simplex with Bland's anti-cycling rule.

Everything runs over ``fractions.Fraction``: no floating point touches any
certificate.  Two entry points cover the shapes needed here:

* :func:`max_leq` -- maximize c.x subject to Ax <= b, x >= 0 with b >= 0,
  returning the optimum together with the dual vector read off the final
  tableau.
* :func:`min_geq` -- minimize c.x subject to Ax >= b, x >= 0 via a two-phase
  solve with artificial variables, likewise returning primal and dual.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class SimplexError(RuntimeError):
    """Internal LP failure (unbounded or infeasible model)."""


def _pivot(rows, obj, basis, r, c):
    piv = rows[r][c]
    inv = ONE / piv
    rows[r] = [x * inv for x in rows[r]]
    prow = rows[r]
    for i, row in enumerate(rows):
        if i != r and row[c] != 0:
            f = row[c]
            rows[i] = [x - f * p for x, p in zip(row, prow)]
    if obj[c] != 0:
        f = obj[c]
        for j in range(len(obj)):
            obj[j] -= f * prow[j]
    basis[r] = c


def _bland_min(rows, obj, basis, allowed):
    """Run minimizing pivots until all allowed reduced costs are >= 0."""
    ncols = len(obj) - 1
    while True:
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return
        best_ratio = None
        leave = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leave]
                ):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            raise SimplexError("unbounded linear program")
        _pivot(rows, obj, basis, leave, enter)


def max_leq(c, a_rows, b):
    """max c.x, Ax <= b, x >= 0, b >= 0.  Returns (value, x, duals)."""
    m = len(a_rows)
    n = len(c)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise SimplexError("max_leq requires b >= 0")
    ncols = n + m
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in a_rows[i]] + [ZERO] * m + [b[i]]
        row[n + i] = ONE
        rows.append(row)
    basis = [n + i for i in range(m)]
    # minimize -c.x
    obj = [-v for v in c] + [ZERO] * m + [ZERO]
    allowed = [True] * ncols
    _bland_min(rows, obj, basis, allowed)
    x = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rows[i][-1]
    value = obj[-1]  # = c.x at the optimum of min(-c.x)
    duals = [obj[n + i] for i in range(m)]
    return value, x, duals


def min_geq(c, a_rows, b):
    """min c.x, Ax >= b, x >= 0, b >= 0.  Returns (value, x, duals)."""
    m = len(a_rows)
    n = len(c)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise SimplexError("min_geq requires b >= 0")
    # columns: n structural | m surplus | m artificial
    ncols = n + 2 * m
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in a_rows[i]] + [ZERO] * (2 * m) + [b[i]]
        row[n + i] = -ONE
        row[n + m + i] = ONE
        rows.append(row)
    basis = [n + m + i for i in range(m)]

    # phase 1: drive the artificial variables to zero
    obj1 = [ZERO] * (ncols + 1)
    for j in range(ncols):
        obj1[j] = (ONE if n + m <= j < n + 2 * m else ZERO) - sum(r[j] for r in rows)
    obj1[-1] = -sum(r[-1] for r in rows)
    allowed = [True] * ncols
    _bland_min(rows, obj1, basis, allowed)
    if obj1[-1] != 0:
        raise SimplexError("infeasible linear program")
    # pivot any artificial still basic (at zero) out, or drop a redundant row
    keep = []
    for i in range(m):
        if basis[i] >= n + m:
            col = next((j for j in range(n + m) if rows[i][j] != 0), None)
            if col is None:
                continue  # redundant constraint
            _pivot(rows, obj1, basis, i, col)
        keep.append(i)
    rows = [rows[i] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2: the real objective, artificial columns barred
    allowed = [j < n + m for j in range(ncols)]
    obj = [ZERO] * (ncols + 1)
    for j in range(ncols):
        cj = c[j] if j < n else ZERO
        obj[j] = cj - sum(c[basis[i]] * rows[i][j] for i in range(len(rows)) if basis[i] < n)
    obj[-1] = -sum(c[basis[i]] * rows[i][-1] for i in range(len(rows)) if basis[i] < n)
    _bland_min(rows, obj, basis, allowed)
    x = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rows[i][-1]
    value = -obj[-1]
    duals = [ZERO] * m
    for i in range(m):
        duals[i] = obj[n + i]
    return value, x, duals
