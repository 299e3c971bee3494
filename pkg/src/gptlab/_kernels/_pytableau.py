"""Pure-Python simplex tableau kernel.

Rows are lists of Python ints; ``dens[i]`` is the positive denominator shared
by every entry of row ``i``, so the true tableau entry is ``rows[i][j] /
dens[i]``. Keeping one denominator per row avoids a gcd per entry, and rows
with a zero in the pivot column are left untouched.

This module and ``_ctableau.pyx`` must stay behaviourally identical.
"""

from math import gcd

OPTIMAL = 0
UNBOUNDED = 1


def pivot(rows, dens, r, c):
    """Pivot the tableau in place on entry ``(r, c)``."""
    prow = rows[r]
    p = prow[c]
    if p < 0:
        prow = [-x for x in prow]
        p = -p
    g = gcd(*prow)
    if g != 1:
        prow = [x // g for x in prow]
        p //= g
    rows[r] = prow
    dens[r] = p
    for i in range(len(rows)):
        if i == r:
            continue
        row = rows[i]
        f = row[c]
        if not f:
            continue
        new = [x * p - f * y for x, y in zip(row, prow)]
        den = dens[i] * p
        g = gcd(den, *new)
        if g != 1:
            new = [x // g for x in new]
            den //= g
        rows[i] = new
        dens[i] = den


def bland(rows, dens, basis, m, obj, allowed):
    """Run primal simplex iterations with Bland's rule until termination.

    ``rows[:m]`` are constraint rows, ``rows[obj]`` is the priced objective
    row (maximisation, entering columns have a negative entry). The last
    column holds the right-hand side. Returns OPTIMAL or UNBOUNDED.
    """
    rhs = len(rows[0]) - 1
    while True:
        z = rows[obj]
        j = -1
        for k in range(rhs):
            if z[k] < 0 and allowed[k]:
                j = k
                break
        if j < 0:
            return OPTIMAL
        r = -1
        best_b = 0
        best_a = 1
        for i in range(m):
            row = rows[i]
            a = row[j]
            if a > 0:
                b = row[rhs]
                if r < 0:
                    r, best_b, best_a = i, b, a
                else:
                    lhs = b * best_a
                    cur = best_b * a
                    if lhs < cur or (lhs == cur and basis[i] < basis[r]):
                        r, best_b, best_a = i, b, a
        if r < 0:
            return UNBOUNDED
        pivot(rows, dens, r, j)
        basis[r] = j
