# cython: language_level=3
"""Compiled simplex tableau kernel (same contract as ``_pytableau``).

Entries stay Python ints, so arithmetic is still arbitrary precision; the
gain comes from typed loop indices, list access without bounds checks, and
no interpreter dispatch in the pivot and ratio-test loops.
"""

from math import gcd

cdef int _OPTIMAL = 0
cdef int _UNBOUNDED = 1

OPTIMAL = _OPTIMAL
UNBOUNDED = _UNBOUNDED


cpdef void pivot(list rows, list dens, Py_ssize_t r, Py_ssize_t c):
    cdef list prow = <list>rows[r]
    cdef list row, new
    cdef object p = prow[c]
    cdef object f, g, den
    cdef Py_ssize_t i, j, n = len(prow), nrows = len(rows)
    if p < 0:
        prow = [-x for x in prow]
        p = -p
    g = gcd(*prow)
    if g != 1:
        prow = [x // g for x in prow]
        p = p // g
    rows[r] = prow
    dens[r] = p
    for i in range(nrows):
        if i == r:
            continue
        row = <list>rows[i]
        f = row[c]
        if not f:
            continue
        new = [None] * n
        for j in range(n):
            new[j] = row[j] * p - f * prow[j]
        den = dens[i] * p
        g = gcd(den, *new)
        if g != 1:
            for j in range(n):
                new[j] = new[j] // g
            den = den // g
        rows[i] = new
        dens[i] = den


cpdef int bland(list rows, list dens, list basis, Py_ssize_t m, Py_ssize_t obj,
                list allowed):
    cdef Py_ssize_t rhs = len(<list>rows[0]) - 1
    cdef Py_ssize_t i, j, k, r
    cdef list z, row
    cdef object a, b, best_a, best_b, lhs, cur
    while True:
        z = <list>rows[obj]
        j = -1
        for k in range(rhs):
            if z[k] < 0 and allowed[k]:
                j = k
                break
        if j < 0:
            return _OPTIMAL
        r = -1
        best_b = 0
        best_a = 1
        for i in range(m):
            row = <list>rows[i]
            a = row[j]
            if a > 0:
                b = row[rhs]
                if r < 0:
                    r = i
                    best_b = b
                    best_a = a
                else:
                    lhs = b * best_a
                    cur = best_b * a
                    if lhs < cur or (lhs == cur and basis[i] < basis[r]):
                        r = i
                        best_b = b
                        best_a = a
        if r < 0:
            return _UNBOUNDED
        pivot(rows, dens, r, j)
        basis[r] = j
