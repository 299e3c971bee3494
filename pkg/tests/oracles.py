"""Independent reference computations used by the tests.

Nothing here imports gptlab: each oracle uses a different algorithm from
the code under test (brute-force enumeration, a convex-hull sweep, a
floating-point LP solver), so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog


def F(x) -> Fraction:
    return Fraction(x)


def gauss_solve(a, b):
    """Unique solution of a square rational system, or None if singular."""
    n = len(a)
    m = [[F(x) for x in row] + [F(r)] for row, r in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def rank(rows) -> int:
    m = [[F(x) for x in row] for row in rows]
    if not m:
        return 0
    r = 0
    for col in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def nullspace(rows, ncols):
    """Basis of the right nullspace, by brute-force elimination."""
    m = [[F(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][col] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    out = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [F(0)] * ncols
        v[free] = F(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][free]
        out.append(v)
    return out


# --- linear programming ---------------------------------------------------------

def lp_vertex_enumeration(c, a_le, b_le):
    """max c.x subject to A x <= b by enumerating every basic point.

    The feasible set must be bounded. Returns None when it is empty.
    """
    n = len(c)
    best = None
    for rows in itertools.combinations(range(len(a_le)), n):
        x = gauss_solve([a_le[i] for i in rows], [b_le[i] for i in rows])
        if x is None:
            continue
        if all(sum(F(a) * v for a, v in zip(row, x)) <= F(b) for row, b in zip(a_le, b_le)):
            val = sum(F(ci) * v for ci, v in zip(c, x))
            if best is None or val > best:
                best = val
    return best


# --- affine symmetry ------------------------------------------------------------

def affine_dependencies(points):
    """Basis of {lam : sum lam_i p_i = 0, sum lam_i = 0}."""
    d = len(points[0])
    rows = [[p[k] for p in points] for k in range(d)] + [[1] * len(points)]
    return nullspace(rows, len(points))


def brute_force_group_order(points) -> int:
    """Number of vertex permutations that extend to affine maps.

    A permutation extends iff it preserves every affine dependency among
    the vertices.
    """
    deps = affine_dependencies(points)
    d = len(points[0])
    count = 0
    for perm in itertools.permutations(range(len(points))):
        ok = True
        for lam in deps:
            for k in range(d):
                if sum(lam[i] * F(points[perm[i]][k]) for i in range(len(points))) != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


# --- convex hulls in the plane --------------------------------------------------

def hull_2d(points):
    """Andrew's monotone chain; counter-clockwise hull vertices."""
    pts = sorted(set((F(x), F(y)) for x, y in points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def edge_functionals_2d(points):
    """For each hull edge, the affine functional vanishing on it, max 1 on the hull."""
    hull = hull_2d(points)
    out = set()
    for p, q in zip(hull, hull[1:] + hull[:1]):
        # inward normal of a counter-clockwise edge
        a = (-(q[1] - p[1]), q[0] - p[0])
        b = -(a[0] * p[0] + a[1] * p[1])
        top = max(a[0] * v[0] + a[1] * v[1] + b for v in hull)
        out.add(((a[0] / top, a[1] / top), b / top))
    return out


# --- base-norm distance -----------------------------------------------------------

def difference_body_distance(local_vertices, delta):
    """Gauge of delta with respect to the difference body P - P.

    The boundary point of P - P along delta lies in the hull of k
    difference vectors (k = dimension), so the largest s with s*delta in
    such a hull is found by brute force over k-subsets. The distance is 1/s.
    """
    k = len(delta)
    if all(x == 0 for x in delta):
        return F(0)
    diffs = sorted({tuple(F(a) - F(b) for a, b in zip(p, q))
                    for p in local_vertices for q in local_vertices if p != q})
    best = None
    for sub in itertools.combinations(diffs, k):
        # unknowns alpha_1..alpha_k, s : sum alpha_i w_i - s delta = 0, sum alpha = 1
        a = [[w[r] for w in sub] + [-F(delta[r])] for r in range(k)]
        a.append([F(1)] * k + [F(0)])
        sol = gauss_solve(a, [F(0)] * k + [F(1)])
        if sol is None or any(x < 0 for x in sol[:k]) or sol[k] <= 0:
            continue
        if best is None or sol[k] > best:
            best = sol[k]
    return 1 / best


def total_variation(p, q):
    return sum(abs(F(a) - F(b)) for a, b in zip(p, q)) / 2


# --- distinguishability with a floating-point solver ---------------------------

def distinguishable_float(vertices, states) -> bool:
    """Feasibility of e_i(s_j) = delta_ij over coefficient variables (a_i, b_i).

    Solved with HiGHS in floating point; a second, unrelated formulation of
    the problem handled by the exact solver under test.
    """
    d = len(vertices[0])
    n = len(states)
    nv = n * (d + 1)

    def row_for(i, point):
        r = np.zeros(nv)
        r[i * (d + 1):i * (d + 1) + d] = [float(x) for x in point]
        r[i * (d + 1) + d] = 1.0
        return r

    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for i in range(n):
        for v in vertices:
            a_ub.append(-row_for(i, v))
            b_ub.append(0.0)
    for v in vertices:
        a_eq.append(sum(row_for(i, v) for i in range(n)))
        b_eq.append(1.0)
    for i in range(n):
        for j, s in enumerate(states):
            a_eq.append(row_for(i, s))
            b_eq.append(1.0 if i == j else 0.0)
    res = linprog(np.zeros(nv), A_ub=np.array(a_ub), b_ub=b_ub, A_eq=np.array(a_eq), b_eq=b_eq,
                  bounds=[(None, None)] * nv, method="highs")
    return res.status == 0


def shannon(probs) -> float:
    return -sum(float(p) * math.log2(float(p)) for p in probs if p > 0)
