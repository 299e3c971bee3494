"""Kolmogorov distance, two-state discrimination and measurement entropy.

Polytope quantities are exact rationals obtained from linear programs whose
variables are effect values at the anchor vertices of the affine chart.
Ball quantities use closed forms in floating point.

Indecomposable effects are taken to be the extreme rays of the cone of
affine functionals that are nonnegative on the state space. This reading
comes from the literature on measurement entropies in general
probabilistic theories rather than from a definition stated alongside the
entropy formula itself.
"""

from __future__ import annotations

import contextlib
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from . import geometry as geo
from . import lp
from .core import Ball, Effect, Polytope, StateLike, StateSpace, _coords, _sqrt, functional_to_state
from .errors import UnsupportedSpace

FAULT_ENV = "GPTLAB_INJECT_FAULT"
_fault_override: list[bool] = []


def fault_active() -> bool:
    """Whether the test fault in the distance program is switched on.

    The fault flips the relation of one vertex constraint of the
    Kolmogorov-distance program from ``e(v) >= 0`` to ``e(v) <= 0``. It
    exists so that the verification suite can demonstrate it catches a
    broken solver. Enable it with the ``GPTLAB_INJECT_FAULT`` environment
    variable or the :func:`fault_injection` context manager.
    """
    if _fault_override:
        return _fault_override[-1]
    return os.environ.get(FAULT_ENV, "") not in ("", "0")


@contextlib.contextmanager
def fault_injection(enabled: bool = True) -> Iterator[None]:
    _fault_override.append(enabled)
    try:
        yield
    finally:
        _fault_override.pop()


def _values_program(space: Polytope, n_effects: int) -> tuple[lp.LinearProgram, list]:
    # One block of anchor-value variables per effect, free, no constraints yet.
    k1 = space.chart.dim + 1
    nv = n_effects * k1
    betas = [space.chart.barycentric(v) for v in space.vertices]
    return lp.LinearProgram(nv, (), [], None), betas


def _block(row: tuple, block: int, k1: int, nv: int) -> list:
    out = [Fraction(0)] * nv
    out[block * k1:(block + 1) * k1] = row
    return out


def kolmogorov_distance(space: StateSpace, s1: StateLike, s2: StateLike):
    """sup over effects of e(s1) - e(s2); a Fraction for polytopes, float for balls."""
    a = functional_to_state(space, _coords(s1)).point
    b = functional_to_state(space, _coords(s2)).point
    if isinstance(space, Ball):
        return float(_sqrt(sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0)))) / (2 * float(space.radius))
    chart = space.chart
    k1 = chart.dim + 1
    prog, betas = _values_program(space, 1)
    fault = fault_active()
    for idx, beta in enumerate(betas):
        prog.add(beta, lp.LE if (fault and idx == 0) else lp.GE, 0)
        prog.add(beta, lp.LE, 1)
    ba, bb = chart.barycentric(a), chart.barycentric(b)
    prog.objective = [x - y for x, y in zip(ba, bb)]
    res = lp.solve(prog)
    if not res.optimal:
        raise RuntimeError(f"distance program ended {res.status.value}")
    assert len(res.point) == k1
    return res.optimum


def optimal_success_probability(space: StateSpace, s1: StateLike, s2: StateLike):
    """Best equal-prior probability of telling s1 from s2 with one measurement.

    Solved directly over two-outcome measurements (e1, e2), independently of
    :func:`kolmogorov_distance`.
    """
    a = functional_to_state(space, _coords(s1)).point
    b = functional_to_state(space, _coords(s2)).point
    if isinstance(space, Ball):
        d = float(_sqrt(sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0)))) / (2 * float(space.radius))
        return (1 + d) / 2
    chart = space.chart
    k1 = chart.dim + 1
    nv = 2 * k1
    prog, betas = _values_program(space, 2)
    for beta in betas:
        prog.add(_block(beta, 0, k1, nv), lp.GE, 0)
        prog.add(_block(beta, 1, k1, nv), lp.GE, 0)
    for l in range(k1):
        row = [Fraction(0)] * nv
        row[l] = row[k1 + l] = Fraction(1)
        prog.add(row, lp.EQ, 1)
    half = Fraction(1, 2)
    prog.objective = [half * x for x in chart.barycentric(a)] + [half * x for x in chart.barycentric(b)]
    res = lp.solve(prog)
    if not res.optimal:
        raise RuntimeError(f"discrimination program ended {res.status.value}")
    return res.optimum


# --- indecomposable effects ----------------------------------------------------

@dataclass(frozen=True)
class EffectRay:
    """Extreme ray of the cone of nonnegative affine functionals.

    Scaled so that its maximum over the state space is 1, which makes it a
    valid effect.
    """

    a: tuple
    b: Fraction

    @property
    def effect(self) -> Effect:
        return Effect(self.a, self.b)

    def __call__(self, s: StateLike):
        return self.effect(s)


def _local_rays(space: Polytope) -> list:
    """Extreme rays (alpha, beta) in chart coordinates, max-normalized."""
    chart = space.chart
    k = chart.dim
    pts = [chart.local(v) for v in space.vertices]
    if k == 0:
        return [((), Fraction(1))]
    rows = [list(p) + [Fraction(1)] for p in pts]
    rays = set()
    for subset in itertools.combinations(range(len(pts)), k):
        ns = geo.nullspace([rows[i] for i in subset], k + 1)
        if len(ns) != 1:
            continue
        r = ns[0]
        vals = [geo.dot(r, row) for row in rows]
        if all(v >= 0 for v in vals):
            top = max(vals)
        elif all(v <= 0 for v in vals):
            r = tuple(-x for x in r)
            top = -min(vals)
        else:
            continue
        r = tuple(x / top for x in r)
        rays.add((r[:k], r[k]))
    return sorted(rays)


@lru_cache(maxsize=256)
def _ray_data(space: Polytope) -> tuple:
    return tuple(_local_rays(space))


def indecomposable_effects(space: StateSpace) -> list:
    """Extreme rays of the nonnegative-functional cone, as valid effects.

    Each ray is cut out by dim linearly independent vertex constraints,
    so the rays are found by solving every dim-subset of those constraints
    and keeping the solutions that are nonnegative on all vertices.
    """
    if isinstance(space, Ball):
        raise UnsupportedSpace("the ball has a continuum of extreme effects")
    chart = space.chart
    out = []
    for alpha, beta in _ray_data(space):
        # alpha . L (x - origin) + beta
        a = tuple(sum((al * row[t] for al, row in zip(alpha, chart.left_inverse)), Fraction(0))
                  for t in range(space.ambient_dim))
        b = beta - geo.dot(a, chart.origin)
        out.append(EffectRay(a, b))
    out.sort(key=lambda r: (r.a, r.b))
    return out


@lru_cache(maxsize=256)
def indecomposable_measurements(space: Polytope) -> tuple:
    """Vertices of {lambda >= 0 : sum_i lambda_i r_i = u} over the ray list.

    Each vertex is a tuple of (ray index, weight) pairs with positive weight.
    """
    rays = _ray_data(space)
    chart = space.chart
    k1 = chart.dim + 1
    # Value of each ray at the anchor vertices (local coordinates: origin, origin + e_j).
    cols = []
    for alpha, beta in rays:
        cols.append((beta,) + tuple(beta + x for x in alpha))
    m = len(cols)
    found = set()
    for subset in itertools.combinations(range(m), k1):
        mat = [[cols[i][l] for i in subset] for l in range(k1)]
        sol = geo.solve_square(mat, [Fraction(1)] * k1)
        if sol is None or any(x < 0 for x in sol):
            continue
        found.add(tuple((subset[t], x) for t, x in enumerate(sol) if x))
    return tuple(sorted(found))


def shannon_entropy(probs) -> float:
    return 0.0 - sum(p * math.log2(p) for p in (float(q) for q in probs) if p > 0)


def binary_entropy(p: float) -> float:
    return shannon_entropy([p, 1 - p])


def entropy(space: StateSpace, s: StateLike) -> float:
    """Least Shannon entropy of an indecomposable measurement's outcomes on s.

    Outcome probabilities depend affinely on the measurement weights and
    Shannon entropy is concave, so the least value is reached at a vertex
    of the weight polytope. Ball states use the closed form
    h((1 + |s - c| / r) / 2).
    """
    x = functional_to_state(space, _coords(s)).point
    if isinstance(space, Ball):
        rho = float(_sqrt(space.offset_sq(x))) / float(space.radius)
        return binary_entropy((1 + min(rho, 1.0)) / 2)
    y = space.chart.local(x)
    rays = _ray_data(space)
    values = [geo.dot(alpha, y) + beta for alpha, beta in rays]
    best = math.inf
    for meas in indecomposable_measurements(space):
        h = shannon_entropy(w * values[i] for i, w in meas)
        best = min(best, h)
    return best
