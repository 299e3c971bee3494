"""Perfect distinguishability and decomposition into distinguishable pure states.

For a polytope an effect is fixed by its values on an affinely independent
set of anchor vertices, and those values are nonnegative. Measurements are
therefore searched for in anchor-value coordinates, where every LP variable
is nonnegative and the upper bounds e <= 1 follow from the other effects
being nonnegative and summing to one.

The search for the largest distinguishable family ranges over pure states
only. That is enough: if mixed states s_1..s_n are distinguished by
e_1..e_n, each s_j is a mixture of pure states, and because e_j(s_j) = 1 with
every e_j <= 1 on the space, each pure state in the mixture also has
e_j-value 1. Picking one such pure state per s_j gives a pure family that the
same measurement distinguishes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import geometry as geo
from . import lp
from .core import (Ball, Effect, Measurement, Polytope, State, StateLike, StateSpace,
                   _coords, _sqrt, functional_to_state, validate_measurement)
from .errors import Infeasible, NoneFound, NotAState, NotDistinguishable, NotInHull

SAMPLE_DENOMINATOR = 2 ** 16
FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class DistinguishabilityWitness:
    """States together with a measurement satisfying e_i(s_j) = delta_ij."""

    states: tuple
    measurement: Measurement

    def __post_init__(self):
        effects = self.measurement.effects
        if len(effects) != len(self.states):
            raise ValueError("need one effect per state")
        for i, e in enumerate(effects):
            for j, s in enumerate(self.states):
                v = e(s)
                want = 1 if i == j else 0
                if isinstance(v, float):
                    ok = abs(v - want) <= FLOAT_TOL
                else:
                    ok = v == want
                if not ok:
                    raise ValueError(f"effect {i} gives {v} on state {j}")


def _as_states(space: StateSpace, states: Sequence[StateLike]) -> tuple:
    out = []
    for s in states:
        x = _coords(s)
        if isinstance(space, Polytope) and geo.as_point(x) in space.vertex_index:
            out.append(State(geo.as_point(x)))
        else:
            out.append(functional_to_state(space, x))
    return tuple(out)


def _ball_pair_witness(space: Ball, plus: tuple, minus: tuple) -> DistinguishabilityWitness:
    r2 = space.radius ** 2
    a = tuple((p - c) / (2 * r2) for p, c in zip(plus, space.center))
    b = Fraction(1, 2) - sum((x * c for x, c in zip(a, space.center)), Fraction(0))
    e = Effect(a, b)
    f = Effect(tuple(-x for x in a), 1 - b)
    return DistinguishabilityWitness((State(plus), State(minus)), Measurement((e, f)))


def _trivial_witness(space: StateSpace, s: State) -> DistinguishabilityWitness:
    one = Effect((Fraction(0),) * space.ambient_dim, Fraction(1))
    return DistinguishabilityWitness((s,), Measurement((one,)))


def _polytope_measurement(space: Polytope, points: Sequence[tuple]) -> Optional[list[Effect]]:
    chart = space.chart
    k1 = chart.dim + 1
    n = len(points)
    nv = n * k1
    anchors = set(chart.anchors)
    prog = lp.LinearProgram(nv, (), [], [lp.NONNEG] * nv)
    for idx, v in enumerate(space.vertices):
        if idx in anchors:
            continue
        beta = chart.barycentric(v)
        for i in range(n):
            row = [Fraction(0)] * nv
            row[i * k1:(i + 1) * k1] = beta
            prog.add(row, lp.GE, 0)
    for l in range(k1):
        row = [Fraction(0)] * nv
        for i in range(n):
            row[i * k1 + l] = Fraction(1)
        prog.add(row, lp.EQ, 1)
    betas = [chart.barycentric(p) for p in points]
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * nv
            row[i * k1:(i + 1) * k1] = betas[j]
            prog.add(row, lp.EQ, int(i == j))
    res = lp.solve(prog)
    if not res.optimal:
        return None
    funcs = chart.barycentric_functionals
    effects = []
    for i in range(n):
        y = res.point[i * k1:(i + 1) * k1]
        a = tuple(sum((w * g[t] for w, (g, _) in zip(y, funcs)), Fraction(0))
                  for t in range(space.ambient_dim))
        b = sum((w * h for w, (_, h) in zip(y, funcs)), Fraction(0))
        effects.append(Effect(a, b))
    return effects


def distinguish(space: StateSpace, states: Sequence[StateLike]) -> DistinguishabilityWitness:
    """Find a measurement telling the states apart with certainty.

    Raises :class:`NotDistinguishable` when none exists and
    :class:`NotAState` when a state lies outside the space.
    """
    if not states:
        raise ValueError("need at least one state")
    sts = _as_states(space, states)
    if len(sts) == 1:
        return _trivial_witness(space, sts[0])
    if isinstance(space, Ball):
        if len(sts) == 2:
            s1, s2 = sts
            antipodal = all(x + y == 2 * c for x, y, c in zip(s1.point, s2.point, space.center))
            if space.is_pure(s1.point) and antipodal:
                return _ball_pair_witness(space, s1.point, s2.point)
        raise NotDistinguishable("ball states are distinguishable only as antipodal pure pairs")
    effects = _polytope_measurement(space, [s.point for s in sts])
    if effects is None:
        raise NotDistinguishable("no measurement distinguishes these states")
    witness = DistinguishabilityWitness(sts, Measurement(tuple(effects)))
    assert validate_measurement(space, witness.measurement)
    return witness


def is_distinguishable(space: StateSpace, states: Sequence[StateLike]) -> bool:
    try:
        distinguish(space, states)
    except NotDistinguishable:
        return False
    return True


@lru_cache(maxsize=256)
def distinguishable_families(space: Polytope) -> tuple:
    """Every distinguishable set of vertices, as sorted index tuples.

    Grown level by level: a set is tested only when all its subsets one
    smaller are distinguishable and its vertices are affinely independent.
    """
    n = space.num_vertices
    verts = space.vertices
    level = [(i,) for i in range(n)]
    found = list(level)
    while level:
        known = set(level)
        candidates = []
        for fam in level:
            for j in range(fam[-1] + 1, n):
                cand = fam + (j,)
                if all(cand[:t] + cand[t + 1:] in known for t in range(len(cand))):
                    candidates.append(cand)
        nxt = []
        for cand in candidates:
            pts = [verts[i] for i in cand]
            if not geo.is_affinely_independent(pts):
                continue
            if _polytope_measurement(space, pts) is not None:
                nxt.append(cand)
        found.extend(nxt)
        level = nxt
    return tuple(sorted(found))


@lru_cache(maxsize=256)
def maximal_families(space: Polytope) -> tuple:
    """Distinguishable vertex sets not contained in a larger one, lexicographic."""
    fams = distinguishable_families(space)
    fam_sets = [frozenset(f) for f in fams]
    out = [f for f, fs in zip(fams, fam_sets)
           if not any(fs < other for other in fam_sets)]
    return tuple(sorted(out))


def max_distinguishable(space: StateSpace) -> int:
    """Largest number of perfectly distinguishable states."""
    if isinstance(space, Ball):
        return 2
    return max(len(f) for f in distinguishable_families(space))


def is_simplex(space: StateSpace) -> bool:
    if isinstance(space, Ball):
        return False
    return space.num_vertices == space.dim + 1 and geo.is_affinely_independent(space.vertices)


def decompose_distinguishable(space: StateSpace, s: StateLike) -> tuple[DistinguishabilityWitness, list]:
    """Write s as a mixture of distinguishable pure states.

    Returns the witness for the pure states and the mixing weights, aligned
    with ``witness.states``. Raises :class:`NoneFound`.
    """
    state = _as_states(space, [s])[0]
    if isinstance(space, Ball):
        return _ball_decomposition(space, state)
    verts = space.vertices
    for fam in maximal_families(space):
        pts = [verts[i] for i in fam]
        try:
            parts = geo.convex_decompose(state.point, pts)
        except NotInHull:
            continue
        weights = [Fraction(0)] * len(fam)
        for i, w in parts:
            weights[i] = w
        return _family_witness(space, fam), weights
    raise NoneFound(f"no distinguishable pure states decompose {state.point}")


@lru_cache(maxsize=1024)
def _family_witness(space: Polytope, fam: tuple) -> DistinguishabilityWitness:
    return distinguish(space, [space.vertices[i] for i in fam])


def _ball_decomposition(space: Ball, state: State):
    c, r = space.center, space.radius
    w = tuple(x - y for x, y in zip(state.point, c))
    q = space.offset_sq(state.point)
    if q == r ** 2:
        return _trivial_witness(space, state), [Fraction(1)]
    if q == 0:
        direction = (Fraction(1),) + (Fraction(0),) * (space.dim - 1)
        norm = Fraction(0)
    else:
        norm = _sqrt(q)
        direction = tuple(x / norm for x in w)
    plus = tuple(ci + r * u for ci, u in zip(c, direction))
    minus = tuple(ci - r * u for ci, u in zip(c, direction))
    lam = (1 + norm / r) / 2
    return _ball_pair_witness(space, plus, minus), [lam, 1 - lam]


@dataclass(frozen=True)
class P6Result:
    """Outcome of the sampled decomposability check."""

    holds: bool
    counterexample: Optional[State] = None
    samples_checked: int = 0

    @property
    def status(self) -> str:
        return "Holds" if self.holds else "FailsWith"


def random_weights(rng: np.random.Generator, n: int, denominator: int = SAMPLE_DENOMINATOR) -> list[Fraction]:
    """Uniform random point of the probability simplex on a 1/denominator grid.

    Weights are the gaps between n - 1 distinct sorted cut points, so all of
    them are positive.
    """
    if n == 1:
        return [Fraction(1)]
    cuts = sorted(int(x) for x in rng.choice(np.arange(1, denominator), size=n - 1, replace=False))
    edges = [0] + cuts + [denominator]
    return [Fraction(b - a, denominator) for a, b in zip(edges, edges[1:])]


def sample_state(space: StateSpace, rng: np.random.Generator) -> State:
    """Random rational state; interior for polytopes (all vertex weights positive)."""
    if isinstance(space, Polytope):
        w = random_weights(rng, space.num_vertices)
        return State(geo.combination(w, space.vertices))
    den = SAMPLE_DENOMINATOR
    while True:
        x = tuple(c + space.radius * Fraction(int(rng.integers(-den, den + 1)), den)
                  for c in space.center)
        if space.contains(x):
            return State(x)


def satisfies_p6_sampled(space: StateSpace, num_samples: int = 1000, seed: int = 0) -> P6Result:
    """Check decomposability into distinguishable pure states on random states.

    Simplices and balls are decided exactly without sampling. For other
    polytopes the first sampled state with no decomposition is returned as
    a counterexample.
    """
    if num_samples < 1:
        raise ValueError("num_samples must be positive")
    if isinstance(space, Ball) or is_simplex(space):
        return P6Result(True, None, 0)
    rng = np.random.default_rng(seed)
    for k in range(num_samples):
        s = sample_state(space, rng)
        try:
            decompose_distinguishable(space, s)
        except NoneFound:
            return P6Result(False, s, k + 1)
    return P6Result(True, None, num_samples)
