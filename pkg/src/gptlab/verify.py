"""Instance checks of the structural results on a corpus of state spaces.

Each check runs on one named instance and records pass/fail with a short
detail string. The corpus mixes built-in spaces with seeded random
polytopes, so a run is reproducible from its seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from . import discrimination as di
from . import geometry as geo
from . import metrics as me
from . import symmetry as sy
from .core import (Ball, Effect, Polytope, StateSpace, ball, cube, disk, effects_equal, polygon,
                   simplex, state_from_effect_values, unit_effect, validate_effect, zero_effect)

ENTROPY_TOL = 1e-9
FLOAT_TOL = 1e-9


# --- random spaces ------------------------------------------------------------

def random_polytope(rng: np.random.Generator, dim: int, num_vertices: int,
                    coord_range: int = 6, non_simplex: bool = False,
                    max_tries: int = 1000) -> Polytope:
    """Full-dimensional polytope from random integer points.

    Points are drawn from [-coord_range, coord_range]^dim and reduced to
    their extreme points; draws that are not full-dimensional (or that
    give a simplex when ``non_simplex`` is set) are rejected.
    """
    for _ in range(max_tries):
        pts = rng.integers(-coord_range, coord_range + 1, size=(num_vertices, dim))
        poly = Polytope([[int(x) for x in row] for row in pts])
        if poly.dim != dim:
            continue
        if non_simplex and poly.num_vertices == dim + 1:
            continue
        return poly
    raise RuntimeError("could not draw a suitable polytope")


def random_simplex(rng: np.random.Generator, dim: int, coord_range: int = 6) -> Polytope:
    return random_polytope(rng, dim, dim + 1, coord_range)


# --- corpus ---------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    name: str
    space: StateSpace


@dataclass(frozen=True)
class CorpusSpec:
    """Which spaces a verification run covers.

    ``kind`` is "default" (built-ins plus random polytopes), "builtin",
    "random" or "simplices" (standard and random simplices only).
    """

    kind: str = "default"
    num_random: int = 6
    dims: tuple = (2, 3)
    vertices: tuple = (4, 8)
    samples: int = 3
    p6_samples: int = 200


def builtin_instances() -> list[Instance]:
    out = [Instance(f"simplex(c={c})", simplex(c)) for c in range(2, 6)]
    out += [Instance("cube(d=2)", cube(2)), Instance("cube(d=3)", cube(3))]
    out += [Instance(f"polygon(n={n})", polygon(n)) for n in (3, 4, 6, 8)]
    out.append(Instance("trapezoid", Polytope([(0, 0), (3, 0), (2, 1), (1, 1)])))
    out += [Instance("disk", disk()), Instance("ball(dim=3)", ball())]
    return out


def build_corpus(spec: CorpusSpec, seed: int) -> list[Instance]:
    rng = np.random.default_rng(seed)
    lo_d, hi_d = spec.dims
    lo_v, hi_v = spec.vertices
    out: list[Instance] = []
    if spec.kind == "simplices":
        out += [Instance(f"simplex(c={c})", simplex(c)) for c in range(2, 6)]
        for i in range(spec.num_random):
            d = int(rng.integers(lo_d, hi_d + 1))
            out.append(Instance(f"random-simplex[{i}](dim={d})", random_simplex(rng, d)))
        return out
    if spec.kind in ("default", "builtin"):
        out += builtin_instances()
    if spec.kind in ("default", "random"):
        for i in range(spec.num_random):
            d = int(rng.integers(lo_d, hi_d + 1))
            n = int(rng.integers(max(lo_v, d + 1), hi_v + 1))
            out.append(Instance(f"random[{i}](dim={d},n={n})", random_polytope(rng, d, n)))
    if spec.kind not in ("default", "builtin", "random"):
        raise ValueError(f"unknown corpus kind {spec.kind!r}")
    return out


# --- checks -----------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    check: str
    instance: str
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    seed: int
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.passed]


def spanning_effects(space: Polytope) -> list[Effect]:
    """dim + 2 valid effects: 0, u and one rescaled chart coordinate per direction.

    Together with u the coordinate effects span every affine functional on
    the affine hull.
    """
    chart = space.chart
    effects = [zero_effect(space), unit_effect(space)]
    for j, row in enumerate(chart.left_inverse):
        vals = [chart.local(v)[j] for v in space.vertices]
        lo, hi = min(vals), max(vals)
        a = tuple(x / (hi - lo) for x in row)
        b = (-geo.dot(row, chart.origin) - lo) / (hi - lo)
        effects.append(Effect(a, b))
    return effects


def _sample_states(space: StateSpace, rng, k: int) -> list:
    return [di.sample_state(space, rng).point for _ in range(k)]


def _close(x, y, tol=FLOAT_TOL) -> bool:
    return abs(float(x) - float(y)) <= tol


def _check_polytope(inst: Instance, spec: CorpusSpec, rng, record: Callable) -> None:
    sp = inst.space
    name = inst.name
    c = di.max_distinguishable(sp)
    simp = di.is_simplex(sp)
    record("capacity bound c <= dim+1", c <= sp.dim + 1, f"c={c}, dim={sp.dim}")
    record("capacity equality iff simplex", (c == sp.dim + 1) == simp, f"c={c}, simplex={simp}")
    p6 = di.satisfies_p6_sampled(sp, spec.p6_samples, int(rng.integers(2 ** 31)))
    record("P6 implies c = dim+1", (not p6.holds) or c == sp.dim + 1, f"p6={p6.status}")
    record("P6 iff simplex", p6.holds == simp, f"p6={p6.status}, simplex={simp}")

    group = sy.automorphism_group(sp)
    effects = spanning_effects(sp)
    states = _sample_states(sp, rng, spec.samples)
    pairs = list(zip(states, states[1:] + states[:1]))
    u, zero = unit_effect(sp), zero_effect(sp)
    dual_ok = True
    for g in group:
        for e in effects:
            phi = g.dual(e)
            dual_ok &= validate_effect(sp, phi)
            dual_ok &= all(phi(s) == e(g.forward(s)) for s in states)
        dual_ok &= effects_equal(sp, g.dual(u), u) and effects_equal(sp, g.dual(zero), zero)
        for s in states:
            values = [g.dual(e)(s) for e in effects]
            dual_ok &= state_from_effect_values(sp, effects, values).point == g.forward(s)
    record("dual map round trip", dual_ok, f"|G|={group.order}, effects={len(effects)}")

    if sy.satisfies_p5(sp):
        v0 = sp.vertices[0]
        eq_ok = all(sy.are_equivalent(sp, v, v0).forward(v0) == v for v in sp.vertices)
        record("pure states equivalent", eq_ok, "")

    identity_ok = True
    for s1, s2 in pairs:
        d = me.kolmogorov_distance(sp, s1, s2)
        p = me.optimal_success_probability(sp, s1, s2)
        identity_ok &= d == 2 * p - 1 and 0 <= d <= 1
    record("D = 2P - 1", identity_ok, f"{len(pairs)} pairs")

    invariance_ok = True
    for s1, s2 in pairs[:2]:
        d = me.kolmogorov_distance(sp, s1, s2)
        for g in group:
            invariance_ok &= me.kolmogorov_distance(sp, g.forward(s1), g.forward(s2)) == d
    record("automorphisms preserve D", invariance_ok, f"|G|={group.order}")

    s_m = sy.invariant_state(sp).point
    if sy.satisfies_p5(sp):
        dists = {me.kolmogorov_distance(sp, s_m, v) for v in sp.vertices}
        record("D(s_M, v) constant", len(dists) == 1, f"values={sorted(dists)}")
        h_m = me.entropy(sp, s_m)
        maximal_ok = all(h_m >= me.entropy(sp, s) - ENTROPY_TOL for s in states)
        inv_ok = all(_close(me.entropy(sp, g.forward(s)), me.entropy(sp, s), ENTROPY_TOL)
                     for g in group for s in states)
        record("S(s_M) maximal", maximal_ok, f"S(s_M)={h_m:.6f}")
        record("Entropy invariance", inv_ok, "")


def _check_ball(inst: Instance, spec: CorpusSpec, rng, record: Callable) -> None:
    sp = inst.space
    record("capacity bound c <= dim+1", di.max_distinguishable(sp) <= sp.dim + 1, "c=2")
    record("P6 iff simplex or ball", di.satisfies_p6_sampled(sp, 1, 0).holds, "")
    record("P5 ball symmetric", sy.satisfies_p5(sp), "")
    states = _sample_states(sp, rng, spec.samples)
    ok = all(_close(me.kolmogorov_distance(sp, a, b), 2 * me.optimal_success_probability(sp, a, b) - 1)
             for a, b in zip(states, states[1:] + states[:1]))
    record("D = 2P - 1", ok, "float tolerance 1e-9")
    pure = tuple(c + (sp.radius if i == 0 else 0) for i, c in enumerate(sp.center))
    ent_ok = _close(me.entropy(sp, sp.center), 1) and _close(me.entropy(sp, pure), 0)
    record("Entropy centre 1, pure 0", ent_ok, "")


def run_verification(spec: Optional[CorpusSpec] = None, seed: int = 0,
                     instances: Optional[Iterable[Instance]] = None) -> VerifyReport:
    """Run every check on every instance; exceptions count as failures."""
    spec = spec or CorpusSpec()
    report = VerifyReport(seed)
    corpus = list(instances) if instances is not None else build_corpus(spec, seed)
    for idx, inst in enumerate(corpus):
        rng = np.random.default_rng([seed, idx])

        def record(check, passed, detail="", _name=inst.name):
            report.results.append(CheckResult(check, _name, bool(passed), detail))

        try:
            if isinstance(inst.space, Ball):
                _check_ball(inst, spec, rng, record)
            else:
                _check_polytope(inst, spec, rng, record)
        except Exception as exc:  # a crash inside a check is a failed check
            record("run", False, f"{type(exc).__name__}: {exc}")
    return report
