"""State spaces, states, effects and measurements.

A state space is either a rational polytope, given by its pure states, or a
Euclidean disk/ball. Effects are affine functionals ``e(s) = <a, s> + b``
stored by their coefficients; whether they take values in [0, 1] depends on
the space, so validity is checked against a space explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from . import geometry as geo
from .errors import DimensionMismatch, NotAState, NotInHull, UnsupportedSpace

Point = geo.Point


class StateSpace:
    """Common interface of :class:`Polytope` and :class:`Ball`."""

    ambient_dim: int
    dim: int

    def contains(self, point: Sequence) -> bool:
        raise NotImplementedError

    def is_pure(self, point: Sequence) -> bool:
        raise NotImplementedError

    def state(self, coords: Iterable) -> "State":
        """Validated state with the given coordinates."""
        return functional_to_state(self, coords)


class Polytope(StateSpace):
    """Convex hull of finitely many rational points.

    The input is reduced to its extreme points (input order kept), which are
    the pure states.
    """

    def __init__(self, points: Iterable[Sequence]):
        pts = [geo.as_point(p) for p in points]
        if not pts:
            raise ValueError("a polytope needs at least one vertex")
        self.vertices: tuple = tuple(geo.extreme_points(pts))
        self.ambient_dim = len(self.vertices[0])
        self.dim = len(self.chart.basis)

    @classmethod
    def _trusted(cls, vertices: Sequence[Point]) -> "Polytope":
        # Skip the extreme-point reduction for vertex lists known to be minimal.
        obj = cls.__new__(cls)
        obj.vertices = tuple(vertices)
        obj.ambient_dim = len(obj.vertices[0])
        obj.dim = len(obj.chart.basis)
        return obj

    @cached_property
    def chart(self) -> geo.AffineChart:
        return geo.affine_chart(self.vertices)

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def centroid(self) -> Point:
        n = len(self.vertices)
        return tuple(sum(col, Fraction(0)) / n for col in zip(*self.vertices))

    def contains(self, point: Sequence) -> bool:
        p = geo.as_point(point)
        if len(p) != self.ambient_dim:
            raise DimensionMismatch(f"point of dimension {len(p)} in a {self.ambient_dim}-d space")
        if not self.chart.in_hull(p):
            return False
        return geo.in_convex_hull(p, self.vertices)

    def is_pure(self, point: Sequence) -> bool:
        return geo.as_point(point) in self.vertex_index

    def local_polytope(self) -> "Polytope":
        """The same polytope in coordinates of its affine hull (full-dimensional)."""
        return Polytope._trusted([self.chart.local(v) for v in self.vertices])

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(("polytope", self.vertices))

    def __repr__(self):
        return f"Polytope({len(self.vertices)} vertices, dim={self.dim}, ambient={self.ambient_dim})"


class Ball(StateSpace):
    """Euclidean disk (dim 2) or ball (dim 3); its pure states form the sphere."""

    def __init__(self, dim: int = 3, center: Sequence | None = None, radius=1):
        if dim not in (2, 3):
            raise UnsupportedSpace(f"ball dimension must be 2 or 3, got {dim}")
        self.dim = self.ambient_dim = dim
        self.center: Point = geo.as_point(center) if center is not None else (Fraction(0),) * dim
        if len(self.center) != dim:
            raise DimensionMismatch("center does not match the ball dimension")
        self.radius = geo.to_fraction(radius)
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def offset_sq(self, point: Sequence):
        """|point - center|^2, exact for rational input."""
        return sum(((x - c) ** 2 for x, c in zip(point, self.center)), Fraction(0))

    def contains(self, point: Sequence) -> bool:
        if len(point) != self.dim:
            raise DimensionMismatch(f"point of dimension {len(point)} in a {self.dim}-d ball")
        return self.offset_sq(point) <= self.radius ** 2

    def is_pure(self, point: Sequence) -> bool:
        return self.offset_sq(point) == self.radius ** 2

    def __eq__(self, other):
        return (isinstance(other, Ball) and self.dim == other.dim
                and self.center == other.center and self.radius == other.radius)

    def __hash__(self):
        return hash(("ball", self.dim, self.center, self.radius))

    def __repr__(self):
        return f"Ball(dim={self.dim}, center={self.center}, radius={self.radius})"


@dataclass(frozen=True)
class State:
    point: tuple

    def __iter__(self):
        return iter(self.point)

    def __len__(self):
        return len(self.point)


StateLike = Union[State, Sequence]


def _coords(s: StateLike) -> tuple:
    return s.point if isinstance(s, State) else tuple(s)


@dataclass(frozen=True)
class Effect:
    """Affine functional s -> <a, s> + b."""

    a: tuple
    b: Fraction

    def __call__(self, s: StateLike):
        x = _coords(s)
        if len(x) != len(self.a):
            raise DimensionMismatch(f"effect of dimension {len(self.a)} on a {len(x)}-d state")
        return sum((ai * xi for ai, xi in zip(self.a, x)), Fraction(0)) + self.b

    def __add__(self, other: "Effect") -> "Effect":
        return Effect(geo.add(self.a, other.a), self.b + other.b)

    def __sub__(self, other: "Effect") -> "Effect":
        return Effect(geo.sub(self.a, other.a), self.b - other.b)

    def __rmul__(self, t) -> "Effect":
        return Effect(geo.scale(t, self.a), t * self.b)

    @classmethod
    def of(cls, a: Iterable, b) -> "Effect":
        return cls(geo.as_point(a), geo.to_fraction(b))


@dataclass(frozen=True)
class Measurement:
    effects: tuple

    def __post_init__(self):
        if not self.effects:
            raise ValueError("a measurement needs at least one effect")
        object.__setattr__(self, "effects", tuple(self.effects))

    def __len__(self):
        return len(self.effects)

    def __iter__(self):
        return iter(self.effects)

    def probabilities(self, s: StateLike) -> tuple:
        return tuple(e(s) for e in self.effects)


def effect_value(e: Effect, s: StateLike):
    return e(s)


def unit_effect(space: StateSpace) -> Effect:
    return Effect((Fraction(0),) * space.ambient_dim, Fraction(1))


def zero_effect(space: StateSpace) -> Effect:
    return Effect((Fraction(0),) * space.ambient_dim, Fraction(0))


def effect_range(space: StateSpace, e: Effect) -> tuple:
    """(min, max) of e over the space; floats for a ball with irrational |a|."""
    if isinstance(space, Polytope):
        values = [e(v) for v in space.vertices]
        return min(values), max(values)
    mid = e(space.center)
    norm_sq = sum((x * x for x in e.a), Fraction(0))
    spread = _sqrt(norm_sq) * space.radius
    return mid - spread, mid + spread


def _sqrt(q: Fraction):
    """Exact square root when q is a rational square, else a float."""
    q = Fraction(q)
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return math.sqrt(q)


def validate_effect(space: StateSpace, e: Effect) -> bool:
    """Whether 0 <= e <= 1 on the whole space."""
    if len(e.a) != space.ambient_dim:
        raise DimensionMismatch("effect and space dimensions differ")
    if isinstance(space, Polytope):
        return all(0 <= e(v) <= 1 for v in space.vertices)
    # On a ball the range is mid -/+ r|a|; compare squares to stay exact.
    mid = e(space.center)
    spread_sq = space.radius ** 2 * sum((x * x for x in e.a), Fraction(0))
    return (mid >= 0 and mid ** 2 >= spread_sq
            and 1 - mid >= 0 and (1 - mid) ** 2 >= spread_sq)


def effects_equal(space: StateSpace, e: Effect, f: Effect) -> bool:
    """Equality as functionals on the space (not as coefficient vectors)."""
    if isinstance(space, Polytope):
        return all(e(v) == f(v) for v in space.vertices)
    return e == f


def validate_measurement(space: StateSpace, m: Measurement) -> bool:
    """All effects valid and summing to the unit effect on the space."""
    if not all(validate_effect(space, e) for e in m.effects):
        return False
    total = m.effects[0]
    for e in m.effects[1:]:
        total = total + e
    return effects_equal(space, total, unit_effect(space))


def dual_on_effects(psi: geo.AffineMap, e: Effect) -> Effect:
    """The effect s -> e(psi(s))."""
    if psi.dim != len(e.a):
        raise DimensionMismatch("map and effect dimensions differ")
    a = geo.mat_vec(geo.transpose(psi.linear), e.a)
    b = geo.dot(e.a, psi.translation) + e.b
    return Effect(a, b)


def functional_to_state(space: StateSpace, x: Iterable) -> State:
    """The state whose effect statistics are s -> <a, x> + b.

    Exists exactly when x belongs to the space; otherwise some effect would
    take a negative value on x and :class:`NotAState` is raised.
    """
    if isinstance(space, Ball):
        # Floats are tolerated here: analytic ball decompositions produce them.
        coords = tuple(c if isinstance(c, (Fraction, float)) else geo.to_fraction(c) for c in x)
    else:
        coords = geo.as_point(x)
    if len(coords) != space.ambient_dim:
        raise DimensionMismatch(f"point of dimension {len(coords)} in a {space.ambient_dim}-d space")
    if not space.contains(coords):
        raise NotAState(f"{_fmt(coords)} is not a state")
    return State(coords)


def state_from_effect_values(space: StateSpace, effects: Sequence[Effect], values: Sequence) -> State:
    """Reconstruct the state assigning ``values[i]`` to ``effects[i]``.

    The effects must span the affine functionals on the space. Raises
    :class:`NotAState` if no point of the affine hull matches, or the match
    lies outside the space.
    """
    if isinstance(space, Polytope):
        chart = space.chart
        # Unknown local coordinates y: <a, origin + B^T y> + b = value.
        rows, rhs = [], []
        for e, v in zip(effects, values):
            rows.append([geo.dot(e.a, u) for u in chart.basis])
            rhs.append(v - e(chart.origin))
        k = chart.dim
        red, piv = geo.rref([r + [t] for r, t in zip(rows, rhs)])
        if k in piv:
            raise NotAState("effect values are inconsistent")
        if len(piv) < k:
            raise ValueError("effects do not span the affine functionals")
        y = [Fraction(0)] * k
        for row, p in zip(red, piv):
            y[p] = row[k]
        x = chart.ambient(y)
    else:
        rows = [list(e.a) for e in effects]
        rhs = [v - e.b for e, v in zip(effects, values)]
        red, piv = geo.rref([r + [t] for r, t in zip(rows, rhs)])
        if space.dim in piv or len(piv) < space.dim:
            raise NotAState("effect values do not determine a point")
        x = tuple(row[space.dim] for row in red)
    return functional_to_state(space, x)


def _fmt(p) -> str:
    return "(" + ", ".join(str(x) for x in p) + ")"


# --- constructors -----------------------------------------------------------

def simplex(c: int) -> Polytope:
    """Classical state space on c outcomes: the standard simplex in R^c."""
    if c < 1:
        raise ValueError("c must be positive")
    return Polytope._trusted([tuple(Fraction(int(i == j)) for j in range(c)) for i in range(c)])


def cube(d: int) -> Polytope:
    """Hypercube [0, 1]^d with its 2^d vertices."""
    if d < 1:
        raise ValueError("d must be positive")
    verts = []
    for k in range(2 ** d):
        verts.append(tuple(Fraction((k >> (d - 1 - i)) & 1) for i in range(d)))
    return Polytope._trusted(verts)


_HEX_ROT = ((0, -1), (1, 1))  # 60-degree rotation in hexagonal lattice coordinates
_HEX_FLIP = ((0, 1), (1, 0))


def _circle_point(theta: float, max_den: int = 10_000) -> Point:
    """Rational point exactly on the unit circle near angle theta (|theta| < pi)."""
    t = Fraction(math.tan(theta / 2)).limit_denominator(max_den)
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def _orbit_points(p: Point, gens) -> list:
    seen = [p]
    frontier = [p]
    while frontier:
        q = frontier.pop()
        for g in gens:
            r = tuple(sum((Fraction(a) * x for a, x in zip(row, q)), Fraction(0)) for row in g)
            if r not in seen:
                seen.append(r)
                frontier.append(r)
    return seen


def polygon(n: int) -> Polytope:
    """A polygon with n vertices, as symmetric as rational coordinates allow.

    n = 3, 4, 6: affine images of the regular polygons (exact).
    n = 8, 12: vertex-transitive (isogonal) polygons obtained as orbits of
    the rational dihedral groups of order 8 and 12.
    Other n: rational points exactly on the unit circle near the regular
    angles, centrally symmetric when n is even. Regular pentagons,
    heptagons and most larger polygons have no rational affine image, so
    these are only approximately symmetric.
    """
    if n < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    F = Fraction
    if n == 3:
        pts = [(1, 0), (0, 1), (-1, -1)]
    elif n == 4:
        pts = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    elif n == 6:
        pts = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    elif n == 8:
        x, y = _circle_point(math.pi / 8)
        pts = _orbit_points((x, y), [((0, 1), (1, 0)), ((-1, 0), (0, 1))])
        pts.sort(key=lambda p: math.atan2(float(p[1]), float(p[0])) % (2 * math.pi))
    elif n == 12:
        pts = _orbit_points((F(3), F(1)), [_HEX_ROT, _HEX_FLIP])
        pts.sort(key=lambda p: math.atan2(float(p[1]) * math.sqrt(3) / 2,
                                          float(p[0]) + float(p[1]) / 2) % (2 * math.pi))
    else:
        half = n // 2 if n % 2 == 0 else n
        pts = [_circle_point(2 * math.pi * k / n) if 2 * math.pi * k / n < math.pi
               else tuple(-c for c in _circle_point(2 * math.pi * k / n - math.pi))
               for k in range(half)]
        if n % 2 == 0:
            pts = pts + [tuple(-c for c in p) for p in pts]
    return Polytope(pts)


def disk(radius=1) -> Ball:
    return Ball(2, None, radius)


def ball(dim: int = 3, center: Sequence | None = None, radius=1) -> Ball:
    return Ball(dim, center, radius)


GENERATORS = {
    "simplex": lambda p: simplex(int(p.get("c", 3))),
    "cube": lambda p: cube(int(p.get("d", 2))),
    "polygon": lambda p: polygon(int(p.get("n", 6))),
    "disk": lambda p: disk(p.get("radius", 1)),
    "ball": lambda p: ball(int(p.get("dim", 3)), p.get("center"), p.get("radius", 1)),
}


def make_state_space(description: Union[Mapping, StateSpace]) -> StateSpace:
    """Build a space from a description mapping.

    Accepted forms::

        {"type": "polytope", "vertices": [[...], ...]}
        {"type": "ball", "dim": 2 | 3, "center": [...], "radius": r}
        {"type": "generator", "name": "simplex" | "cube" | "polygon" | "disk" | "ball",
         "params": {...}}
    """
    if isinstance(description, StateSpace):
        return description
    kind = description.get("type")
    if kind == "polytope":
        verts = description.get("vertices") or []
        if not verts:
            raise ValueError("empty vertex list")
        return Polytope(verts)
    if kind == "ball":
        return Ball(int(description.get("dim", 3)), description.get("center"),
                    description.get("radius", 1))
    if kind == "generator":
        name = description.get("name")
        if name not in GENERATORS:
            raise ValueError(f"unknown generator {name!r}")
        return GENERATORS[name](description.get("params") or {})
    raise ValueError(f"unknown space type {kind!r}")
