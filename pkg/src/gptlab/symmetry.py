"""Affine automorphisms of state spaces and what follows from them.

For a polytope, automorphisms permute the vertices, so the group is found
by searching vertex permutations. The search assigns images to an affinely
independent set of anchor vertices, extends each assignment to an affine
map and keeps it only if every vertex lands on a vertex.

Candidate images are pruned with the Gram matrix of the centred vertices
in the inner product defined by their scatter matrix,

    G_ij = (y_i - c)^T S^{-1} (y_j - c),   S = sum_i (y_i - c)(y_i - c)^T,

computed in affine-hull coordinates. An affine bijection A permuting the
vertices fixes their centroid c and transforms S into A S A^T, so G is
preserved exactly: G[p(i), p(j)] = G[i, j]. The plain Euclidean Gram
matrix has no such property (a shear of the square already breaks it), so
it could only serve as a heuristic filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from . import geometry as geo
from .core import Ball, Effect, Polytope, State, StateLike, StateSpace, _coords, dual_on_effects, functional_to_state
from .errors import NotEquivalent, UnsupportedSpace


@dataclass(frozen=True)
class Automorphism:
    """Affine bijection of a state space onto itself.

    ``permutation[i]`` is the index of the image of vertex ``i`` (empty for
    ball maps).
    """

    forward: geo.AffineMap
    inverse: geo.AffineMap
    permutation: tuple = ()

    def __call__(self, s: StateLike) -> State:
        return State(self.forward(_coords(s)))

    def dual(self, e: Effect) -> Effect:
        """The effect e o forward, i.e. the dual map applied to e."""
        return dual_on_effects(self.forward, e)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        perm = tuple(self.permutation[j] for j in other.permutation) if self.permutation else ()
        return Automorphism(self.forward.compose(other.forward),
                            other.inverse.compose(self.inverse), perm)


@dataclass(frozen=True)
class FiniteGroup:
    """Automorphism group of a polytope, elements sorted by permutation."""

    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def identity(self) -> Automorphism:
        n = len(self.elements[0].permutation)
        return next(g for g in self.elements if g.permutation == tuple(range(n)))

    def by_permutation(self, perm: tuple) -> Optional[Automorphism]:
        return self._index.get(tuple(perm))

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {g.permutation: g for g in self.elements}
            object.__setattr__(self, "_idx", idx)
        return idx


@dataclass(frozen=True)
class BallGroup:
    """All orthogonal maps about the centre of a ball (kept symbolic)."""

    dim: int
    center: tuple

    order = "continuous"


AutomorphismGroup = Union[FiniteGroup, BallGroup]


def _affine_gram(local_pts: list) -> list:
    k = len(local_pts[0])
    n = len(local_pts)
    c = tuple(sum(col, Fraction(0)) / n for col in zip(*local_pts))
    centred = [geo.sub(y, c) for y in local_pts]
    if k == 0:
        return [[Fraction(0)] * n for _ in range(n)]
    scatter = [[sum((y[a] * y[b] for y in centred), Fraction(0)) for b in range(k)] for a in range(k)]
    inv = geo.inverse(scatter)
    transformed = [geo.mat_vec(inv, y) for y in centred]
    return [[geo.dot(transformed[i], centred[j]) for j in range(n)] for i in range(n)]


def _polytope_group(space: Polytope) -> FiniteGroup:
    verts = space.vertices
    n = len(verts)
    chart = space.chart
    local = [chart.local(v) for v in verts]
    gram = _affine_gram(local)
    profile = [(gram[i][i], tuple(sorted(gram[i]))) for i in range(n)]
    anchors = list(chart.anchors)
    options = [[j for j in range(n) if profile[j] == profile[a]] for a in anchors]
    index = space.vertex_index
    found = []

    def extend(assigned: list):
        t = len(assigned)
        if t == len(anchors):
            yield list(assigned)
            return
        a = anchors[t]
        for j in options[t]:
            if j in assigned:
                continue
            if all(gram[j][assigned[s]] == gram[a][anchors[s]] for s in range(t)):
                assigned.append(j)
                yield from extend(assigned)
                assigned.pop()

    for images in extend([]):
        fwd = geo.affine_extension([verts[a] for a in anchors], [verts[j] for j in images])
        perm = []
        for v in verts:
            j = index.get(fwd(v))
            if j is None:
                break
            perm.append(j)
        else:
            if len(set(perm)) == n:
                inv = fwd.inverse()
                found.append(Automorphism(fwd, inv, tuple(perm)))
    found.sort(key=lambda g: g.permutation)
    return FiniteGroup(tuple(found))


@lru_cache(maxsize=256)
def automorphism_group(space: StateSpace) -> AutomorphismGroup:
    """All affine bijections of the space onto itself."""
    if isinstance(space, Ball):
        return BallGroup(space.dim, space.center)
    return _polytope_group(space)


def satisfies_p5(space: StateSpace) -> bool:
    """Whether every pure state can be carried to every other one."""
    if isinstance(space, Ball):
        return True
    group = automorphism_group(space)
    return {g.permutation[0] for g in group} == set(range(space.num_vertices))


def _reflection(space: Ball, src: tuple, dst: tuple) -> Automorphism:
    # Householder reflection through the bisector of src - c and dst - c;
    # rational whenever the points are.
    c = space.center
    v = tuple((x - y) for x, y in zip(src, dst))
    vv = geo.dot(v, v)
    d = space.dim
    if not vv:
        amap = geo.AffineMap.identity(d)
        return Automorphism(amap, amap)
    lin = tuple(tuple(int(i == j) - 2 * v[i] * v[j] / vv for j in range(d)) for i in range(d))
    trans = tuple(ci - sum((lin[i][j] * c[j] for j in range(d)), Fraction(0)) for i, ci in enumerate(c))
    amap = geo.AffineMap(lin, trans)
    return Automorphism(amap, amap)


def are_equivalent(space: StateSpace, s1: StateLike, s2: StateLike) -> Automorphism:
    """An automorphism sending s2 to s1; raises :class:`NotEquivalent`."""
    a = functional_to_state(space, _coords(s1))
    b = functional_to_state(space, _coords(s2))
    if isinstance(space, Ball):
        if space.offset_sq(a.point) != space.offset_sq(b.point):
            raise NotEquivalent("states at different distances from the centre")
        return _reflection(space, b.point, a.point)
    for g in automorphism_group(space):
        if g.forward(b.point) == a.point:
            return g
    raise NotEquivalent("no automorphism relates the states")


def invariant_state(space: StateSpace) -> State:
    """A state fixed by every automorphism (vertex average for polytopes)."""
    if isinstance(space, Ball):
        return State(space.center)
    s = space.centroid
    for g in automorphism_group(space):
        if g.forward(s) != s:
            raise AssertionError("vertex average is not invariant")
    return State(s)


def local_linear_part(space: Polytope, g: Automorphism) -> list:
    """Matrix of g's linear part in the affine-hull coordinates of the space."""
    chart = space.chart
    cols = [chart.local(geo.add(chart.origin, geo.mat_vec(g.forward.linear, u))) for u in chart.basis]
    return geo.transpose(cols) if cols else []


def invariant_state_unique(space: StateSpace) -> bool:
    """Whether the common fixed points of the group reduce to one state."""
    if isinstance(space, Ball):
        return True
    k = space.dim
    if k == 0:
        return True
    rows = []
    for g in automorphism_group(space):
        a = local_linear_part(space, g)
        rows.extend([a[i][j] - int(i == j) for j in range(k)] for i in range(k))
    return geo.rank(rows) == k


def invariant_inner_product(space: StateSpace, local: bool = False) -> list:
    """Group average of A^T A over the linear parts of the automorphisms.

    With ``local=True`` the linear parts are taken in affine-hull
    coordinates, otherwise in ambient coordinates.
    """
    if isinstance(space, Ball):
        return geo.identity(space.dim)
    group = automorphism_group(space)
    mats = [local_linear_part(space, g) if local else g.forward.linear for g in group]
    d = space.dim if local else space.ambient_dim
    total = [[Fraction(0)] * d for _ in range(d)]
    for a in mats:
        prod = geo.mat_mul(geo.transpose(a), a)
        for i in range(d):
            for j in range(d):
                total[i][j] += prod[i][j]
    return tuple(tuple(x / len(mats) for x in row) for row in total)


def preserves_inner_product(a, m) -> bool:
    at = geo.transpose(a)
    return [list(r) for r in geo.mat_mul(geo.mat_mul(at, m), a)] == [list(r) for r in m]


def is_isogonal(space: StateSpace) -> bool:
    """Transitive on vertices by isometries of the invariant inner product."""
    if isinstance(space, Ball):
        return True
    m = invariant_inner_product(space)
    for g in automorphism_group(space):
        if not preserves_inner_product(g.forward.linear, m):
            raise AssertionError("group element does not preserve the averaged inner product")
    return satisfies_p5(space)


def orbit(space: StateSpace, s: StateLike) -> list:
    """Distinct images of s under the automorphism group."""
    if isinstance(space, Ball):
        raise UnsupportedSpace("ball orbits are continuous")
    st = functional_to_state(space, _coords(s))
    seen = {}
    for g in automorphism_group(space):
        seen.setdefault(g.forward(st.point), None)
    return [State(p) for p in seen]
