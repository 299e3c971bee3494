"""Exact rational linear algebra and convex-geometry primitives.

Points are tuples of :class:`fractions.Fraction`. Nothing in this module
rounds: rank decisions, hull membership and affine extensions are all exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from . import lp
from .errors import DimensionMismatch, Inconsistent, Infeasible, NotInHull

Point = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple of row tuples


def to_fraction(x) -> Fraction:
    """Convert ints, Fractions, Decimals and ``"p/q"`` strings exactly.

    Binary floats are refused: they rarely mean what they say.
    """
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass a Fraction or 'p/q' string")
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    return Fraction(x)


def as_point(coords: Iterable) -> Point:
    return tuple(to_fraction(c) for c in coords)


def _check_dims(points: Sequence[Point]) -> int:
    if not points:
        raise ValueError("empty point list")
    d = len(points[0])
    for p in points:
        if len(p) != d:
            raise DimensionMismatch(f"mixed dimensions {d} and {len(p)}")
    return d


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def scale(t, p: Point) -> Point:
    return tuple(t * a for a in p)


def dot(p, q):
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def combination(weights: Sequence, points: Sequence[Point]) -> Point:
    d = len(points[0])
    return tuple(sum((w * p[k] for w, p in zip(weights, points)), Fraction(0))
                 for k in range(d))


# --- matrices -----------------------------------------------------------------

def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*a)) if a else ()


def mat_vec(a: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(sum((r * v for r, v in zip(row, x)), Fraction(0)) for row in a)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt)
                 for row in a)


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: Optional[int] = None) -> list[Point]:
    """Basis of {x : matrix x = 0}."""
    if ncols is None:
        ncols = len(matrix[0])
    rows, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_square(a: Sequence[Sequence], b: Sequence) -> Optional[tuple]:
    """Unique solution of a square system, or None when singular."""
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in rows)


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + list(e) for row, e in zip(a, identity(n))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in rows)


# --- affine maps --------------------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + translation.

    Entries are normally Fractions; ball rotations use floats.
    """

    linear: Matrix
    translation: tuple

    def apply(self, p: Sequence) -> tuple:
        return tuple(sum((a * x for a, x in zip(row, p)), Fraction(0)) + t
                     for row, t in zip(self.linear, self.translation))

    __call__ = apply

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        return AffineMap(mat_mul(self.linear, other.linear),
                         add(mat_vec(self.linear, other.translation), self.translation))

    def inverse(self) -> "AffineMap":
        inv = inverse(self.linear)
        return AffineMap(inv, tuple(-v for v in mat_vec(inv, self.translation)))

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls(identity(d), (Fraction(0),) * d)

    @property
    def dim(self) -> int:
        return len(self.translation)


# --- affine hulls ---------------------------------------------------------------

def _independent_subset(points: Sequence[Point], first: int = 0) -> list[int]:
    """Greedy affinely independent subset, scanning in order from ``first``."""
    chosen = [first]
    base = points[first]
    span: list[list[Fraction]] = []  # echelon rows with their pivot columns
    pivcols: list[int] = []
    for i, p in enumerate(points):
        if i == first:
            continue
        v = list(sub(p, base))
        for row, c in zip(span, pivcols):
            if v[c]:
                f = v[c]
                v = [x - f * y for x, y in zip(v, row)]
        c = next((k for k, x in enumerate(v) if x), None)
        if c is None:
            continue
        inv = 1 / v[c]
        v = [x * inv for x in v]
        for j, row in enumerate(span):
            if row[c]:
                f = row[c]
                span[j] = [x - f * y for x, y in zip(row, v)]
        span.append(v)
        pivcols.append(c)
        chosen.append(i)
    return chosen


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull."""
    pts = [as_point(p) for p in points]
    _check_dims(pts)
    return len(_independent_subset(pts)) - 1


def is_affinely_independent(points: Sequence[Sequence]) -> bool:
    pts = [as_point(p) for p in points]
    _check_dims(pts)
    return len(_independent_subset(pts)) == len(pts)


@dataclass(frozen=True)
class AffineChart:
    """Coordinates on the affine hull of a point set.

    ``anchors`` index an affinely independent subset; ambient points x in the
    hull correspond to local coordinates y with x = origin + basis^T y.
    """

    anchors: tuple
    origin: Point
    basis: tuple  # k direction vectors, each of ambient length
    left_inverse: Matrix  # k x d with left_inverse @ basis^T = I

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.origin)

    def local(self, x: Sequence) -> tuple:
        return mat_vec(self.left_inverse, sub(x, self.origin))

    def ambient(self, y: Sequence) -> Point:
        x = list(self.origin)
        for t, u in zip(y, self.basis):
            if t:
                for k in range(len(x)):
                    x[k] += t * u[k]
        return tuple(x)

    def in_hull(self, x: Sequence) -> bool:
        """Whether x lies on the affine hull."""
        return self.ambient(self.local(x)) == tuple(x)

    def barycentric(self, x: Sequence) -> tuple:
        y = self.local(x)
        return (1 - sum(y, Fraction(0)),) + tuple(y)

    @cached_property
    def barycentric_functionals(self) -> tuple:
        """Ambient (g, h) with barycentric_l(x) = <g_l, x> + h_l on the hull."""
        out = []
        for row in self.left_inverse:
            out.append((tuple(row), -dot(row, self.origin)))
        d = self.ambient_dim
        g0 = tuple(-sum((g[k] for g, _ in out), Fraction(0)) for k in range(d))
        h0 = 1 - sum((h for _, h in out), Fraction(0))
        return ((g0, h0),) + tuple(out)


def affine_chart(points: Sequence[Point]) -> AffineChart:
    pts = [as_point(p) for p in points]
    _check_dims(pts)
    anchors = _independent_subset(pts)
    origin = pts[anchors[0]]
    basis = tuple(sub(pts[i], origin) for i in anchors[1:])
    k = len(basis)
    if k == 0:
        return AffineChart(tuple(anchors), origin, (), ())
    # Pick k ambient coordinates on which the basis is invertible.
    _, rows = rref(basis)
    sq = [[u[r] for u in basis] for r in rows]  # k x k, column j = basis j
    inv = inverse(sq)
    d = len(origin)
    left = []
    for j in range(k):
        row = [Fraction(0)] * d
        for t, r in enumerate(rows):
            row[r] = inv[j][t]
        left.append(tuple(row))
    return AffineChart(tuple(anchors), origin, basis, tuple(left))


# --- hulls and decompositions --------------------------------------------------

def _membership_program(target: Point, generators: Sequence[Point]) -> lp.LinearProgram:
    n = len(generators)
    prog = lp.LinearProgram(n, (), [], [lp.NONNEG] * n)
    prog.add([1] * n, lp.EQ, 1)
    for k in range(len(target)):
        prog.add([g[k] for g in generators], lp.EQ, target[k])
    return prog


def convex_decompose(target: Sequence, generators: Sequence[Sequence]) -> list[tuple[int, Fraction]]:
    """Write ``target`` as a convex combination of ``generators``.

    Returns ``(index, weight)`` pairs with positive weights summing to one.
    The solution is a basic one (at most dim + 1 indices) but otherwise
    arbitrary. Raises :class:`NotInHull`.
    """
    gens = [as_point(g) for g in generators]
    t = as_point(target)
    d = _check_dims(gens)
    if len(t) != d:
        raise DimensionMismatch(f"target has dimension {len(t)}, generators {d}")
    try:
        w = lp.feasible_point(_membership_program(t, gens).constraints, len(gens),
                              [lp.NONNEG] * len(gens))
    except Infeasible:
        raise NotInHull(f"{t} is not in the convex hull") from None
    out = [(i, x) for i, x in enumerate(w) if x]
    assert sum(x for _, x in out) == 1
    assert combination([x for _, x in out], [gens[i] for i, _ in out]) == t
    return out


def in_convex_hull(target: Sequence, generators: Sequence[Sequence]) -> bool:
    try:
        convex_decompose(target, generators)
    except NotInHull:
        return False
    return True


def extreme_points(points: Sequence[Sequence]) -> list[Point]:
    """Drop duplicates and every point that is a convex combination of others.

    Points are tested in input order, so the result keeps the input order.
    """
    pts = [as_point(p) for p in points]
    _check_dims(pts)
    keep = list(dict.fromkeys(pts))
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1:]
        if others and in_convex_hull(keep[i], others):
            del keep[i]
        else:
            i += 1
    return keep


def affine_extension(sources: Sequence[Sequence], images: Sequence[Sequence],
                     base: int = 0) -> AffineMap:
    """Affine map sending each source to its image.

    When the sources span the ambient space the map is unique. Otherwise the
    directions orthogonal to their span are sent to themselves (or to zero
    when the image space has a different dimension). ``base`` selects the anchor
    source; the result does not depend on it. Raises :class:`Inconsistent`.
    """
    src = [as_point(p) for p in sources]
    img = [as_point(p) for p in images]
    if len(src) != len(img):
        raise ValueError("sources and images differ in length")
    d_in = _check_dims(src)
    d_out = _check_dims(img)
    chosen = _independent_subset(src, base)
    s0, t0 = src[chosen[0]], img[chosen[0]]
    dirs = [sub(src[i], s0) for i in chosen[1:]]
    dir_images = [sub(img[i], t0) for i in chosen[1:]]
    # Complete with the orthogonal complement of the source directions; over
    # the rationals it meets their span only in zero.
    for e in nullspace(dirs, d_in) if dirs else [tuple(Fraction(int(j == k)) for j in range(d_in))
                                                for k in range(d_in)]:
        dirs.append(e)
        dir_images.append(e if d_out == d_in else (Fraction(0),) * d_out)
    # linear @ B = images, with B the matrix whose columns are dirs.
    linear = mat_mul(transpose(dir_images), inverse(transpose(dirs)))
    translation = sub(t0, mat_vec(linear, s0))
    amap = AffineMap(linear, translation)
    for s, t in zip(src, img):
        if amap.apply(s) != t:
            raise Inconsistent("images violate an affine dependency among the sources")
    return amap
