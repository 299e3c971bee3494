from fractions import Fraction as F

import numpy as np
import pytest

from gptlab import core, geometry as geo
from gptlab import symmetry as sy
from gptlab.core import Polytope
from gptlab.errors import NotAState, NotEquivalent, UnsupportedSpace
from gptlab.verify import random_polytope

import oracles

SQUARE = core.cube(2)
TRAPEZOID = Polytope([(0, 0), (3, 0), (2, 1), (1, 1)])
# brute-force orders over all vertex permutations, frozen from the oracle
BRUTE_FORCE_ORDERS = {"simplex3": 6, "square": 8, "trapezoid": 2, "cube3": 48, "hexagon": 12}
SPACES = {"simplex3": core.simplex(3), "square": SQUARE, "trapezoid": TRAPEZOID,
          "cube3": core.cube(3), "hexagon": core.polygon(6)}


@pytest.mark.parametrize("name", sorted(SPACES))
def test_group_order_matches_frozen_brute_force(name):
    assert sy.automorphism_group(SPACES[name]).order == BRUTE_FORCE_ORDERS[name]


@pytest.mark.parametrize("name", ["simplex3", "square", "trapezoid", "hexagon"])
def test_frozen_orders_reproduce(name):
    assert oracles.brute_force_group_order(SPACES[name].vertices) == BRUTE_FORCE_ORDERS[name]


@pytest.mark.parametrize("seed", range(6))
def test_group_order_on_random_polytopes(seed):
    rng = np.random.default_rng(seed)
    sp = random_polytope(rng, 2, int(rng.integers(4, 7)), coord_range=2)
    assert sy.automorphism_group(sp).order == oracles.brute_force_group_order(sp.vertices)


def test_sheared_square_keeps_its_group():
    # Euclidean distances differ after the shear; the group must not.
    sheared = Polytope([(0, 0), (1, 0), (3, 1), (2, 1)])
    assert sy.automorphism_group(sheared).order == 8


@pytest.mark.parametrize("name", sorted(SPACES))
def test_group_axioms(name):
    sp = SPACES[name]
    group = sy.automorphism_group(sp)
    perms = {g.permutation for g in group}
    assert tuple(range(sp.num_vertices)) in perms
    for g in group:
        assert g.forward.compose(g.inverse) == geo.AffineMap.identity(sp.ambient_dim)
        assert g.inverse.compose(g.forward) == geo.AffineMap.identity(sp.ambient_dim)
        assert sorted(g.forward(v) for v in sp.vertices) == sorted(sp.vertices)
        for h in group:
            assert g.compose(h).permutation in perms
    keys = [g.permutation for g in group]
    assert keys == sorted(keys)


def test_p5():
    assert sy.satisfies_p5(core.cube(2)) and sy.satisfies_p5(core.cube(3))
    assert sy.satisfies_p5(core.simplex(4))
    assert not sy.satisfies_p5(TRAPEZOID)
    assert sy.satisfies_p5(core.ball())


def test_are_equivalent():
    g = sy.are_equivalent(SQUARE, (1, 1), (0, 0))
    assert g.forward((0, 0)) == (1, 1)
    with pytest.raises(NotEquivalent):
        sy.are_equivalent(SQUARE, (0, 0), (F(1, 2), F(1, 2)))
    with pytest.raises(NotAState):
        sy.are_equivalent(SQUARE, (0, 0), (3, 3))
    b = core.ball()
    h = sy.are_equivalent(b, (1, 0, 0), (0, F(3, 5), F(4, 5)))
    assert h((0, F(3, 5), F(4, 5))).point == (1, 0, 0)
    # the witness is an isometry fixing the centre
    lin = h.forward.linear
    assert geo.mat_mul(geo.transpose(lin), lin) == geo.identity(3)
    with pytest.raises(NotEquivalent):
        sy.are_equivalent(b, (1, 0, 0), (F(1, 2), 0, 0))


def test_invariant_states():
    assert sy.invariant_state(SQUARE).point == (F(1, 2), F(1, 2))
    assert sy.invariant_state(core.simplex(4)).point == (F(1, 4),) * 4
    assert sy.invariant_state(core.ball()).point == (0, 0, 0)


def test_invariant_state_uniqueness():
    assert sy.invariant_state_unique(SQUARE)
    assert sy.invariant_state_unique(core.simplex(3))
    # only a reflection: the whole axis of symmetry is fixed
    assert not sy.invariant_state_unique(TRAPEZOID)
    assert sy.invariant_state_unique(core.ball())


def test_invariant_inner_product():
    lonely = Polytope([(0, 0), (2, 0), (1, 3), (0, 1)])
    assert sy.automorphism_group(lonely).order == 1
    assert sy.invariant_inner_product(lonely) == geo.identity(2)
    m = sy.invariant_inner_product(SQUARE)
    assert m[0][1] == m[1][0] == 0 and m[0][0] == m[1][1] > 0
    simplex = core.simplex(3)
    m_local = sy.invariant_inner_product(simplex, local=True)
    for g in sy.automorphism_group(simplex):
        assert sy.preserves_inner_product(sy.local_linear_part(simplex, g), m_local)
    # positive definite (2x2: leading minors)
    assert m_local[0][0] > 0 and m_local[0][0] * m_local[1][1] - m_local[0][1] ** 2 > 0


@pytest.mark.parametrize("n", [3, 4, 6, 8, 12])
def test_rational_polygons_are_isogonal(n):
    assert sy.is_isogonal(core.polygon(n))


def test_isogonality_and_p5():
    assert not sy.is_isogonal(TRAPEZOID)
    for sp in [core.cube(3), core.simplex(4)]:
        assert sy.satisfies_p5(sp) and sy.is_isogonal(sp)


def test_orbits():
    assert sorted(s.point for s in sy.orbit(SQUARE, (0, 0))) == sorted(SQUARE.vertices)
    assert [s.point for s in sy.orbit(SQUARE, (F(1, 2), F(1, 2)))] == [(F(1, 2), F(1, 2))]
    mids = {(F(1, 2), 0), (0, F(1, 2)), (1, F(1, 2)), (F(1, 2), 1)}
    assert {s.point for s in sy.orbit(SQUARE, (F(1, 2), 0))} == mids
    with pytest.raises(UnsupportedSpace):
        sy.orbit(core.ball(), (0, 0, 0))


def test_lower_dimensional_polytope_group():
    # triangle sitting in the plane z = 1 inside R^3
    tri = Polytope([(1, 0, 1), (0, 1, 1), (0, 0, 1)])
    group = sy.automorphism_group(tri)
    assert group.order == 6
    assert sy.invariant_state_unique(tri)
