"""Exact computations on finite-dimensional general probabilistic theories.

State spaces are rational polytopes or Euclidean disks/balls. The package
decides perfect distinguishability, computes affine automorphism groups,
Kolmogorov distances and measurement entropies, and checks the structural
results that tie these notions together.
"""

from ._kernels import BACKEND, available_backends
from .core import (Ball, Effect, Measurement, Polytope, State, StateSpace, ball, cube, disk,
                   dual_on_effects, effect_range, effect_value, effects_equal, functional_to_state,
                   make_state_space, polygon, simplex, state_from_effect_values, unit_effect,
                   validate_effect, validate_measurement, zero_effect)
from .discrimination import (DistinguishabilityWitness, P6Result, decompose_distinguishable,
                             distinguish, is_simplex, max_distinguishable, satisfies_p6_sampled)
from .errors import (DimensionMismatch, DocumentError, GPTError, Inconsistent, Infeasible,
                     MalformedProgram, NoneFound, NotAState, NotDistinguishable, NotEquivalent,
                     NotInHull, UnsupportedSpace)
from .geometry import (AffineMap, affine_dimension, affine_extension, convex_decompose,
                       extreme_points, in_convex_hull, is_affinely_independent)
from .lp import LinearProgram, LPResult, Status, feasible_point, solve
from .metrics import (EffectRay, entropy, fault_injection, indecomposable_effects,
                      kolmogorov_distance, optimal_success_probability)
from .symmetry import (Automorphism, BallGroup, FiniteGroup, are_equivalent, automorphism_group,
                       invariant_inner_product, invariant_state, invariant_state_unique,
                       is_isogonal, orbit, satisfies_p5)

__version__ = "0.1.0"
