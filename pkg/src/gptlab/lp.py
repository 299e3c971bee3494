"""Exact rational linear programming.

A two-phase primal simplex method over the rationals with Bland's pivot
rule, which guarantees termination on degenerate programs. Every optimal
point is checked against the original constraints by exact substitution
before it is returned.

Variables are free unless ``bounds`` says otherwise; ``NONNEG`` is the
bound pair for a nonnegative variable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from . import _kernels
from .errors import Infeasible, MalformedProgram

LE, EQ, GE = "<=", "==", ">="
_RELATIONS = {"<=": LE, "≤": LE, "==": EQ, "=": EQ, ">=": GE, "≥": GE}
_FLIP = {LE: GE, GE: LE, EQ: EQ}

NONNEG = (0, None)

Bound = tuple[Optional[Fraction], Optional[Fraction]]


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple
    relation: str
    rhs: Fraction

    def __post_init__(self):
        try:
            rel = _RELATIONS[self.relation]
        except KeyError:
            raise MalformedProgram(f"unknown relation {self.relation!r}") from None
        object.__setattr__(self, "relation", rel)
        object.__setattr__(self, "coefficients", tuple(Fraction(a) for a in self.coefficients))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * v for a, v in zip(self.coefficients, x) if a), Fraction(0))
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


def _as_constraint(c) -> Constraint:
    return c if isinstance(c, Constraint) else Constraint(*c)


@dataclass
class LinearProgram:
    """maximize <objective, x> subject to constraints and per-variable bounds.

    An empty or all-zero objective turns the program into a pure
    feasibility problem.
    """

    num_vars: int
    objective: Sequence = ()
    constraints: list = field(default_factory=list)
    bounds: Optional[Sequence[Bound]] = None

    def __post_init__(self):
        self.constraints = [_as_constraint(c) for c in self.constraints]

    def add(self, coefficients: Iterable, relation: str, rhs) -> "LinearProgram":
        self.constraints.append(Constraint(tuple(coefficients), relation, rhs))
        return self

    def validate(self) -> None:
        n = self.num_vars
        if n < 0:
            raise MalformedProgram("negative number of variables")
        if self.objective and len(self.objective) != n:
            raise MalformedProgram(
                f"objective has {len(self.objective)} coefficients, expected {n}")
        for k, con in enumerate(self.constraints):
            if len(con.coefficients) != n:
                raise MalformedProgram(
                    f"constraint {k} has {len(con.coefficients)} coefficients, expected {n}")
        if self.bounds is not None and len(self.bounds) != n:
            raise MalformedProgram(f"{len(self.bounds)} bounds given for {n} variables")


@dataclass(frozen=True)
class LPResult:
    status: Status
    optimum: Optional[Fraction] = None
    point: Optional[tuple] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def _int_row(values: Sequence[Fraction]) -> tuple[list, int]:
    den = lcm(*(v.denominator for v in values)) if values else 1
    return [v.numerator * (den // v.denominator) for v in values], den


def _frac(x) -> Optional[Fraction]:
    return None if x is None else Fraction(x)


def solve(lp: LinearProgram) -> LPResult:
    """Solve ``lp`` exactly."""
    lp.validate()
    n = lp.num_vars
    objective = [Fraction(c) for c in lp.objective] if lp.objective else [Fraction(0)] * n
    bounds = lp.bounds if lp.bounds is not None else [(None, None)] * n

    # Substitute x_k = offset_k + sum(sign * x'_col) with every x' >= 0.
    subst: list[list[tuple[int, int]]] = []
    offsets: list[Fraction] = []
    ns = 0
    upper_rows = []
    for lo, hi in bounds:
        lo, hi = _frac(lo), _frac(hi)
        if lo is not None:
            subst.append([(ns, 1)])
            offsets.append(lo)
            if hi is not None:
                upper_rows.append((ns, hi - lo))
            ns += 1
        elif hi is not None:
            subst.append([(ns, -1)])
            offsets.append(hi)
            ns += 1
        else:
            subst.append([(ns, 1), (ns + 1, -1)])
            offsets.append(Fraction(0))
            ns += 2

    rows = []
    for con in lp.constraints:
        coefs = [Fraction(0)] * ns
        rhs = con.rhs
        for k, a in enumerate(con.coefficients):
            if a:
                rhs -= a * offsets[k]
                for col, s in subst[k]:
                    coefs[col] += a * s
        rows.append([coefs, con.relation, rhs])
    for col, ub in upper_rows:
        coefs = [Fraction(0)] * ns
        coefs[col] = Fraction(1)
        rows.append([coefs, LE, ub])
    for row in rows:
        if row[2] < 0:
            row[0] = [-a for a in row[0]]
            row[1] = _FLIP[row[1]]
            row[2] = -row[2]

    n_slack = sum(1 for _, rel, _ in rows if rel != EQ)
    n_art = sum(1 for _, rel, _ in rows if rel != LE)
    art_start = ns + n_slack
    total = art_start + n_art
    zero = Fraction(0)

    table = []
    basis = []
    slack = ns
    art = art_start
    phase1 = [zero] * (total + 1)
    for coefs, rel, rhs in rows:
        r = coefs + [zero] * (n_slack + n_art) + [rhs]
        if rel == LE:
            r[slack] = Fraction(1)
            basis.append(slack)
            slack += 1
        else:
            if rel == GE:
                r[slack] = Fraction(-1)
                slack += 1
            r[art] = Fraction(1)
            basis.append(art)
            art += 1
            phase1 = [w - x for w, x in zip(phase1, r)]
        table.append(r)
    for j in range(art_start, total):
        phase1[j] += 1
    phase2 = [zero] * (total + 1)
    for k, c in enumerate(objective):
        if c:
            for col, s in subst[k]:
                phase2[col] -= c * s

    m = len(table)
    int_rows, dens = [], []
    for r in table + [phase1, phase2]:
        ints, den = _int_row(r)
        int_rows.append(ints)
        dens.append(den)
    rhs_col = total

    if n_art:
        _kernels.bland(int_rows, dens, basis, m, m, [True] * total)
        if int_rows[m][rhs_col] < 0:
            return LPResult(Status.INFEASIBLE)
        i = 0
        while i < m:
            if basis[i] >= art_start:
                row = int_rows[i]
                j = next((j for j in range(art_start) if row[j]), -1)
                if j < 0:
                    # Redundant equality row: drop it.
                    del int_rows[i], dens[i], basis[i]
                    m -= 1
                    continue
                _kernels.pivot(int_rows, dens, i, j)
                basis[i] = j
            i += 1

    allowed = [j < art_start for j in range(total)]
    status = _kernels.bland(int_rows, dens, basis, m, m + 1, allowed)
    if status == _kernels.UNBOUNDED:
        return LPResult(Status.UNBOUNDED)

    values = [Fraction(0)] * total
    for i in range(m):
        values[basis[i]] = Fraction(int_rows[i][rhs_col], dens[i])
    x = tuple(
        offsets[k] + sum((s * values[col] for col, s in subst[k]), Fraction(0))
        for k in range(n))
    for con in lp.constraints:
        if not con.holds(x):
            raise RuntimeError("simplex returned a point violating a constraint")
    for (lo, hi), v in zip(bounds, x):
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise RuntimeError("simplex returned a point violating a bound")
    optimum = sum((c * v for c, v in zip(objective, x)), Fraction(0))
    return LPResult(Status.OPTIMAL, optimum, x)


def feasible_point(constraints, num_vars: Optional[int] = None,
                   bounds: Optional[Sequence[Bound]] = None) -> tuple:
    """Return an exact point satisfying every constraint.

    Raises :class:`Infeasible` when there is none.
    """
    constraints = [_as_constraint(c) for c in constraints]
    if num_vars is None:
        if not constraints:
            raise MalformedProgram("cannot infer the number of variables")
        num_vars = len(constraints[0].coefficients)
    result = solve(LinearProgram(num_vars, (), constraints, bounds))
    if result.status is not Status.OPTIMAL:
        raise Infeasible("constraints admit no point")
    return result.point
