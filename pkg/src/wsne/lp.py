"""Exact rational linear programming: two-phase simplex with Bland's rule.

The solver is fully deterministic (lowest-index entering column; ratio ties
broken by lowest basic variable index) and never rounds: every tableau row is
stored as a vector of integers together with a positive denominator, so
pivoting is pure integer arithmetic and the extracted optimum is an exact
rational point.  Bland's rule guarantees termination on degenerate problems.

Solutions report the optimal basis (standard-form column indices in row
order) and the final reduced costs z_j - c_j of the canonical maximization,
which are all >= 0 at optimality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import InternalError
from .rational import as_rational

ZERO = Fraction(0)


class Relation(enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class Sense(enum.Enum):
    MAXIMIZE = "max"
    MINIMIZE = "min"


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _rational_tuple(values):
    return tuple(v if type(v) is Fraction else as_rational(v) for v in values)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _rational_tuple(self.coeffs))
        object.__setattr__(self, "rhs", as_rational(self.rhs))


@dataclass(frozen=True)
class LpProblem:
    """min/max of objective . x (+ offset) over linear constraints.

    Variables are nonnegative unless flagged free in ``nonneg``; free
    variables are handled internally by sign splitting.
    """

    num_vars: int
    objective: tuple[Fraction, ...]
    sense: Sense
    constraints: tuple[Constraint, ...]
    nonneg: tuple[bool, ...] | None = None
    objective_offset: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "objective", _rational_tuple(self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "objective_offset",
                           as_rational(self.objective_offset))
        if self.num_vars < 1:
            raise ValueError("problem needs at least one variable")
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length does not match num_vars")
        if self.nonneg is not None and len(self.nonneg) != self.num_vars:
            raise ValueError("nonneg length does not match num_vars")
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint length does not match num_vars")


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    objective_value: Fraction | None = None
    assignment: tuple[Fraction, ...] | None = None
    basis: tuple[int, ...] | None = None
    reduced_costs: tuple[Fraction, ...] | None = None


_MAX_PIVOTS = 1_000_000


def _reduce_row(row: list[int], den: int) -> tuple[list[int], int]:
    """Divide out the gcd of a row and its positive denominator.

    Skipped while the denominator is still machine-word sized: the pair
    (row, den) denotes row/den exactly whether or not common factors remain,
    so reduction only controls growth and can wait until numbers get large.
    """
    if den.bit_length() <= 48:
        return row, den
    g = den
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row, den
    if g > 1:
        return [v // g for v in row], den // g
    return row, den


class _Tableau:
    """Mutable simplex state over integer-scaled rows."""

    def __init__(self, rows, dens, basis, enterable):
        self.rows = rows            # list[list[int]], last entry is the rhs
        self.dens = dens            # positive per-row denominators
        self.basis = basis          # basic column per row
        self.enterable = enterable  # candidate entering columns, ascending
        self.objs = []              # extra rows updated by pivots
        self.obj_dens = []
        self.pivots = 0

    def add_objective(self, row: list[int], den: int) -> int:
        self.objs.append(row)
        self.obj_dens.append(den)
        return len(self.objs) - 1

    def pivot(self, p: int, q: int) -> None:
        self.pivots += 1
        if self.pivots > _MAX_PIVOTS:
            raise InternalError("pivot limit exceeded; cycling suspected")
        rows, dens = self.rows, self.dens
        prow = rows[p]
        piv = prow[q]
        for i in range(len(rows)):
            if i == p:
                continue
            f = rows[i][q]
            if f:
                row = rows[i]
                new = [piv * a - f * b for a, b in zip(row, prow)]
                nden = dens[i] * piv
                if nden < 0:
                    nden = -nden
                    new = [-v for v in new]
                rows[i], dens[i] = _reduce_row(new, nden)
        for k in range(len(self.objs)):
            f = self.objs[k][q]
            if f:
                new = [piv * a - f * b for a, b in zip(self.objs[k], prow)]
                nden = self.obj_dens[k] * piv
                if nden < 0:
                    nden = -nden
                    new = [-v for v in new]
                self.objs[k], self.obj_dens[k] = _reduce_row(new, nden)
        if piv < 0:
            rows[p] = [-v for v in prow]
            dens[p] = -piv
        else:
            dens[p] = piv
        rows[p], dens[p] = _reduce_row(rows[p], dens[p])
        self.basis[p] = q

    def run(self, obj_index: int) -> str:
        """Maximize the given objective row; returns "optimal" or "unbounded"."""
        rows, basis = self.rows, self.basis
        while True:
            orow = self.objs[obj_index]
            q = -1
            for j in self.enterable:
                if orow[j] < 0:
                    q = j
                    break
            if q < 0:
                return "optimal"
            p = -1
            for i in range(len(rows)):
                a = rows[i][q]
                if a > 0:
                    if p < 0:
                        p = i
                        continue
                    lhs = rows[i][-1] * rows[p][q]
                    rhs = rows[p][-1] * a
                    if lhs < rhs or (lhs == rhs and basis[i] < basis[p]):
                        p = i
            if p < 0:
                return "unbounded"
            self.pivot(p, q)


def _scale_to_ints(values) -> tuple[list[int], int]:
    """Multiply rationals by the lcm of denominators; returns ints and scale."""
    scale = 1
    for v in values:
        d = v.denominator
        if d != 1:
            scale = lcm(scale, d)
    return [v.numerator * (scale // v.denominator) for v in values], scale


def solve_lp(problem: LpProblem) -> LpSolution:
    """Exact optimum of an LpProblem; deterministic basis and assignment."""
    n = problem.num_vars
    nonneg = problem.nonneg if problem.nonneg is not None else (True,) * n

    # Structural columns; free variables split into positive/negative parts.
    pos_col: list[int] = []
    neg_col: list[int | None] = []
    s = 0
    for j in range(n):
        pos_col.append(s)
        s += 1
        if nonneg[j]:
            neg_col.append(None)
        else:
            neg_col.append(s)
            s += 1
    n_struct = s

    # Normalize constraints: slack-friendly orientation, integer rows.
    prepared = []  # (int coeffs over structural cols, relation, int rhs)
    for con in problem.constraints:
        coeffs = []
        for j in range(n):
            coeffs.append(con.coeffs[j])
            if neg_col[j] is not None:
                coeffs.append(-con.coeffs[j])
        rhs = con.rhs
        rel = con.relation
        flip = (rhs < 0) if rel is not Relation.GE else (rhs <= 0)
        if flip:
            coeffs = [-v for v in coeffs]
            rhs = -rhs
            if rel is Relation.LE:
                rel = Relation.GE
            elif rel is Relation.GE:
                rel = Relation.LE
        ints, _ = _scale_to_ints(coeffs + [rhs])
        prepared.append((ints[:-1], rel, ints[-1]))

    m = len(prepared)
    slack_of: list[int | None] = [None] * m
    art_of: list[int | None] = [None] * m
    col = n_struct
    for idx, (_, rel, _) in enumerate(prepared):
        if rel in (Relation.LE, Relation.GE):
            slack_of[idx] = col
            col += 1
    for idx, (_, rel, _) in enumerate(prepared):
        if rel in (Relation.GE, Relation.EQ):
            art_of[idx] = col
            col += 1
    total = col
    width = total + 1
    art_start = total - sum(1 for a in art_of if a is not None)

    rows: list[list[int]] = []
    dens: list[int] = []
    basis: list[int] = []
    for idx, (coeffs, rel, rhs) in enumerate(prepared):
        row = [0] * width
        row[:n_struct] = coeffs
        row[-1] = rhs
        if slack_of[idx] is not None:
            row[slack_of[idx]] = 1 if rel is Relation.LE else -1
        if art_of[idx] is not None:
            row[art_of[idx]] = 1
            basis.append(art_of[idx])
        else:
            basis.append(slack_of[idx])
        rows.append(row)
        dens.append(1)

    enterable = list(range(art_start))
    tab = _Tableau(rows, dens, basis, enterable)

    # Phase-2 cost row, canonical maximization, carried through both phases.
    canon = list(problem.objective)
    if problem.sense is Sense.MINIMIZE:
        canon = [-v for v in canon]
    cost = [ZERO] * total
    for j in range(n):
        cost[pos_col[j]] = canon[j]
        if neg_col[j] is not None:
            cost[neg_col[j]] = -canon[j]
    cost_ints, cost_scale = _scale_to_ints(cost)
    obj2 = [-v for v in cost_ints] + [0]
    i_obj2 = tab.add_objective(obj2, 1)

    # Phase 1: drive the artificial variables to zero.
    if art_start < total:
        obj1 = [0] * width
        for idx in range(m):
            if art_of[idx] is not None:
                row = rows[idx]
                for j in range(width):
                    if row[j]:
                        obj1[j] -= row[j]
        for j in range(art_start, total):
            obj1[j] += 1
        i_obj1 = tab.add_objective(obj1, 1)
        outcome = tab.run(i_obj1)
        if outcome != "optimal":
            raise InternalError("phase 1 cannot be unbounded")
        if tab.objs[i_obj1][-1] != 0:
            return LpSolution(status=LpStatus.INFEASIBLE)
        # Pivot lingering artificial basics out; drop redundant rows.
        redundant = []
        for i in range(len(tab.rows)):
            if tab.basis[i] >= art_start:
                q = -1
                for j in enterable:
                    if tab.rows[i][j] != 0:
                        q = j
                        break
                if q < 0:
                    redundant.append(i)
                else:
                    tab.pivot(i, q)
        for i in reversed(redundant):
            del tab.rows[i]
            del tab.dens[i]
            del tab.basis[i]
        tab.objs.pop(i_obj1)
        tab.obj_dens.pop(i_obj1)

    outcome = tab.run(i_obj2)
    if outcome == "unbounded":
        return LpSolution(status=LpStatus.UNBOUNDED)

    struct_values = [ZERO] * n_struct
    for i, b in enumerate(tab.basis):
        if b < n_struct:
            struct_values[b] = Fraction(tab.rows[i][-1], tab.dens[i])
    assignment = []
    for j in range(n):
        v = struct_values[pos_col[j]]
        if neg_col[j] is not None:
            v -= struct_values[neg_col[j]]
        assignment.append(v)

    value = problem.objective_offset
    for c, v in zip(problem.objective, assignment):
        if c and v:
            value += c * v

    rc_den = tab.obj_dens[i_obj2] * cost_scale
    reduced = tuple(Fraction(v, rc_den) for v in tab.objs[i_obj2][:-1])

    return LpSolution(status=LpStatus.OPTIMAL,
                      objective_value=value,
                      assignment=tuple(assignment),
                      basis=tuple(tab.basis),
                      reduced_costs=reduced)


def check_solution(problem: LpProblem, solution: LpSolution) -> None:
    """Substitute an Optimal solution back into the problem; raise if violated."""
    if solution.status is not LpStatus.OPTIMAL:
        return
    x = solution.assignment
    nonneg = problem.nonneg if problem.nonneg is not None else (True,) * problem.num_vars
    for j, flag in enumerate(nonneg):
        if flag and x[j] < 0:
            raise InternalError(f"variable {j} negative: {x[j]}")
    for k, con in enumerate(problem.constraints):
        lhs = sum((c * v for c, v in zip(con.coeffs, x)), ZERO)
        ok = (lhs <= con.rhs if con.relation is Relation.LE
              else lhs >= con.rhs if con.relation is Relation.GE
              else lhs == con.rhs)
        if not ok:
            raise InternalError(
                f"constraint {k} violated: {lhs} {con.relation.value} {con.rhs}")
    value = problem.objective_offset
    for c, v in zip(problem.objective, x):
        value += c * v
    if value != solution.objective_value:
        raise InternalError("objective value does not match assignment")
