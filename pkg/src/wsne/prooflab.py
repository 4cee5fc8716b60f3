"""Machine-checked certificate search for the solver's approximation constant.

For parameters z (target improvement over 2/3) and t (how far the column
strategy is shifted toward its improved version), an eleven-variable linear
program upper-bounds the best row payoff against the shifted strategy over
*all* games that survive the pure and 2x2 searches.  Nine variables are the
probability masses on the intersections of the worst bad row's column
classes with another row's classes, and two more carry the badness of those
rows.  The parameter k pins one of the crossed masses (big/small or
small/big) to zero, which is justified because both being positive yields a
matching-pennies sub-game and the 2x2 search would already have won.

A witness (z, t0, t1) certifies value <= 2/3 - z for both pinned cases and
hence the overall guarantee.  ``find_witness`` reproduces the grid search
that certifies z = 5913759/10^9; everything is exact rational arithmetic,
and the boundary really is sharp at the ninth decimal (z = 5913760/10^9 has
no witness on the same grid).
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError
from .lp import Constraint, LpProblem, LpStatus, Relation, Sense, solve_lp
from .lp import check_solution
from .rational import as_rational

ZERO = Fraction(0)
ONE = Fraction(1)
THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)

#: The largest z certified by the published grid search.
WITNESS_Z = Fraction(5913759, 10 ** 9)

#: Default shift grid: t in {0, 1/1000, ..., 200/1000}.
DEFAULT_T_STEP = Fraction(1, 1000)
DEFAULT_T_MAX = Fraction(1, 5)

#: Default z bracket scanned by ``find_witness``.
DEFAULT_Z_LO = Fraction(59137, 10 ** 7)
DEFAULT_Z_HI = Fraction(59138, 10 ** 7)
DEFAULT_Z_STEP = Fraction(1, 10 ** 9)


class PinnedMass(enum.Enum):
    """Which crossed intersection mass the program pins to zero."""

    BS = 0   # mass on (big for worst row) x (small for compared row)
    SB = 1   # mass on (small for worst row) x (big for compared row)


def z_within_bound(z) -> bool:
    """Exact feasibility of z for the rescale bound at worst badness 3."""
    z = as_rational(z)
    if z < ZERO or z >= Fraction(1, 6):
        return False
    return 5 * z + (THIRD + z) * (6 * z) / (THIRD - 2 * z) < THIRD


def rescale_factor_bound(z, badness) -> Fraction:
    """Upper bound on 1 + (big mass / small mass) for a row of the given
    badness; monotone in badness, equals 2 at z = 0."""
    z = as_rational(z)
    b = as_rational(badness)
    gamma = THIRD - 2 * z
    if gamma <= ZERO:
        raise ValueError("z too large: other-column bound degenerates")
    denom = gamma - b * z - (THIRD + z) * (2 * b * z) / gamma
    if denom <= ZERO:
        raise ValueError("z too large: rescale bound denominator not positive")
    return ONE + (THIRD + z + b * z) / denom


@dataclass(frozen=True)
class ShiftLpParams:
    """Parameters of one shift-bound program."""

    z: Fraction
    t: Fraction
    k: PinnedMass

    def __post_init__(self):
        object.__setattr__(self, "z", as_rational(self.z))
        object.__setattr__(self, "t", as_rational(self.t))
        if not ZERO <= self.t <= ONE:
            raise ValueError("t must lie in [0, 1]")
        if not z_within_bound(self.z):
            raise ValueError(f"z = {self.z} outside the certified range")


# Variable order within the program.
VAR_NAMES = ("bb", "bs", "bo", "sb", "ss", "so", "ob", "os", "oo",
             "badness", "worst_badness")
_BB, _BS, _BO, _SB, _SS, _SO, _OB, _OS, _OO, _Q, _QBAR = range(11)


def build_shift_lp(params: ShiftLpParams) -> LpProblem:
    """The eleven-variable program bounding the best payoff after the shift.

    Mass lower/upper bounds appear once for the worst bad row and once for
    the compared row (denominators cleared, which changes nothing over the
    rationals); one crossed mass is pinned by k; badness of the worst row is
    capped at 3 and never exceeds the compared row's; the nine masses form a
    distribution and everything is nonnegative.
    """
    z, t = params.z, params.t
    alpha = THIRD + z
    beta = TWO_THIRDS - z
    gamma = THIRD - 2 * z
    delta = TWO_THIRDS + 2 * z
    factor = rescale_factor_bound(z, 3)

    def row(**coeffs) -> list[Fraction]:
        out = [ZERO] * 11
        for name, v in coeffs.items():
            out[VAR_NAMES.index(name)] = v
        return out

    cons = [
        Constraint(row(bb=beta, bs=beta, bo=beta, ob=alpha, os=alpha, oo=alpha,
                       worst_badness=z), Relation.GE, alpha),
        Constraint(row(bb=beta, sb=beta, ob=beta, bo=alpha, so=alpha, oo=alpha,
                       badness=z), Relation.GE, alpha),
        Constraint(row(sb=beta, ss=beta, so=beta, ob=alpha, os=alpha, oo=alpha,
                       worst_badness=z), Relation.GE, gamma),
        Constraint(row(bs=beta, ss=beta, os=beta, bo=alpha, so=alpha, oo=alpha,
                       badness=z), Relation.GE, gamma),
        Constraint(row(ob=gamma, os=gamma, oo=gamma, worst_badness=-2 * z),
                   Relation.LE, ZERO),
        Constraint(row(bo=gamma, so=gamma, oo=gamma, badness=-2 * z),
                   Relation.LE, ZERO),
        Constraint(row(bs=ONE) if params.k is PinnedMass.BS else row(sb=ONE),
                   Relation.EQ, ZERO),
        Constraint(row(worst_badness=ONE), Relation.LE, Fraction(3)),
        Constraint(row(worst_badness=ONE, badness=-ONE), Relation.LE, ZERO),
        Constraint(row(bb=ONE, bs=ONE, bo=ONE, sb=ONE, ss=ONE, so=ONE,
                       ob=ONE, os=ONE, oo=ONE), Relation.EQ, ONE),
    ]

    objective = row(badness=-(ONE - t) * z,
                    sb=t * factor, ss=t * factor * alpha, so=t * factor * delta,
                    ob=t, os=t * alpha, oo=t * delta)
    return LpProblem(num_vars=11, objective=tuple(objective),
                     sense=Sense.MAXIMIZE, constraints=tuple(cons),
                     objective_offset=(ONE - t) * delta)


def shift_lp_value(params: ShiftLpParams) -> Fraction:
    """Exact optimum of the shift-bound program (always feasible, bounded)."""
    problem = build_shift_lp(params)
    sol = solve_lp(problem)
    if sol.status is not LpStatus.OPTIMAL:
        raise InternalError(f"shift program returned {sol.status.value}")
    check_solution(problem, sol)
    return sol.objective_value


def _t_grid(t_max: Fraction, t_step: Fraction):
    count = int(t_max / t_step)
    return [m * t_step for m in range(count + 1)]


def find_best_shift(z, k: PinnedMass, t_max=DEFAULT_T_MAX,
                    t_step=DEFAULT_T_STEP) -> tuple[Fraction, Fraction]:
    """Grid-search t for the smallest program value; earliest t on ties."""
    z = as_rational(z)
    best_value = None
    best_t = ZERO
    for t in _t_grid(as_rational(t_max), as_rational(t_step)):
        value = shift_lp_value(ShiftLpParams(z=z, t=t, k=k))
        if best_value is None or value < best_value:
            best_value = value
            best_t = t
    return best_value, best_t


@dataclass(frozen=True)
class WitnessReport:
    """A z with the shift values certifying it for both pinned cases."""

    z: Fraction
    t0: Fraction          # best shift with the big/small crossed mass pinned
    t1: Fraction          # best shift with the small/big crossed mass pinned
    sol_k0: Fraction
    sol_k1: Fraction
    verified: bool

    @classmethod
    def assemble(cls, z, s0, t0, s1, t1) -> "WitnessReport":
        bound = TWO_THIRDS - z
        return cls(z=z, t0=t0, t1=t1, sol_k0=s0, sol_k1=s1,
                   verified=s0 <= bound and s1 <= bound)


def _probe(args) -> WitnessReport:
    z, t_max, t_step = args
    s0, t0 = find_best_shift(z, PinnedMass.BS, t_max, t_step)
    s1, t1 = find_best_shift(z, PinnedMass.SB, t_max, t_step)
    return WitnessReport.assemble(z, s0, t0, s1, t1)


def find_witness(z_lo=DEFAULT_Z_LO, z_hi=DEFAULT_Z_HI, z_step=DEFAULT_Z_STEP,
                 t_max=DEFAULT_T_MAX, t_step=DEFAULT_T_STEP,
                 jobs: int = 1) -> WitnessReport | None:
    """Scan z ascending; return the largest z whose both shift values stay
    within 2/3 - z, or None.  Every grid z must lie in the certified range."""
    z_lo, z_hi = as_rational(z_lo), as_rational(z_hi)
    z_step = as_rational(z_step)
    t_max, t_step = as_rational(t_max), as_rational(t_step)
    if z_step <= ZERO:
        raise ValueError("z_step must be positive")
    grid = []
    z = z_lo
    while z <= z_hi:
        if not z_within_bound(z):
            raise ValueError(f"z = {z} outside the certified range")
        grid.append(z)
        z += z_step
    if not grid:
        return None
    tasks = [(z, t_max, t_step) for z in grid]
    if jobs > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_probe, tasks))
    else:
        reports = [_probe(task) for task in tasks]
    accepted = None
    for report in reports:
        if report.verified:
            accepted = report
    return accepted
