"""Exact min-max solutions of the zero-sum comparison game.

Given a bimatrix game (R, C) with payoffs in [0, 1], the Kontogiannis and
Spirakis construction plays the zero-sum game (D, -D) with D = (R - C) / 2.
Both players' min-max linear programs are solved exactly; the two optima
must coincide, and the returned profile is an exact equilibrium of (D, -D).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError
from .game import BimatrixGame, MixedStrategy
from .lp import Constraint, LpProblem, LpStatus, Relation, Sense, solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ZeroSumSolution:
    """Row and column min-max strategies and the (row-perspective) value."""

    x: MixedStrategy
    y: MixedStrategy
    value: Fraction


def difference_matrix(game: BimatrixGame) -> tuple[tuple[Fraction, ...], ...]:
    """D = (R - C) / 2, entries in [-1/2, 1/2]."""
    return tuple(
        tuple((game.row_payoffs[i][j] - game.col_payoffs[i][j]) * HALF
              for j in range(game.cols))
        for i in range(game.rows))


def _row_minmax_lp(d, rows: int, cols: int) -> LpProblem:
    # Variables x_0..x_{rows-1}, v (free); maximize v with x^T D >= v per column.
    nvars = rows + 1
    cons = []
    for j in range(cols):
        coeffs = [d[i][j] for i in range(rows)] + [Fraction(-1)]
        cons.append(Constraint(tuple(coeffs), Relation.GE, ZERO))
    cons.append(Constraint(tuple([ONE] * rows + [ZERO]), Relation.EQ, ONE))
    objective = tuple([ZERO] * rows + [ONE])
    nonneg = tuple([True] * rows + [False])
    return LpProblem(num_vars=nvars, objective=objective, sense=Sense.MAXIMIZE,
                     constraints=tuple(cons), nonneg=nonneg)


def _col_minmax_lp(d, rows: int, cols: int) -> LpProblem:
    # Variables y_0..y_{cols-1}, w (free); minimize w with D y <= w per row.
    nvars = cols + 1
    cons = []
    for i in range(rows):
        coeffs = [d[i][j] for j in range(cols)] + [Fraction(-1)]
        cons.append(Constraint(tuple(coeffs), Relation.LE, ZERO))
    cons.append(Constraint(tuple([ONE] * cols + [ZERO]), Relation.EQ, ONE))
    objective = tuple([ZERO] * cols + [ONE])
    nonneg = tuple([True] * cols + [False])
    return LpProblem(num_vars=nvars, objective=objective, sense=Sense.MINIMIZE,
                     constraints=tuple(cons), nonneg=nonneg)


def ks_zero_sum(game: BimatrixGame) -> ZeroSumSolution:
    """Exact Nash equilibrium of (D, -D); value from the row perspective."""
    d = difference_matrix(game)
    row_sol = solve_lp(_row_minmax_lp(d, game.rows, game.cols))
    col_sol = solve_lp(_col_minmax_lp(d, game.rows, game.cols))
    if row_sol.status is not LpStatus.OPTIMAL or col_sol.status is not LpStatus.OPTIMAL:
        raise InternalError("min-max programs over a simplex must be solvable")
    value = row_sol.objective_value
    if value != col_sol.objective_value:
        raise InternalError(
            f"min-max equality violated: {value} != {col_sol.objective_value}")
    x = MixedStrategy(row_sol.assignment[:game.rows])
    y = MixedStrategy(col_sol.assignment[:game.cols])
    for i in range(game.rows):
        attained = sum((d[i][j] * y.probs[j] for j in range(game.cols)), ZERO)
        if attained > value:
            raise InternalError("column strategy concedes more than the value")
    for j in range(game.cols):
        attained = sum((d[i][j] * x.probs[i] for i in range(game.rows)), ZERO)
        if attained < value:
            raise InternalError("row strategy fails to guarantee the value")
    return ZeroSumSolution(x=x, y=y, value=value)
