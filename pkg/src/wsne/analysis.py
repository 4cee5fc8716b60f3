"""Diagnostics for zero-sum profiles: bad rows, column classes, improvements.

Fix a column strategy y and a threshold parameter z > 0.  A row is *bad*
when its payoff against y exceeds 2/3 - z; its ``badness`` b is defined by
payoff = 2/3 + 2z - b*z, so bad means b < 3 and payoffs within the zero-sum
bound 2/3 + 2z mean b >= 0.  Each row splits the columns into *big* ones
(row payoff >= 2/3 + 2z), *small* ones (column payoff >= 2/3 + 2z), and the
rest.  Everything here presumes the game has no cell where both payoffs
reach 1/3 + z (such a cell is already a pure (2/3 - z)-WSNE); checkers
either take that as attested or detect and report the violation instead of
producing a verdict.

The improvement step moves all of y's probability from the worst bad row's
big columns onto its small columns (rescaled proportionally), and ``shifted``
mixes the original and improved strategies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError, RescaleUndefinedError
from .game import (BimatrixGame, MixedStrategy, Profile, epsilon_wsne,
                   payoff_col, payoff_row)
from .rational import as_rational

ZERO = Fraction(0)
ONE = Fraction(1)
THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class ColumnPartition:
    """Big / small / other column classes of one row at threshold 2/3 + 2z.

    A column can satisfy both thresholds only when some cell has both
    payoffs >= 2/3 + 2z; such columns are listed in ``overlap`` and left in
    both classes rather than resolved silently.
    """

    big: frozenset[int]
    small: frozenset[int]
    other: frozenset[int]
    overlap: frozenset[int]
    z: Fraction


@dataclass(frozen=True)
class BadRowReport:
    """Badness and class masses of one row against a column strategy."""

    row: int
    badness: Fraction
    is_bad: bool                  # badness < 3, i.e. payoff above 2/3 - z
    payoff_within_bound: bool     # badness >= 0, i.e. payoff <= 2/3 + 2z
    partition: ColumnPartition
    mass_big: Fraction
    mass_small: Fraction
    mass_other: Fraction


@dataclass(frozen=True)
class MassBoundsCheck:
    """Slacks of the three probability-mass bounds for a bad row.

    other_slack:  (2 b z / (1/3 - 2z)) - mass_other          (Markov bound)
    big_slack:    mass_big - required minimum big mass
    small_slack:  mass_small - required minimum small mass
    """

    holds: bool
    other_slack: Fraction
    big_slack: Fraction
    small_slack: Fraction


@dataclass(frozen=True)
class BadRowAudit:
    """Cell-sum bound on other columns plus the re-derived mass bounds.

    When the no-good-pure-cell hypothesis fails, ``hypothesis_ok`` is False,
    the offending cells are listed, and no verdict is produced.
    """

    hypothesis_ok: bool
    violating_cells: tuple[tuple[int, int], ...]
    cell_sum_ok: bool | None = None
    cell_sum_failures: tuple[int, ...] = ()
    mass_bounds: MassBoundsCheck | None = None

    @property
    def holds(self) -> bool:
        return bool(self.hypothesis_ok and self.cell_sum_ok
                    and self.mass_bounds.holds)


@dataclass(frozen=True)
class IntersectionMass:
    """y-mass on the nine intersections of two rows' column classes.

    The first letter is the class in the reference (worst bad) row's
    partition, the second the class in the compared row's partition.
    """

    bb: Fraction
    bs: Fraction
    bo: Fraction
    sb: Fraction
    ss: Fraction
    so: Fraction
    ob: Fraction
    os: Fraction
    oo: Fraction

    @property
    def total(self) -> Fraction:
        return (self.bb + self.bs + self.bo + self.sb + self.ss + self.so
                + self.ob + self.os + self.oo)


def good_pure_cells(game: BimatrixGame, z) -> tuple[tuple[int, int], ...]:
    """Cells where both payoffs reach 1/3 + z (each is a pure (2/3-z)-WSNE)."""
    z = as_rational(z)
    bar = THIRD + z
    return tuple((i, j)
                 for i in range(game.rows)
                 for j in range(game.cols)
                 if game.row_payoffs[i][j] >= bar
                 and game.col_payoffs[i][j] >= bar)


def partition_columns(game: BimatrixGame, i: int, z) -> ColumnPartition:
    """Classify row i's columns at threshold 2/3 + 2z; overlaps are flagged."""
    z = as_rational(z)
    if not ZERO <= z < Fraction(1, 6):
        raise ValueError("z must lie in [0, 1/6) for a meaningful threshold")
    if not 0 <= i < game.rows:
        raise ValueError(f"row index {i} out of range")
    threshold = TWO_THIRDS + 2 * z
    big = frozenset(j for j in range(game.cols)
                    if game.row_payoffs[i][j] >= threshold)
    small = frozenset(j for j in range(game.cols)
                      if game.col_payoffs[i][j] >= threshold)
    other = frozenset(range(game.cols)) - big - small
    return ColumnPartition(big=big, small=small, other=other,
                           overlap=big & small, z=z)


def _mass(y: MixedStrategy, members) -> Fraction:
    total = ZERO
    for j in members:
        total += y.probs[j]
    return total


def bad_row_report(game: BimatrixGame, i: int, y: MixedStrategy,
                   z) -> BadRowReport:
    """Badness of row i against y, with the class masses of its partition."""
    z = as_rational(z)
    if z <= ZERO:
        raise ValueError("badness is undefined at z = 0")
    part = partition_columns(game, i, z)
    payoff = payoff_row(game, i, y)
    badness = (TWO_THIRDS + 2 * z - payoff) / z
    return BadRowReport(row=i, badness=badness,
                        is_bad=badness < 3,
                        payoff_within_bound=badness >= 0,
                        partition=part,
                        mass_big=_mass(y, part.big),
                        mass_small=_mass(y, part.small),
                        mass_other=_mass(y, part.other))


def _mass_bound_slacks(badness: Fraction, mass_big: Fraction,
                       mass_small: Fraction, mass_other: Fraction,
                       z: Fraction) -> MassBoundsCheck:
    alpha = THIRD + z
    beta = TWO_THIRDS - z
    gamma = THIRD - 2 * z
    other_slack = 2 * badness * z / gamma - mass_other
    big_slack = mass_big - (alpha - badness * z - alpha * mass_other) / beta
    small_slack = mass_small - (gamma - badness * z - alpha * mass_other) / beta
    holds = other_slack >= 0 and big_slack >= 0 and small_slack >= 0
    return MassBoundsCheck(holds=holds, other_slack=other_slack,
                           big_slack=big_slack, small_slack=small_slack)


def check_mass_bounds(report: BadRowReport) -> MassBoundsCheck:
    """The three mass bounds for a bad row; the caller attests that the game
    has no good pure cell and that the profile came from the zero-sum game."""
    return _mass_bound_slacks(report.badness, report.mass_big,
                              report.mass_small, report.mass_other,
                              report.partition.z)


def check_bad_row_bounds(game: BimatrixGame, i: int, y: MixedStrategy,
                         z) -> BadRowAudit:
    """Cell-sum bound (R + C < 1 + 3z on other columns) plus the mass bounds.

    Detects a failed no-good-pure-cell hypothesis itself and reports it
    instead of a verdict.
    """
    z = as_rational(z)
    violations = good_pure_cells(game, z)
    if violations:
        return BadRowAudit(hypothesis_ok=False, violating_cells=violations)
    report = bad_row_report(game, i, y, z)
    limit = ONE + 3 * z
    failures = tuple(j for j in sorted(report.partition.other)
                     if game.row_payoffs[i][j] + game.col_payoffs[i][j] >= limit)
    return BadRowAudit(hypothesis_ok=True, violating_cells=(),
                       cell_sum_ok=not failures, cell_sum_failures=failures,
                       mass_bounds=check_mass_bounds(report))


def find_matching_pennies(game: BimatrixGame, z):
    """Lowest-index rows i < i2 and columns j, j2 such that j is big for i and
    small for i2 while j2 is big for i2 and small for i; None when absent.

    Membership depends only on payoffs and z, so detection is game-wide.
    """
    z = as_rational(z)
    if z < ZERO:
        raise ValueError("z must be nonnegative")
    threshold = TWO_THIRDS + 2 * z
    big = [frozenset(j for j in range(game.cols)
                     if game.row_payoffs[i][j] >= threshold)
           for i in range(game.rows)]
    small = [frozenset(j for j in range(game.cols)
                       if game.col_payoffs[i][j] >= threshold)
             for i in range(game.rows)]
    for i, i2 in itertools.combinations(range(game.rows), 2):
        first = big[i] & small[i2]
        if not first:
            continue
        second = big[i2] & small[i]
        if not second:
            continue
        for j in sorted(first):
            for j2 in sorted(second):
                if j2 != j:
                    return (i, i2, j, j2)
    return None


def matching_pennies_profile(game: BimatrixGame, quad, z) -> Profile:
    """Uniform 2x2 profile on a matching-pennies quadruple.

    All four supported payoffs are at least 1/3 + z, so the profile is a
    (2/3 - z)-WSNE; that is re-verified before returning.
    """
    z = as_rational(z)
    i, i2, j, j2 = quad
    threshold = TWO_THIRDS + 2 * z
    if i == i2 or j == j2:
        raise ValueError("quadruple must use two distinct rows and columns")
    if not (game.row_payoffs[i][j] >= threshold
            and game.col_payoffs[i2][j] >= threshold
            and game.row_payoffs[i2][j2] >= threshold
            and game.col_payoffs[i][j2] >= threshold):
        raise ValueError("quadruple is not a matching-pennies sub-game at this z")
    profile = Profile(MixedStrategy.uniform_on(game.rows, (i, i2)),
                      MixedStrategy.uniform_on(game.cols, (j, j2)))
    cert = epsilon_wsne(game, profile)
    if cert.epsilon > TWO_THIRDS - z:
        raise InternalError("matching-pennies profile exceeded its bound")
    return profile


def worst_bad_row(game: BimatrixGame, y: MixedStrategy) -> int:
    """Row with the highest payoff against y, lowest index on ties."""
    best_i, best_v = 0, payoff_row(game, 0, y)
    for i in range(1, game.rows):
        v = payoff_row(game, i, y)
        if v > best_v:
            best_i, best_v = i, v
    return best_i


def improvement_strategy(game: BimatrixGame, y: MixedStrategy,
                         z) -> MixedStrategy:
    """Move all of y's mass on the worst bad row's big columns onto its small
    columns, rescaling those proportionally; other columns are untouched.

    Returns y unchanged when the big columns carry no mass.  Raises
    ``RescaleUndefinedError`` when mass must move but the small columns carry
    none, and rejects games whose big/small classes overlap (a hypothesis
    violation: some cell has both payoffs >= 2/3 + 2z).
    """
    z = as_rational(z)
    if z <= ZERO:
        raise ValueError("the improvement step needs z > 0")
    if y.size != game.cols:
        raise ValueError("strategy length does not match column count")
    ibar = worst_bad_row(game, y)
    part = partition_columns(game, ibar, z)
    if part.overlap:
        raise ValueError(
            f"columns {sorted(part.overlap)} are both big and small; "
            "the game has a good pure cell")
    mass_big = _mass(y, part.big)
    if mass_big == ZERO:
        return y
    mass_small = _mass(y, part.small)
    if mass_small == ZERO:
        raise RescaleUndefinedError(
            "no probability on the small columns to rescale onto")
    factor = ONE + mass_big / mass_small
    probs = list(y.probs)
    for j in part.big:
        probs[j] = ZERO
    for j in part.small:
        probs[j] = y.probs[j] * factor
    return MixedStrategy(tuple(probs))


def shifted(y: MixedStrategy, y_improved: MixedStrategy, t) -> MixedStrategy:
    """Exact convex combination (1 - t) * y + t * y_improved."""
    t = as_rational(t)
    if not ZERO <= t <= ONE:
        raise ValueError("t must lie in [0, 1]")
    if y.size != y_improved.size:
        raise ValueError("strategies must have equal length")
    return MixedStrategy(tuple((ONE - t) * a + t * b
                               for a, b in zip(y.probs, y_improved.probs)))


def _classify(part: ColumnPartition, j: int) -> str:
    if j in part.big:
        return "b"
    if j in part.small:
        return "s"
    return "o"


def intersection_mass(game: BimatrixGame, i: int, ibar: int,
                      y: MixedStrategy, z) -> IntersectionMass:
    """The nine intersection masses between ibar's and i's column classes."""
    z = as_rational(z)
    part_bar = partition_columns(game, ibar, z)
    part_i = partition_columns(game, i, z)
    for who, part in (("reference", part_bar), ("compared", part_i)):
        if part.overlap:
            raise ValueError(
                f"{who} row has columns {sorted(part.overlap)} in both "
                "big and small classes; the game has a good pure cell")
    buckets = {key: ZERO for key in
               ("bb", "bs", "bo", "sb", "ss", "so", "ob", "os", "oo")}
    for j, p in enumerate(y.probs):
        if p:
            buckets[_classify(part_bar, j) + _classify(part_i, j)] += p
    return IntersectionMass(bb=buckets["bb"], bs=buckets["bs"], bo=buckets["bo"],
                            sb=buckets["sb"], ss=buckets["ss"], so=buckets["so"],
                            ob=buckets["ob"], os=buckets["os"], oo=buckets["oo"])
