"""Canonical fixtures, seeded random games, and planted instances.

The two fixed fixtures are the classic worst cases for the zero-sum
relaxation baseline: a 2x2 game with crosswise high/low payoffs where
shifting column probability repairs the profile, and its 3x2 extension with
an all-zeros row where shifting fails and only a matching-pennies sub-game
helps.  Their difference matrices D = (R - C)/2 are pinned by tests.

Random generation is deterministic from the seed; rational-grid entries are
drawn directly as fractions k/d so no float ever enters a payoff.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .game import BimatrixGame
from .rational import as_rational

THIRD = Fraction(1, 3)


class GameKind(enum.Enum):
    KS_WORST_2X2 = "ks-worst-2x2"
    KS_WORST_3X2 = "ks-worst-3x2"
    RANDOM_UNIFORM = "uniform"
    RANDOM_RATIONAL_GRID = "grid"
    PURE_NE_PLANTED = "pure-ne"
    MATCHING_PENNIES_PLANTED = "matching-pennies"


@dataclass(frozen=True)
class GameSpecSeed:
    """Deterministic recipe for a generated game."""

    kind: GameKind
    dims: tuple[int, int] = (3, 3)
    seed: int = 0
    grid_denominator: int = 12

    def __post_init__(self):
        if self.dims[0] < 1 or self.dims[1] < 1:
            raise ValueError("dims must be positive")
        if self.grid_denominator < 1:
            raise ValueError("grid denominator must be >= 1")


def ks_worst_case_2x2(delta=0, padded_rows: int = 0) -> BimatrixGame:
    """2x2 crosswise game: R pairs (1, 1/3-delta), C the mirror image.

    With delta = 0 its difference matrix is [[1/3, -1/3], [-1/3, 1/3]].
    ``padded_rows`` appends that many all-zero rows to both matrices.
    """
    d = as_rational(delta)
    if not 0 <= d < THIRD:
        raise ValueError("delta must lie in [0, 1/3)")
    lo = THIRD - d
    r = [[Fraction(1), lo], [lo, Fraction(1)]]
    c = [[lo, Fraction(1)], [Fraction(1), lo]]
    for _ in range(padded_rows):
        r.append([Fraction(0), Fraction(0)])
        c.append([Fraction(0), Fraction(0)])
    return BimatrixGame.from_payoffs(r, c)


def ks_worst_case_3x2() -> BimatrixGame:
    """3x2 game: two crosswise (1, 1/3) rows plus an all-zeros row.

    Its difference matrix is [[1/3, -1/3], [-1/3, 1/3], [0, 0]]; the pure
    zero row with uniform columns is a zero-sum equilibrium that is only a
    (2/3)-WSNE of the game itself.
    """
    one, zero = Fraction(1), Fraction(0)
    r = [[one, THIRD], [THIRD, one], [zero, zero]]
    c = [[THIRD, one], [one, THIRD], [zero, zero]]
    return BimatrixGame.from_payoffs(r, c)


def _grid_matrix(rng: random.Random, rows: int, cols: int, d: int):
    return [[Fraction(rng.randint(0, d), d) for _ in range(cols)]
            for _ in range(rows)]


def _uniform_matrix(rng: random.Random, rows: int, cols: int):
    # Dyadic rationals with 53 random bits: exact, uniform on a fine grid.
    scale = 1 << 53
    return [[Fraction(rng.getrandbits(53), scale) for _ in range(cols)]
            for _ in range(rows)]


def random_game(spec: GameSpecSeed) -> BimatrixGame:
    """Generate the game described by ``spec``; identical seed, identical game."""
    rows, cols = spec.dims
    rng = random.Random(spec.seed)
    kind = spec.kind

    if kind is GameKind.KS_WORST_2X2:
        return ks_worst_case_2x2()
    if kind is GameKind.KS_WORST_3X2:
        return ks_worst_case_3x2()

    if kind is GameKind.RANDOM_UNIFORM:
        r = _uniform_matrix(rng, rows, cols)
        c = _uniform_matrix(rng, rows, cols)
        return BimatrixGame.from_payoffs(r, c)

    d = spec.grid_denominator
    r = _grid_matrix(rng, rows, cols, d)
    c = _grid_matrix(rng, rows, cols, d)

    if kind is GameKind.PURE_NE_PLANTED:
        i = rng.randrange(rows)
        j = rng.randrange(cols)
        r[i][j] = Fraction(1)
        c[i][j] = Fraction(1)
    elif kind is GameKind.MATCHING_PENNIES_PLANTED:
        if rows < 2 or cols < 2:
            raise ValueError("matching pennies needs at least a 2x2 game")
        i, i2 = rng.sample(range(rows), 2)
        j, j2 = rng.sample(range(cols), 2)
        # j is big for i and small for i2; j2 the other way around.
        r[i][j] = Fraction(1)
        c[i2][j] = Fraction(1)
        r[i2][j2] = Fraction(1)
        c[i][j2] = Fraction(1)
    elif kind is not GameKind.RANDOM_RATIONAL_GRID:
        raise ValueError(f"unhandled kind {kind}")

    return BimatrixGame.from_payoffs(r, c)
