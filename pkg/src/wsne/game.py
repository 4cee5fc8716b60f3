"""Bimatrix games, mixed strategies, and well-supported equilibrium checks.

A bimatrix game is a pair of equally shaped payoff matrices (R for the row
player, C for the column player) whose entries are exact rationals in [0, 1].
A strategy profile is an epsilon-WSNE when every pure strategy inside either
support is within epsilon of a best response; ``epsilon_wsne`` computes the
exact certificate for a profile.

All types are immutable, all operations are pure functions, and no arithmetic
here ever rounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError
from .rational import as_rational, as_rational_matrix

ZERO = Fraction(0)
ONE = Fraction(1)


class Source(enum.Enum):
    """Which search produced a certificate."""

    PURE = "pure"
    TWO_BY_TWO = "2x2"
    KS_IMPROVED = "ks-improved"
    UNTAGGED = "untagged"


@dataclass(frozen=True)
class BimatrixGame:
    """Payoff matrices for both players; entries validated to [0, 1]."""

    rows: int
    cols: int
    row_payoffs: tuple[tuple[Fraction, ...], ...]
    col_payoffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("game must have at least one row and one column")
        for name, matrix in (("R", self.row_payoffs), ("C", self.col_payoffs)):
            if len(matrix) != self.rows or any(len(r) != self.cols for r in matrix):
                raise ValueError(f"{name} does not match declared shape "
                                 f"{self.rows}x{self.cols}")
            for r in matrix:
                for v in r:
                    if not (ZERO <= v <= ONE):
                        raise ValueError(
                            f"payoff {v} outside [0, 1]; normalize first")

    @classmethod
    def from_payoffs(cls, row_payoffs, col_payoffs) -> "BimatrixGame":
        """Build from nested sequences of ints / Fractions / exact literals."""
        r = as_rational_matrix(row_payoffs)
        c = as_rational_matrix(col_payoffs)
        if not r or not r[0]:
            raise ValueError("empty payoff matrix")
        if len(r) != len(c) or any(len(a) != len(b) for a, b in zip(r, c)):
            raise ValueError("R and C must have identical shape")
        return cls(rows=len(r), cols=len(r[0]), row_payoffs=r, col_payoffs=c)

    def transpose(self) -> "BimatrixGame":
        """The same game with the players swapped."""
        r = tuple(tuple(self.col_payoffs[i][j] for i in range(self.rows))
                  for j in range(self.cols))
        c = tuple(tuple(self.row_payoffs[i][j] for i in range(self.rows))
                  for j in range(self.cols))
        return BimatrixGame(rows=self.cols, cols=self.rows,
                            row_payoffs=r, col_payoffs=c)


@dataclass(frozen=True)
class MixedStrategy:
    """Probability vector over pure strategies; sums to exactly 1."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.probs:
            raise ValueError("empty strategy")
        total = ZERO
        for p in self.probs:
            if p < ZERO:
                raise ValueError(f"negative probability {p}")
            total += p
        if total != ONE:
            raise ValueError(f"probabilities sum to {total}, not 1")

    @classmethod
    def of(cls, probs) -> "MixedStrategy":
        return cls(tuple(as_rational(p) for p in probs))

    @classmethod
    def pure(cls, size: int, index: int) -> "MixedStrategy":
        if not 0 <= index < size:
            raise ValueError("pure strategy index out of range")
        return cls(tuple(ONE if i == index else ZERO for i in range(size)))

    @classmethod
    def uniform_on(cls, size: int, indices) -> "MixedStrategy":
        chosen = sorted(set(indices))
        if not chosen or chosen[0] < 0 or chosen[-1] >= size:
            raise ValueError("support indices out of range")
        share = Fraction(1, len(chosen))
        members = set(chosen)
        return cls(tuple(share if i in members else ZERO for i in range(size)))

    @classmethod
    def uniform(cls, size: int) -> "MixedStrategy":
        return cls.uniform_on(size, range(size))

    @property
    def size(self) -> int:
        return len(self.probs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probs) if p > ZERO)


@dataclass(frozen=True)
class Profile:
    """A mixed strategy for each player."""

    row_strategy: MixedStrategy
    col_strategy: MixedStrategy

    def check_shape(self, game: BimatrixGame) -> None:
        if self.row_strategy.size != game.rows or self.col_strategy.size != game.cols:
            raise ValueError("profile does not match game shape")


@dataclass(frozen=True)
class WsneCertificate:
    """A profile with its exact verified epsilon and per-support regrets.

    ``row_regrets``/``col_regrets`` align with the supports of the profile's
    strategies in index order; epsilon is their maximum and is always >= 0.
    """

    profile: Profile
    epsilon: Fraction
    row_regrets: tuple[Fraction, ...]
    col_regrets: tuple[Fraction, ...]
    source: Source = Source.UNTAGGED


@dataclass(frozen=True)
class AffineMap:
    """v_original = offset + scale * v_normalized."""

    offset: Fraction
    scale: Fraction

    def to_original(self, v: Fraction) -> Fraction:
        return self.offset + self.scale * v


@dataclass(frozen=True)
class NormalizedGame:
    game: BimatrixGame
    row_map: AffineMap
    col_map: AffineMap


def _normalize_matrix(matrix) -> tuple[tuple[tuple[Fraction, ...], ...], AffineMap]:
    lo = min(v for row in matrix for v in row)
    hi = max(v for row in matrix for v in row)
    span = hi - lo
    if span == ZERO:
        # Constant matrix maps to all-zeros; report the original constant.
        zeros = tuple(tuple(ZERO for _ in row) for row in matrix)
        return zeros, AffineMap(offset=lo, scale=ONE)
    scaled = tuple(tuple((v - lo) / span for v in row) for row in matrix)
    return scaled, AffineMap(offset=lo, scale=span)


def normalize_game(row_payoffs, col_payoffs) -> NormalizedGame:
    """Affinely rescale each payoff matrix independently onto [0, 1]."""
    r = as_rational_matrix(row_payoffs)
    c = as_rational_matrix(col_payoffs)
    if not r or not r[0]:
        raise ValueError("empty payoff matrix")
    if len(r) != len(c) or any(len(a) != len(b) for a, b in zip(r, c)):
        raise ValueError("R and C must have identical shape")
    new_r, row_map = _normalize_matrix(r)
    new_c, col_map = _normalize_matrix(c)
    game = BimatrixGame(rows=len(r), cols=len(r[0]),
                        row_payoffs=new_r, col_payoffs=new_c)
    return NormalizedGame(game=game, row_map=row_map, col_map=col_map)


def payoff_row(game: BimatrixGame, i: int, y: MixedStrategy) -> Fraction:
    """Expected payoff R_i . y of row i against the column strategy y."""
    if not 0 <= i < game.rows:
        raise ValueError(f"row index {i} out of range")
    if y.size != game.cols:
        raise ValueError("strategy length does not match column count")
    row = game.row_payoffs[i]
    total = ZERO
    for j, p in enumerate(y.probs):
        if p:
            total += row[j] * p
    return total


def payoff_col(game: BimatrixGame, j: int, x: MixedStrategy) -> Fraction:
    """Expected payoff of column j against the row strategy x."""
    if not 0 <= j < game.cols:
        raise ValueError(f"column index {j} out of range")
    if x.size != game.rows:
        raise ValueError("strategy length does not match row count")
    total = ZERO
    for i, p in enumerate(x.probs):
        if p:
            total += game.col_payoffs[i][j] * p
    return total


def best_row_payoff(game: BimatrixGame, y: MixedStrategy) -> Fraction:
    return max(payoff_row(game, i, y) for i in range(game.rows))


def best_col_payoff(game: BimatrixGame, x: MixedStrategy) -> Fraction:
    return max(payoff_col(game, j, x) for j in range(game.cols))


def best_row_response(game: BimatrixGame, y: MixedStrategy) -> int:
    """Lowest-index row attaining the maximum payoff against y."""
    best_i, best_v = 0, payoff_row(game, 0, y)
    for i in range(1, game.rows):
        v = payoff_row(game, i, y)
        if v > best_v:
            best_i, best_v = i, v
    return best_i


def regret_row(game: BimatrixGame, i: int, y: MixedStrategy) -> Fraction:
    """Best-response payoff against y minus row i's payoff (always >= 0)."""
    return best_row_payoff(game, y) - payoff_row(game, i, y)


def regret_col(game: BimatrixGame, j: int, x: MixedStrategy) -> Fraction:
    return best_col_payoff(game, x) - payoff_col(game, j, x)


def epsilon_wsne(game: BimatrixGame, profile: Profile,
                 source: Source = Source.UNTAGGED) -> WsneCertificate:
    """Exact well-supported epsilon of a profile, with per-support regrets."""
    profile.check_shape(game)
    x, y = profile.row_strategy, profile.col_strategy
    y_terms = [(j, p) for j, p in enumerate(y.probs) if p]
    x_terms = [(i, p) for i, p in enumerate(x.probs) if p]
    row_values = [sum((row[j] * p for j, p in y_terms), ZERO)
                  for row in game.row_payoffs]
    col_values = [sum((game.col_payoffs[i][j] * p for i, p in x_terms), ZERO)
                  for j in range(game.cols)]
    best_row = max(row_values)
    best_col = max(col_values)
    row_regrets = tuple(best_row - row_values[i] for i, _ in x_terms)
    col_regrets = tuple(best_col - col_values[j] for j, _ in y_terms)
    epsilon = max(max(row_regrets), max(col_regrets))
    if epsilon < ZERO:
        raise InternalError("negative regret computed")
    return WsneCertificate(profile=profile, epsilon=epsilon,
                           row_regrets=row_regrets, col_regrets=col_regrets,
                           source=source)


def epsilon_nash(game: BimatrixGame, profile: Profile) -> Fraction:
    """Expected-payoff regret of a profile (never exceeds the WSNE epsilon)."""
    profile.check_shape(game)
    x, y = profile.row_strategy, profile.col_strategy
    row_value = ZERO
    for i in x.support:
        row_value += x.probs[i] * payoff_row(game, i, y)
    col_value = ZERO
    for j in y.support:
        col_value += y.probs[j] * payoff_col(game, j, x)
    return max(best_row_payoff(game, y) - row_value,
               best_col_payoff(game, x) - col_value)
