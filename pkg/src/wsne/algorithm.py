"""The full solver: best pure cell, best 2x2 support, improved zero-sum profile.

Three searches always run and the smallest verified epsilon wins:

* ``procedure_pure`` scans every cell for the best pure well-supported profile.
* ``procedure_2x2`` enumerates every 2x2 support pair and solves, per pair,
  two small linear programs that find the best well-supported profile whose
  supports lie inside the pair (the programs may drop support members, so
  1x1, 1x2 and 2x1 profiles are covered implicitly).
* ``procedure_ks_improved`` solves the zero-sum comparison game and reruns
  the same support-restricted programs on the equilibrium supports, which can
  only improve on the raw zero-sum profile.

The combined guarantee is epsilon <= 2/3 - 5913759/10^9 on every game with
payoffs in [0, 1]; the certificate search in :mod:`wsne.prooflab` is the
machine-checked justification for that constant.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError
from .game import (BimatrixGame, MixedStrategy, Profile, Source,
                   WsneCertificate, epsilon_wsne)
from .lp import Constraint, LpProblem, LpStatus, Relation, Sense, solve_lp
from .zerosum import ks_zero_sum

ZERO = Fraction(0)
ONE = Fraction(1)

#: The additive approximation guarantee of ``solve``: 2/3 - 5913759/10^9.
GUARANTEE = Fraction(2, 3) - Fraction(5913759, 10 ** 9)


@dataclass(frozen=True)
class SupportPair:
    """Candidate supports for the row and column player."""

    row_support: tuple[int, ...]
    col_support: tuple[int, ...]

    def __post_init__(self):
        for name, sup in (("row", self.row_support), ("col", self.col_support)):
            if not sup:
                raise ValueError(f"{name} support is empty")
            if list(sup) != sorted(set(sup)) or sup[0] < 0:
                raise ValueError(f"{name} support must be sorted unique indices")

    def check_shape(self, game: BimatrixGame) -> None:
        if self.row_support[-1] >= game.rows or self.col_support[-1] >= game.cols:
            raise ValueError("support index out of range for this game")


@dataclass(frozen=True)
class ProcedureOutcome:
    """Result of one procedure; inapplicable outcomes carry the sentinel 1."""

    procedure: Source
    certificate: WsneCertificate | None
    applicable: bool = True

    @property
    def epsilon(self) -> Fraction:
        if not self.applicable:
            return ONE
        return self.certificate.epsilon


def _regret_min_lp(payoffs, own_support, opp_support, n_own) -> LpProblem:
    """Minimize the largest regret of ``own_support`` strategies over the
    opponent simplex restricted to ``opp_support``.

    ``payoffs[i][j]`` is the payoff of own pure strategy i when the opponent
    plays j.  Variables: epsilon, then one weight per opponent support member.
    """
    k = len(opp_support)
    cons = []
    for i in own_support:
        base = payoffs[i]
        for i2 in range(n_own):
            if i2 == i:
                continue
            other = payoffs[i2]
            coeffs = [Fraction(-1)]
            coeffs += [other[j] - base[j] for j in opp_support]
            cons.append(Constraint(tuple(coeffs), Relation.LE, ZERO))
    cons.append(Constraint(tuple([ZERO] + [ONE] * k), Relation.EQ, ONE))
    objective = tuple([ONE] + [ZERO] * k)
    return LpProblem(num_vars=1 + k, objective=objective,
                     sense=Sense.MINIMIZE, constraints=tuple(cons))


def best_response_lp_row(game: BimatrixGame,
                         pair: SupportPair) -> tuple[MixedStrategy, Fraction]:
    """Column strategy on the pair's columns minimizing the worst regret of
    the pair's rows; the optimum may drop some support columns entirely."""
    pair.check_shape(game)
    problem = _regret_min_lp(game.row_payoffs, pair.row_support,
                             pair.col_support, game.rows)
    sol = solve_lp(problem)
    if sol.status is not LpStatus.OPTIMAL:
        raise InternalError("support-restricted program is always solvable")
    probs = [ZERO] * game.cols
    for pos, j in enumerate(pair.col_support):
        probs[j] = sol.assignment[1 + pos]
    return MixedStrategy(tuple(probs)), sol.objective_value


def best_response_lp_col(game: BimatrixGame,
                         pair: SupportPair) -> tuple[MixedStrategy, Fraction]:
    """Mirror image of ``best_response_lp_row`` for the column player."""
    pair.check_shape(game)
    col_view = tuple(tuple(game.col_payoffs[i][j] for i in range(game.rows))
                     for j in range(game.cols))
    problem = _regret_min_lp(col_view, pair.col_support,
                             pair.row_support, game.cols)
    sol = solve_lp(problem)
    if sol.status is not LpStatus.OPTIMAL:
        raise InternalError("support-restricted program is always solvable")
    probs = [ZERO] * game.rows
    for pos, i in enumerate(pair.row_support):
        probs[i] = sol.assignment[1 + pos]
    return MixedStrategy(tuple(probs)), sol.objective_value


def best_on_supports(game: BimatrixGame, pair: SupportPair,
                     source: Source = Source.UNTAGGED) -> WsneCertificate:
    """Best well-supported profile within a support pair.

    The realized epsilon of the returned profile never exceeds the larger of
    the two program optima, and no profile supported exactly on the pair can
    do better than that bound.
    """
    y_star, eps_y = best_response_lp_row(game, pair)
    x_star, eps_x = best_response_lp_col(game, pair)
    bound = max(eps_x, eps_y)
    cert = epsilon_wsne(game, Profile(x_star, y_star), source=source)
    if cert.epsilon > bound:
        raise InternalError(
            f"realized epsilon {cert.epsilon} exceeds program bound {bound}")
    return cert


def procedure_pure(game: BimatrixGame) -> ProcedureOutcome:
    """Best pure profile: minimize over cells the larger of the two regrets."""
    col_max_r = [max(game.row_payoffs[i][j] for i in range(game.rows))
                 for j in range(game.cols)]
    row_max_c = [max(game.col_payoffs[i][j] for j in range(game.cols))
                 for i in range(game.rows)]
    best = None
    best_cell = (0, 0)
    for i in range(game.rows):
        for j in range(game.cols):
            e = max(col_max_r[j] - game.row_payoffs[i][j],
                    row_max_c[i] - game.col_payoffs[i][j])
            if best is None or e < best:
                best = e
                best_cell = (i, j)
    i, j = best_cell
    profile = Profile(MixedStrategy.pure(game.rows, i),
                      MixedStrategy.pure(game.cols, j))
    cert = epsilon_wsne(game, profile, source=Source.PURE)
    if cert.epsilon != best:
        raise InternalError("pure scan disagrees with certificate")
    return ProcedureOutcome(procedure=Source.PURE, certificate=cert)


def _support_pairs(game: BimatrixGame):
    for rows in itertools.combinations(range(game.rows), 2):
        for cols in itertools.combinations(range(game.cols), 2):
            yield SupportPair(rows, cols)


def _best_in_chunk(game: BimatrixGame, chunk) -> tuple[Fraction, int, WsneCertificate]:
    best = None
    for index, pair in chunk:
        cert = best_on_supports(game, pair, source=Source.TWO_BY_TWO)
        key = (cert.epsilon, index)
        if best is None or key < best[:2]:
            best = (cert.epsilon, index, cert)
            if cert.epsilon == ZERO:
                break
    return best


def procedure_2x2(game: BimatrixGame, early_exit: bool = True,
                  jobs: int = 1) -> ProcedureOutcome:
    """Enumerate all 2x2 support pairs; keep the lowest-epsilon certificate.

    Skipped (sentinel epsilon 1) when the game has a single row or column.
    Enumeration order is lexicographic, ties keep the earliest pair, and the
    result is independent of ``jobs``.
    """
    if game.rows < 2 or game.cols < 2:
        return ProcedureOutcome(procedure=Source.TWO_BY_TWO, certificate=None,
                                applicable=False)
    indexed = list(enumerate(_support_pairs(game)))
    if jobs > 1 and len(indexed) >= 4 * jobs:
        chunk_size = (len(indexed) + jobs - 1) // jobs
        chunks = [indexed[k:k + chunk_size] for k in range(0, len(indexed), chunk_size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_best_in_chunk, [game] * len(chunks), chunks))
        best = min(results, key=lambda r: (r[0], r[1]))
    else:
        best = None
        for index, pair in indexed:
            cert = best_on_supports(game, pair, source=Source.TWO_BY_TWO)
            if best is None or (cert.epsilon, index) < best[:2]:
                best = (cert.epsilon, index, cert)
                if early_exit and cert.epsilon == ZERO:
                    break
    return ProcedureOutcome(procedure=Source.TWO_BY_TWO, certificate=best[2])


def procedure_ks_improved(game: BimatrixGame) -> ProcedureOutcome:
    """Solve the zero-sum comparison game, then rerun the support-restricted
    programs on the equilibrium supports."""
    zs = ks_zero_sum(game)
    pair = SupportPair(zs.x.support, zs.y.support)
    cert = best_on_supports(game, pair, source=Source.KS_IMPROVED)
    return ProcedureOutcome(procedure=Source.KS_IMPROVED, certificate=cert)


@dataclass(frozen=True)
class SolveReport:
    """All three outcomes plus the winning certificate."""

    pure: ProcedureOutcome
    two_by_two: ProcedureOutcome
    ks_improved: ProcedureOutcome
    best: WsneCertificate

    @property
    def outcomes(self) -> tuple[ProcedureOutcome, ...]:
        return (self.pure, self.two_by_two, self.ks_improved)


def solve_detailed(game: BimatrixGame, jobs: int = 1) -> SolveReport:
    """Run all three procedures and re-verify the winning certificate."""
    outcomes = (procedure_pure(game),
                procedure_2x2(game, jobs=jobs),
                procedure_ks_improved(game))
    winner = min(range(3), key=lambda k: (outcomes[k].epsilon, k))
    cert = outcomes[winner].certificate
    recheck = epsilon_wsne(game, cert.profile, source=cert.source)
    if recheck.epsilon != cert.epsilon:
        raise InternalError("certificate failed independent re-verification")
    return SolveReport(pure=outcomes[0], two_by_two=outcomes[1],
                       ks_improved=outcomes[2], best=cert)


def solve(game: BimatrixGame, jobs: int = 1) -> WsneCertificate:
    """Minimum-epsilon certificate over the three procedures."""
    return solve_detailed(game, jobs=jobs).best
