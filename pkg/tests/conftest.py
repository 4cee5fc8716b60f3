"""Shared exact-arithmetic test helpers (independent of the library's solver)."""

from fractions import Fraction

import pytest

from wsne import BimatrixGame, GameKind, GameSpecSeed, random_game

F = Fraction


def gauss_solve(matrix, rhs):
    """Exact solution of a square system, or None when singular.

    Plain Gaussian elimination over Fractions; used to enumerate candidate
    vertices independently of the simplex implementation.
    """
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = F(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def compositions(total, parts):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def grid_game(seed, rows, cols, d=12) -> BimatrixGame:
    return random_game(GameSpecSeed(kind=GameKind.RANDOM_RATIONAL_GRID,
                                    dims=(rows, cols), seed=seed,
                                    grid_denominator=d))


def engaged_crossed_game(seed):
    """Seeded random game whose zero-sum profile tends to have bad rows.

    Crossed high/low rows force the column player to mix while a bottom row
    with a small zero-sum edge absorbs the row player's probability; the
    bottom row is then far from a best response in the game itself.
    """
    import random as _random

    from wsne import BimatrixGame as _Game

    rng = _random.Random(seed)
    # Keeping delta + eta below twice the guarantee margin makes the bottom
    # row's regret exceed 2/3 - z, so the profile is genuinely bad.
    delta = F(rng.randint(1, 5), 1000)
    eta = F(rng.randint(1, 5), 1000)
    hi = F(1)
    lo = F(1, 3) - delta
    r = [[hi, lo], [lo, hi], [eta, eta]]
    c = [[lo, hi], [hi, lo], [F(0), F(0)]]
    if rng.random() < 0.5:
        r = [list(reversed(row)) for row in r]
        c = [list(reversed(row)) for row in c]
    if rng.random() < 0.5:
        r.append([F(0), F(0)])
        c.append([F(0), F(0)])
    return _Game.from_payoffs(r, c)


def shift_family_games():
    """Hand-built games whose zero-sum profile typically has bad rows.

    Two crossed high/low rows make the column player mix, and a bottom row
    with a slight zero-sum edge soaks up all of the row player's probability,
    leaving it badly unsupported in the original game.  Variants permute
    columns, pad rows, skew the bottom row, and add a middling column.
    """
    one, zero = F(1), F(0)
    for delta in (F(1, 250), F(1, 300), F(1, 400)):
        lo = F(1, 3) - delta
        for eta in (F(1, 250), F(1, 500)):
            base_r = [[one, lo], [lo, one], [eta, eta]]
            base_c = [[lo, one], [one, lo], [zero, zero]]
            yield BimatrixGame.from_payoffs(base_r, base_c)
            swap_r = [[lo, one], [one, lo], [eta, eta]]
            swap_c = [[one, lo], [lo, one], [zero, zero]]
            yield BimatrixGame.from_payoffs(swap_r, swap_c)
            pad_r = base_r + [[zero, zero]]
            pad_c = base_c + [[zero, zero]]
            yield BimatrixGame.from_payoffs(pad_r, pad_c)
            skew_r = [[one, lo], [lo, one], [eta, eta / 2]]
            yield BimatrixGame.from_payoffs(skew_r, base_c)
            mid_r = [[one, lo, F(1, 4)], [lo, one, F(1, 4)], [eta, eta, eta]]
            mid_c = [[lo, one, F(1, 2)], [one, lo, F(1, 2)], [zero, zero, zero]]
            yield BimatrixGame.from_payoffs(mid_r, mid_c)


def col_payoff_along_row(game, i, y):
    """Column player's expected payoff on row i against y (C_i . y)."""
    return sum((game.col_payoffs[i][j] * y.probs[j] for j in range(game.cols)),
               F(0))


def reanalysis_row_side_checks(game, x, y, z):
    """Assert every zero-sum reanalysis inequality that applies to the rows.

    ``(x, y)`` must be an exact equilibrium of the comparison game and the
    game must have no cell with both payoffs >= 1/3 + z.  Returns counters:
    (games engaged, near-zero rows found, rows with mass bounds checked,
    other-columns cell-sum checks).
    """
    from wsne import (bad_row_report, check_mass_bounds, epsilon_wsne,
                      partition_columns, payoff_row)
    from wsne.game import Profile

    bound = F(2, 3) - z
    cap = F(2, 3) + 2 * z
    cell_checks = 0
    limit = 1 + 3 * z
    for i in range(game.rows):
        part = partition_columns(game, i, z)
        for j in part.other:
            assert game.row_payoffs[i][j] + game.col_payoffs[i][j] < limit
            cell_checks += 1

    cert = epsilon_wsne(game, Profile(x, y))
    engaged = any(r > bound for r in cert.row_regrets)
    if not engaged:
        return 0, 0, 0, cell_checks

    near_zero = sum(
        1 for i in x.support
        if payoff_row(game, i, y) < 3 * z
        and col_payoff_along_row(game, i, y) < 3 * z)
    assert near_zero >= 1

    mass_checked = 0
    for i in range(game.rows):
        value = payoff_row(game, i, y)
        dual = col_payoff_along_row(game, i, y)
        assert value <= cap
        assert value - dual <= 3 * z
        report = bad_row_report(game, i, y, z)
        assert report.payoff_within_bound
        assert dual >= F(2, 3) - z - report.badness * z
        assert check_mass_bounds(report).holds
        mass_checked += 1
    return 1, near_zero, mass_checked, cell_checks


@pytest.fixture
def fixture_3x2():
    from wsne import ks_worst_case_3x2
    return ks_worst_case_3x2()
