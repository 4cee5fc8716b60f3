import random
from fractions import Fraction

import pytest

from wsne import (GUARANTEE, BimatrixGame, MixedStrategy, Profile, Source,
                  SupportPair, best_on_supports, best_response_lp_col,
                  best_response_lp_row, epsilon_wsne, ks_worst_case_2x2,
                  ks_zero_sum, payoff_col, payoff_row, procedure_2x2,
                  procedure_ks_improved, procedure_pure, regret_col,
                  regret_row, solve, solve_detailed)

from conftest import grid_game

F = Fraction


class TestSupportPair:
    def test_validation(self):
        with pytest.raises(ValueError):
            SupportPair((), (0,))
        with pytest.raises(ValueError):
            SupportPair((1, 0), (0,))
        pair = SupportPair((0, 2), (1,))
        g = grid_game(1, 2, 2)
        with pytest.raises(ValueError):
            pair.check_shape(g)


class TestBestResponsePrograms:
    def test_zero_row_against_both_columns(self, fixture_3x2):
        y, eps = best_response_lp_row(fixture_3x2, SupportPair((2,), (0, 1)))
        assert eps == F(2, 3)
        assert y.probs == (F(1, 2), F(1, 2))

    def test_crossed_rows_reach_zero(self, fixture_3x2):
        y, eps = best_response_lp_row(fixture_3x2, SupportPair((0, 1), (0, 1)))
        assert eps == 0
        assert y.probs == (F(1, 2), F(1, 2))

    def test_singleton_column_support_is_pure(self):
        g = grid_game(17, 4, 3)
        for j in range(3):
            pair = SupportPair((0, 2), (j,))
            y, eps = best_response_lp_row(g, pair)
            assert y.probs == MixedStrategy.pure(3, j).probs
            assert eps == max(regret_row(g, 0, y), regret_row(g, 2, y))

    def test_column_program_on_zero_row(self, fixture_3x2):
        x, eps = best_response_lp_col(fixture_3x2, SupportPair((2,), (0, 1)))
        assert eps == 0

    def test_column_program_on_crossed_rows(self, fixture_3x2):
        x, eps = best_response_lp_col(fixture_3x2, SupportPair((0, 1), (0, 1)))
        assert eps == 0

    def test_singleton_row_support_is_pure(self):
        g = grid_game(18, 3, 4)
        for i in range(3):
            pair = SupportPair((i,), (1, 3))
            x, eps = best_response_lp_col(g, pair)
            assert x.probs == MixedStrategy.pure(3, i).probs
            assert eps == max(regret_col(g, 1, x), regret_col(g, 3, x))


def support_restricted_grid_optimum(game, pair, steps=40):
    """Minimum exact epsilon over profiles supported *exactly* on the pair,
    discretized at 1/steps.  Row and column terms separate, so the grid
    minimum is max(min_b rowterm(b), min_a colterm(a))."""
    (i1, i2), (j1, j2) = pair.row_support, pair.col_support

    def row_term(b):
        y = [F(0)] * game.cols
        y[j1] = F(b, steps)
        y[j2] = 1 - F(b, steps)
        values = [sum((game.row_payoffs[i][j] * y[j] for j in (j1, j2)), F(0))
                  for i in range(game.rows)]
        return max(values) - min(values[i1], values[i2])

    def col_term(a):
        x = [F(0)] * game.rows
        x[i1] = F(a, steps)
        x[i2] = 1 - F(a, steps)
        values = [sum((game.col_payoffs[i][j] * x[i] for i in (i1, i2)), F(0))
                  for j in range(game.cols)]
        return max(values) - min(values[j1], values[j2])

    interior = range(1, steps)
    return max(min(row_term(b) for b in interior),
               min(col_term(a) for a in interior))


class TestBestOnSupports:
    def test_fixture_crossed_pair_is_exact(self, fixture_3x2):
        cert = best_on_supports(fixture_3x2, SupportPair((0, 1), (0, 1)))
        assert cert.epsilon == 0

    def test_pure_equilibrium_cell_found(self):
        g = BimatrixGame.from_payoffs([[1, 0], [0, "1/2"]],
                                      [[1, 0], [0, "1/2"]])
        cert = best_on_supports(g, SupportPair((0, 1), (0, 1)))
        assert cert.epsilon == 0

    def test_grid_oracle_consistency(self):
        # The separable shortcut must agree with direct certificate epsilon.
        g = grid_game(500, 3, 3)
        pair = SupportPair((0, 1), (0, 2))
        rng = random.Random(1)
        for _ in range(10):
            b, a = rng.randint(1, 39), rng.randint(1, 39)
            y = [F(0)] * 3
            y[0], y[2] = F(b, 40), 1 - F(b, 40)
            x = [F(0)] * 3
            x[0], x[1] = F(a, 40), 1 - F(a, 40)
            cert = epsilon_wsne(g, Profile(MixedStrategy(tuple(x)),
                                           MixedStrategy(tuple(y))))
            row_term = max(payoff_row(g, i, MixedStrategy(tuple(y)))
                           for i in range(3)) - min(
                payoff_row(g, 0, MixedStrategy(tuple(y))),
                payoff_row(g, 1, MixedStrategy(tuple(y))))
            col_term = max(payoff_col(g, j, MixedStrategy(tuple(x)))
                           for j in range(3)) - min(
                payoff_col(g, 0, MixedStrategy(tuple(x))),
                payoff_col(g, 2, MixedStrategy(tuple(x))))
            assert cert.epsilon == max(row_term, col_term)

    def test_never_worse_than_grid_profiles(self):
        for seed in range(10):
            g = grid_game(600 + seed, 3, 3)
            for i2 in (1, 2):
                for j2 in (1, 2):
                    pair = SupportPair((0, i2), (0, j2))
                    cert = best_on_supports(g, pair)
                    assert cert.epsilon <= support_restricted_grid_optimum(g, pair)


class TestProcedures:
    def test_pure_on_fixture(self, fixture_3x2):
        out = procedure_pure(fixture_3x2)
        assert out.epsilon == F(2, 3)
        assert out.certificate.source is Source.PURE

    def test_pure_finds_exact_equilibrium(self):
        g = BimatrixGame.from_payoffs([[1, 0], [0, 0]], [[1, 0], [0, 0]])
        assert procedure_pure(g).epsilon == 0

    def test_pure_tie_break_is_lowest_cell(self):
        g = BimatrixGame.from_payoffs([[1, 1], [1, 1]], [[1, 1], [1, 1]])
        out = procedure_pure(g)
        assert out.certificate.profile.row_strategy.support == (0,)
        assert out.certificate.profile.col_strategy.support == (0,)

    def test_good_cell_bound(self):
        # A cell with both payoffs >= 1/3 + z caps the pure epsilon.
        z = F(5913759, 10 ** 9)
        g = BimatrixGame.from_payoffs([["1/2", 0], [1, 0]],
                                      [["1/2", 1], [0, 0]])
        assert g.row_payoffs[0][0] >= F(1, 3) + z
        assert g.col_payoffs[0][0] >= F(1, 3) + z
        assert procedure_pure(g).epsilon <= F(2, 3) - z

    def test_2x2_on_fixture(self, fixture_3x2):
        out = procedure_2x2(fixture_3x2)
        assert out.epsilon == 0
        assert out.certificate.source is Source.TWO_BY_TWO

    def test_2x2_on_matching_pennies(self):
        g = BimatrixGame.from_payoffs([[1, 0], [0, 1]], [[0, 1], [1, 0]])
        assert procedure_2x2(g).epsilon == 0

    def test_2x2_skipped_on_single_row(self):
        g = BimatrixGame.from_payoffs([[1, 0]], [[0, 1]])
        out = procedure_2x2(g)
        assert not out.applicable
        assert out.epsilon == 1
        assert out.certificate is None

    def test_2x2_early_exit_matches_full_enumeration(self):
        g = grid_game(801, 4, 4)
        fast = procedure_2x2(g, early_exit=True)
        full = procedure_2x2(g, early_exit=False)
        assert fast.epsilon == full.epsilon
        assert fast.certificate.profile == full.certificate.profile

    def test_2x2_parallel_matches_sequential(self):
        g = grid_game(802, 5, 5)
        seq = procedure_2x2(g, early_exit=False)
        par = procedure_2x2(g, jobs=2)
        assert seq.epsilon == par.epsilon
        assert seq.certificate.profile == par.certificate.profile

    def test_ks_improved_on_constant_sum_game(self):
        g = BimatrixGame.from_payoffs([[1, 0], [0, 1]], [[0, 1], [1, 0]])
        assert procedure_ks_improved(g).epsilon == 0

    def test_ks_improved_on_fixture(self, fixture_3x2):
        out = procedure_ks_improved(fixture_3x2)
        assert out.epsilon <= F(2, 3)

    def test_ks_improved_never_worse_than_raw_profile(self):
        for seed in range(15):
            g = grid_game(900 + seed, 3, 4)
            zs = ks_zero_sum(g)
            raw = epsilon_wsne(g, Profile(zs.x, zs.y))
            assert procedure_ks_improved(g).epsilon <= raw.epsilon

    def test_2x2_bound_on_planted_matching_pennies(self):
        from wsne import GameKind, GameSpecSeed, random_game
        z = F(5913759, 10 ** 9)
        for seed in range(8):
            spec = GameSpecSeed(GameKind.MATCHING_PENNIES_PLANTED,
                                dims=(4, 4), seed=seed)
            assert procedure_2x2(random_game(spec)).epsilon <= F(2, 3) - z

    def test_raw_zero_sum_profile_capped_without_good_cells(self):
        # With no cell reaching 1/3 + z for both players, every payoff
        # against the zero-sum profile stays within 2/3 + 2z, so its
        # epsilon (and the rerun's) is capped as well.
        from wsne import good_pure_cells
        z = F(5913759, 10 ** 9)
        cap = F(2, 3) + 2 * z
        checked = 0
        for seed in range(400):
            g = grid_game(1500 + seed, 2, 2)
            if good_pure_cells(g, z):
                continue
            zs = ks_zero_sum(g)
            raw = epsilon_wsne(g, Profile(zs.x, zs.y))
            assert raw.epsilon <= cap
            assert procedure_ks_improved(g).epsilon <= cap
            checked += 1
        assert checked > 0


class TestSolve:
    def test_fixture_is_solved_exactly(self, fixture_3x2):
        report = solve_detailed(fixture_3x2)
        assert report.best.epsilon == 0
        assert report.best.source is Source.TWO_BY_TWO
        assert report.pure.epsilon == F(2, 3)

    def test_pure_equilibrium_game(self):
        g = BimatrixGame.from_payoffs([[1, 0], [0, 0]], [[1, 0], [0, 0]])
        assert solve(g).epsilon == 0

    def test_epsilon_is_minimum_of_procedures(self):
        for seed in range(8):
            g = grid_game(1000 + seed, 3, 3)
            report = solve_detailed(g)
            assert report.best.epsilon == min(o.epsilon for o in report.outcomes)

    def test_certificate_reverifies_bit_exactly(self):
        for seed in range(8):
            g = grid_game(1100 + seed, 4, 3)
            cert = solve(g)
            again = epsilon_wsne(g, cert.profile)
            assert again.epsilon == cert.epsilon

    def test_guarantee_on_small_fuzz(self):
        rng = random.Random(42)
        for trial in range(40):
            g = grid_game(1200 + trial, rng.randint(2, 6), rng.randint(2, 6))
            assert solve(g).epsilon <= GUARANTEE

    def test_single_column_game(self):
        g = BimatrixGame.from_payoffs([[1], [0]], [["1/2"], ["1/4"]])
        cert = solve(g)
        assert cert.epsilon == 0

    def test_perturbed_2x2_worst_case(self):
        g = ks_worst_case_2x2(F(1, 100))
        cert = solve(g)
        assert cert.epsilon <= GUARANTEE
        # No cell of the perturbed game has both payoffs >= 1/3.
        for i in range(2):
            for j in range(2):
                assert min(g.row_payoffs[i][j], g.col_payoffs[i][j]) < F(1, 3)
