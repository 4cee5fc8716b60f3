import random
from fractions import Fraction

import pytest

from wsne import (BimatrixGame, MixedStrategy, Profile, epsilon_nash,
                  epsilon_wsne, normalize_game, payoff_col, payoff_row,
                  regret_col, regret_row)

from conftest import grid_game

F = Fraction


class TestConstruction:
    def test_rejects_out_of_range_payoffs(self):
        with pytest.raises(ValueError):
            BimatrixGame.from_payoffs([[2]], [[0]])
        with pytest.raises(ValueError):
            BimatrixGame.from_payoffs([["-1/2"]], [["0"]])

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            BimatrixGame.from_payoffs([[0, 1]], [[0], [1]])

    def test_strategy_must_be_distribution(self):
        with pytest.raises(ValueError):
            MixedStrategy.of(["1/2", "1/3"])
        with pytest.raises(ValueError):
            MixedStrategy.of(["3/2", "-1/2"])

    def test_support(self):
        s = MixedStrategy.of(["1/2", "0", "1/2"])
        assert s.support == (0, 2)


class TestNormalize:
    def test_already_normalized_unchanged(self):
        m = [[0, 1], [1, 0]]
        result = normalize_game(m, m)
        assert result.game.row_payoffs == ((F(0), F(1)), (F(1), F(0)))
        assert result.game.col_payoffs == result.game.row_payoffs

    def test_affine_map_forced(self):
        result = normalize_game([[2, 4], [4, 2]], [[0, 1], [1, 0]])
        assert result.game.row_payoffs == ((F(0), F(1)), (F(1), F(0)))
        assert result.row_map.to_original(F(0)) == 2
        assert result.row_map.to_original(F(1)) == 4

    def test_constant_matrix_maps_to_zero(self):
        result = normalize_game([[5, 5], [5, 5]], [[0, 1], [1, 0]])
        assert all(v == 0 for row in result.game.row_payoffs for v in row)
        assert result.row_map.to_original(F(0)) == 5


class TestPayoffs:
    def test_zero_row_of_fixture(self, fixture_3x2):
        uniform = MixedStrategy.uniform(2)
        assert payoff_row(fixture_3x2, 2, uniform) == 0

    def test_pure_column_degenerates(self, fixture_3x2):
        pure = MixedStrategy.pure(2, 1)
        for i in range(3):
            assert payoff_row(fixture_3x2, i, pure) == fixture_3x2.row_payoffs[i][1]

    def test_direct_arithmetic(self):
        g = BimatrixGame.from_payoffs([[1, "1/3"], ["1/3", 1]],
                                      [["1/3", 1], [1, "1/3"]])
        assert payoff_row(g, 0, MixedStrategy.uniform(2)) == F(2, 3)

    def test_index_out_of_range(self, fixture_3x2):
        with pytest.raises(ValueError):
            payoff_row(fixture_3x2, 3, MixedStrategy.uniform(2))
        with pytest.raises(ValueError):
            payoff_col(fixture_3x2, 2, MixedStrategy.uniform(3))


class TestRegrets:
    def test_best_response_has_zero_regret(self, fixture_3x2):
        uniform = MixedStrategy.uniform(2)
        assert regret_row(fixture_3x2, 0, uniform) == 0
        assert regret_row(fixture_3x2, 1, uniform) == 0

    def test_zero_row_regret_is_two_thirds(self, fixture_3x2):
        assert regret_row(fixture_3x2, 2, MixedStrategy.uniform(2)) == F(2, 3)

    def test_direct_arithmetic(self):
        g = BimatrixGame.from_payoffs([[1, 0], [0, 1]], [[0, 1], [1, 0]])
        y = MixedStrategy.of(["3/4", "1/4"])
        assert regret_row(g, 1, y) == F(1, 2)


class TestEpsilonWsne:
    def test_exact_pure_equilibrium(self):
        g = BimatrixGame.from_payoffs([[1, 0], [0, 0]], [[1, 0], [0, 0]])
        profile = Profile(MixedStrategy.pure(2, 0), MixedStrategy.pure(2, 0))
        assert epsilon_wsne(g, profile).epsilon == 0

    def test_zero_sum_profile_of_fixture(self, fixture_3x2):
        profile = Profile(MixedStrategy.pure(3, 2), MixedStrategy.uniform(2))
        cert = epsilon_wsne(fixture_3x2, profile)
        assert cert.epsilon == F(2, 3)
        assert cert.row_regrets == (F(2, 3),)
        assert cert.col_regrets == (F(0), F(0))

    def test_uniform_on_crossed_rows_is_exact(self, fixture_3x2):
        profile = Profile(MixedStrategy.uniform_on(3, (0, 1)),
                          MixedStrategy.uniform(2))
        assert epsilon_wsne(fixture_3x2, profile).epsilon == 0

    def test_shape_mismatch(self, fixture_3x2):
        with pytest.raises(ValueError):
            epsilon_wsne(fixture_3x2, Profile(MixedStrategy.uniform(2),
                                              MixedStrategy.uniform(2)))


def _random_profile(rng, game):
    def strat(n):
        weights = [rng.randint(0, 4) for _ in range(n)]
        if sum(weights) == 0:
            weights[rng.randrange(n)] = 1
        total = sum(weights)
        return MixedStrategy(tuple(F(w, total) for w in weights))
    return Profile(strat(game.rows), strat(game.cols))


class TestInvariants:
    def test_epsilon_nonnegative_and_zero_iff_best_responses(self):
        rng = random.Random(11)
        for trial in range(60):
            g = grid_game(trial, rng.randint(1, 4), rng.randint(1, 4))
            profile = _random_profile(rng, g)
            cert = epsilon_wsne(g, profile)
            assert cert.epsilon >= 0
            all_best = (all(r == 0 for r in cert.row_regrets)
                        and all(r == 0 for r in cert.col_regrets))
            assert (cert.epsilon == 0) == all_best

    def test_expected_regret_never_exceeds_wsne_epsilon(self):
        rng = random.Random(12)
        for trial in range(60):
            g = grid_game(100 + trial, rng.randint(1, 4), rng.randint(1, 4))
            profile = _random_profile(rng, g)
            assert epsilon_nash(g, profile) <= epsilon_wsne(g, profile).epsilon

    def test_checked_strategies_depend_only_on_supports(self):
        g = grid_game(7, 3, 3)
        a = Profile(MixedStrategy.of(["1/2", "1/2", 0]),
                    MixedStrategy.of(["1/4", 0, "3/4"]))
        b = Profile(MixedStrategy.of(["9/10", "1/10", 0]),
                    MixedStrategy.of(["2/3", 0, "1/3"]))
        ca, cb = epsilon_wsne(g, a), epsilon_wsne(g, b)
        assert ca.profile.row_strategy.support == cb.profile.row_strategy.support
        assert len(ca.row_regrets) == len(cb.row_regrets)
        assert len(ca.col_regrets) == len(cb.col_regrets)

    def test_permuted_summation_is_bit_identical(self):
        rng = random.Random(13)
        for trial in range(25):
            g = grid_game(200 + trial, 4, 4, d=7)
            profile = _random_profile(rng, g)
            cert = epsilon_wsne(g, profile)

            order = list(range(4))
            rng.shuffle(order)
            x, y = profile.row_strategy, profile.col_strategy

            def shuffled_row_value(i):
                total = F(0)
                for j in order:
                    total += g.row_payoffs[i][j] * y.probs[j]
                return total

            def shuffled_col_value(j):
                total = F(0)
                for i in order:
                    total += g.col_payoffs[i][j] * x.probs[i]
                return total

            best_row = max(shuffled_row_value(i) for i in reversed(range(4)))
            best_col = max(shuffled_col_value(j) for j in reversed(range(4)))
            eps = max(max(best_row - shuffled_row_value(i) for i in x.support),
                      max(best_col - shuffled_col_value(j) for j in y.support))
            assert eps == cert.epsilon
