"""Support guessing: single pairs, full enumeration, randomized search."""

import io
import statistics
from fractions import Fraction
from math import comb

import pytest

from galelemke import (
    AllColumnSubsets,
    BimatrixGame,
    OnePerLabelClass,
    SupportPair,
    count_equilibrium_supports,
    enumerate_equilibria,
    expected_guesses,
    random_game,
    randomized_support_search,
    solve_support,
    triple_morris_game,
    unit_vector_game,
    verify_equilibrium,
)
from galelemke.errors import NoEquilibriumError
from galelemke.support import SearchStats, search_equal_supports, stats_to_csv

from conftest import C_THREE_EQ


class TestSolveSupport:
    def test_worked_example_support(self, game22, game22_equilibrium):
        profile = solve_support(game22, SupportPair.of({1, 2}, {1, 2}))
        assert profile == game22_equilibrium

    def test_dominated_pure_cell(self, game22):
        assert solve_support(game22, SupportPair.of({3}, {3})) is None

    def test_pure_cells(self):
        game = BimatrixGame.from_rows([[3, 0], [0, 1]], [[2, 0], [0, 1]])
        assert solve_support(game, SupportPair.of({1}, {1})) is not None
        assert solve_support(game, SupportPair.of({2}, {2})) is not None
        assert solve_support(game, SupportPair.of({1}, {2})) is None

    def test_unequal_sizes_rejected(self, game22):
        with pytest.raises(ValueError):
            solve_support(game22, SupportPair.of({1, 2}, {1}))

    def test_returned_profiles_verify(self):
        for seed in range(30):
            game = random_game(3, 4, 7000 + seed)
            for profile in enumerate_equilibria(game):
                assert verify_equilibrium(game, profile)
                s1, s2 = profile.support()
                assert len(s1) == len(s2)  # nondegenerate games balance supports


class TestEnumerateEquilibria:
    def test_symmetric_example_equilibria(self):
        game = BimatrixGame.from_rows(C_THREE_EQ, [list(r) for r in zip(*C_THREE_EQ)])
        expected = {
            (
                (Fraction(1, 3), Fraction(2, 3), Fraction(0)),
                (Fraction(1, 3), Fraction(2, 3), Fraction(0)),
            ),
            (
                (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
                (Fraction(0), Fraction(2, 3), Fraction(1, 3)),
            ),
            (
                (Fraction(0), Fraction(2, 3), Fraction(1, 3)),
                (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
            ),
        }
        assert {(p.x, p.y) for p in enumerate_equilibria(game)} == expected

    def test_triple_morris_count(self):
        game = unit_vector_game(triple_morris_game(2))
        assert len(enumerate_equilibria(game)) == 3

    def test_odd_equilibrium_counts(self):
        for seed in range(20):
            game = random_game(3, 3, 8100 + seed)
            assert len(enumerate_equilibria(game)) % 2 == 1

    def test_sorted_output(self):
        game = BimatrixGame.from_rows(C_THREE_EQ, [list(r) for r in zip(*C_THREE_EQ)])
        eqs = enumerate_equilibria(game)
        assert eqs == sorted(eqs, key=lambda p: (p.x, p.y))


class TestUniverses:
    def test_all_subsets_size_and_unranking(self):
        universe = AllColumnSubsets((2, 6))
        assert len(universe) == comb(6, 2)
        supports = {universe.support(i) for i in range(len(universe))}
        assert len(supports) == 15
        assert all(len(s) == 2 for s in supports)

    def test_unranking_is_a_bijection(self):
        universe = AllColumnSubsets((3, 7))
        supports = {universe.support(i) for i in range(len(universe))}
        assert len(supports) == comb(7, 3)
        assert all(len(s) == 3 and max(s) <= 7 for s in supports)

    def test_lazy_shuffle_uniform(self):
        import random as random_module
        from collections import Counter

        from galelemke.support import _lazy_shuffle

        counts = Counter()
        for seed in range(3000):
            order = tuple(_lazy_shuffle(3, random_module.Random(seed)))
            counts[order] += 1
        assert len(counts) == 6
        assert all(abs(c - 500) < 120 for c in counts.values())

    def test_one_per_label_class(self):
        u = triple_morris_game(2)
        universe = OnePerLabelClass(u)
        assert len(universe) == 9
        for i in range(9):
            support = universe.support(i)
            labels = sorted(u.ell[j - 1] for j in support)
            assert labels == [1, 2]


class TestRandomizedSearch:
    def test_stats_on_triple_morris(self):
        game = unit_vector_game(triple_morris_game(2))
        universe = AllColumnSubsets(game)
        profile, stats = randomized_support_search(game, universe, seed=0, count_supports=True)
        assert verify_equilibrium(game, profile)
        assert stats.universe_size == 15
        assert stats.equilibrium_support_count == 3
        assert 1 <= stats.guesses <= 13

    def test_single_support_universe(self):
        game = BimatrixGame.from_rows([[1]], [[1]])
        universe = AllColumnSubsets(game)
        profile, stats = randomized_support_search(game, universe, seed=5)
        assert stats.guesses == 1 and stats.universe_size == 1

    def test_exhausted_universe(self, game22):
        # the unique equilibrium does not use the full row support
        universe = AllColumnSubsets(game22)
        with pytest.raises(NoEquilibriumError):
            randomized_support_search(game22, universe, seed=1)

    def test_search_on_label_class_universe(self):
        uv = triple_morris_game(2)
        game = unit_vector_game(uv)
        universe = OnePerLabelClass(uv)
        profile, stats = randomized_support_search(game, universe, seed=2, count_supports=True)
        assert verify_equilibrium(game, profile)
        assert stats.universe_size == 9
        assert stats.equilibrium_support_count == 3

    def test_deterministic_given_seed(self):
        game = unit_vector_game(triple_morris_game(2))
        universe = AllColumnSubsets(game)
        first = randomized_support_search(game, universe, seed=9)
        second = randomized_support_search(game, universe, seed=9)
        assert first == second

    def test_monte_carlo_mean_matches_expectation(self):
        game = unit_vector_game(triple_morris_game(2))
        universe = AllColumnSubsets(game)
        counts = [
            randomized_support_search(game, universe, seed=s)[1].guesses
            for s in range(2000)
        ]
        mean = statistics.mean(counts)
        exact = float(expected_guesses(15, 3))
        stderr = statistics.stdev(counts) / len(counts) ** 0.5
        assert abs(mean - exact) <= 3 * stderr


class TestExpectedGuesses:
    def test_small_case(self):
        assert expected_guesses(15, 3) == 4

    def test_every_guess_succeeds(self):
        assert expected_guesses(10, 10) == 1

    def test_exact_rational_value(self):
        # |U| = C(12, 4), |E| = 9: (495 - 9) / 10 + 1
        assert expected_guesses(comb(12, 4), 9) == Fraction(486, 10) + 1

    def test_rejects_zero_equilibria(self):
        with pytest.raises(ValueError):
            expected_guesses(10, 0)


class TestEqualSupportSearch:
    def test_finds_unique_equilibrium(self, game22, game22_equilibrium):
        profile, guesses = search_equal_supports(game22)
        assert profile == game22_equilibrium
        assert guesses >= 1

    def test_seeded_order_still_finds_it(self, game22, game22_equilibrium):
        profile, _ = search_equal_supports(game22, seed=123)
        assert profile == game22_equilibrium


class TestStatsCsv:
    def test_round_trip(self):
        buffer = io.StringIO()
        stats_to_csv(
            [(0, SearchStats(4, 15, 3)), (1, SearchStats(2, 15, None))], buffer
        )
        lines = buffer.getvalue().strip().splitlines()
        assert lines[0] == "seed,guesses,universe,equilibria_found"
        assert lines[1] == "0,4,15,3"
        assert lines[2] == "1,2,15,"

    def test_count_helper(self):
        game = unit_vector_game(triple_morris_game(2))
        assert count_equilibrium_supports(game, AllColumnSubsets(game)) == 3
