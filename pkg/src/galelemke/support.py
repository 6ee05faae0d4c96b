"""Support enumeration and randomized support search.

Guessing a pair of equal-size supports reduces equilibrium finding to two
square linear systems (equal payoffs on the opponent's support, probabilities
summing to one) plus best-response checks outside the supports.  Singular or
infeasible systems are normal negative outcomes.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import BudgetExceededError, NoEquilibriumError
from .game import (
    ZERO,
    BimatrixGame,
    MixedProfile,
    UnitVectorGame,
    _all_equal_supports,
    verify_equilibrium,
)
from .linalg import solve_square


@dataclass(frozen=True)
class SupportPair:
    """Candidate supports, 1-based: s1 over rows, s2 over columns."""

    s1: frozenset[int]
    s2: frozenset[int]

    def __post_init__(self):
        if not self.s1 or not self.s2:
            raise ValueError("supports must be nonempty")

    @classmethod
    def of(cls, s1, s2) -> "SupportPair":
        return cls(frozenset(int(v) for v in s1), frozenset(int(v) for v in s2))


def _indifference_solution(payoff_rows, size):
    """Solve: opponent is indifferent across ``payoff_rows`` (one row per
    own support strategy), weights sum to 1.  Unknowns: weights and the
    common payoff.  Returns (weights, payoff) or None if singular."""
    system = [row + [Fraction(-1)] for row in payoff_rows]
    system.append([Fraction(1)] * size + [Fraction(0)])
    rhs = [ZERO] * size + [Fraction(1)]
    sol = solve_square(system, rhs)
    if sol is None:
        return None
    return sol[:size], sol[size]


def solve_support(game: BimatrixGame, pair: SupportPair) -> MixedProfile | None:
    """The equilibrium supported exactly on the pair, if one exists.

    Requires equal support sizes.  Returns None when the linear systems are
    singular, a weight leaves the support (zero or negative), or a strategy
    outside a support beats the support payoff.
    """
    m, n = game.m, game.n
    s1 = sorted(pair.s1)
    s2 = sorted(pair.s2)
    if len(s1) != len(s2):
        raise ValueError("support sizes must be equal")
    if s1[-1] > m or s2[-1] > n:
        raise ValueError("support indices out of range")
    size = len(s1)

    # player 2's mix makes player 1 indifferent across s1
    rows_a = [[game.a[i - 1][j - 1] for j in s2] for i in s1]
    y_sol = _indifference_solution(rows_a, size)
    if y_sol is None:
        return None
    y_weights, u = y_sol
    if any(w <= 0 for w in y_weights):
        return None
    # player 1's mix makes player 2 indifferent across s2
    rows_b = [[game.b[i - 1][j - 1] for i in s1] for j in s2]
    x_sol = _indifference_solution(rows_b, size)
    if x_sol is None:
        return None
    x_weights, v = x_sol
    if any(w <= 0 for w in x_weights):
        return None

    x = [ZERO] * m
    for i, w in zip(s1, x_weights):
        x[i - 1] = w
    y = [ZERO] * n
    for j, w in zip(s2, y_weights):
        y[j - 1] = w
    # best-response checks outside the supports
    for i in range(1, m + 1):
        if i not in pair.s1:
            payoff = sum((game.a[i - 1][j - 1] * y[j - 1] for j in s2), ZERO)
            if payoff > u:
                return None
    for j in range(1, n + 1):
        if j not in pair.s2:
            payoff = sum((game.b[i - 1][j - 1] * x[i - 1] for i in s1), ZERO)
            if payoff > v:
                return None
    return MixedProfile(tuple(x), tuple(y))


def enumerate_equilibria(game: BimatrixGame, max_pairs: int = 1 << 22) -> list[MixedProfile]:
    """All equilibria of a nondegenerate game, by trying every equal-size
    support pair; deduplicated and sorted lexicographically."""
    m, n = game.m, game.n
    total = sum(comb(m, k) * comb(n, k) for k in range(1, min(m, n) + 1))
    if total > max_pairs:
        raise BudgetExceededError(f"{total} support pairs exceed the budget {max_pairs}")
    found = set()
    for s1, s2 in _all_equal_supports(m, n):
        profile = solve_support(game, SupportPair(s1, s2))
        if profile is not None:
            found.add(profile)
    return sorted(found, key=lambda p: (p.x, p.y))


def search_equal_supports(game: BimatrixGame, seed: int | None = None) -> tuple[MixedProfile, int]:
    """First equilibrium over all equal-size support pairs and the number of
    guesses spent; size-ascending order, shuffled when a seed is given."""
    pairs = [SupportPair(s1, s2) for s1, s2 in _all_equal_supports(game.m, game.n)]
    if seed is not None:
        random.Random(seed).shuffle(pairs)
    for guesses, pair in enumerate(pairs, start=1):
        profile = solve_support(game, pair)
        if profile is not None:
            return profile, guesses
    raise NoEquilibriumError("no equilibrium on any equal-size support pair")


# ---------------------------------------------------------------------------
# Randomized search over a pluggable support universe (row support fixed to
# all rows, column supports of size m).


class AllColumnSubsets:
    """Universe of all size-m subsets of the n columns."""

    name = "all-m-subsets"

    def __init__(self, game_or_dims):
        if isinstance(game_or_dims, (BimatrixGame, UnitVectorGame)):
            self.m, self.n = game_or_dims.m, game_or_dims.n
        else:
            self.m, self.n = game_or_dims
        if self.n < self.m:
            raise ValueError("need at least m columns")

    def __len__(self) -> int:
        return comb(self.n, self.m)

    def support(self, index: int) -> frozenset[int]:
        """Lexicographic unranking of the index'th m-subset of 1..n."""
        if not 0 <= index < len(self):
            raise IndexError(index)
        chosen = []
        next_value = 1
        remaining = self.m
        while remaining:
            available = self.n - next_value
            skip = comb(available, remaining - 1)
            if index < skip:
                chosen.append(next_value)
                remaining -= 1
            else:
                index -= skip
            next_value += 1
        return frozenset(chosen)


class OnePerLabelClass:
    """Universe picking one column from each best-response class of a
    unit-vector game; size is the product of the class sizes."""

    name = "one-per-unit-vector"

    def __init__(self, u: UnitVectorGame):
        self.m, self.n = u.m, u.n
        classes = u.label_classes()
        if any(not cols for cols in classes.values()):
            raise ValueError("every row must be the best response of some column")
        self.classes = [classes[i] for i in range(1, u.m + 1)]

    def __len__(self) -> int:
        size = 1
        for cols in self.classes:
            size *= len(cols)
        return size

    def support(self, index: int) -> frozenset[int]:
        if not 0 <= index < len(self):
            raise IndexError(index)
        chosen = []
        for cols in reversed(self.classes):
            index, pos = divmod(index, len(cols))
            chosen.append(cols[pos])
        return frozenset(chosen)


@dataclass(frozen=True)
class SearchStats:
    """Outcome counters of one randomized search."""

    guesses: int
    universe_size: int
    equilibrium_support_count: int | None = None


def _lazy_shuffle(size: int, rng: random.Random):
    """Stream a uniform permutation of range(size) without materializing it."""
    slots: dict[int, int] = {}
    for i in range(size):
        j = rng.randrange(i, size)
        vi = slots.get(i, i)
        vj = slots.get(j, j)
        slots[i], slots[j] = vj, vi
        yield vj


def _try_full_row_support(game: BimatrixGame, columns: frozenset[int]) -> MixedProfile | None:
    return solve_support(
        game, SupportPair(frozenset(range(1, game.m + 1)), columns)
    )


def count_equilibrium_supports(game: BimatrixGame, universe) -> int:
    """Scan the whole universe once and count the supports that carry an
    equilibrium (with the row player on full support)."""
    return sum(
        1
        for index in range(len(universe))
        if _try_full_row_support(game, universe.support(index)) is not None
    )


def randomized_support_search(
    game: BimatrixGame,
    universe,
    seed: int,
    count_supports: bool = False,
) -> tuple[MixedProfile, SearchStats]:
    """Test the universe's supports in seeded uniform random order, pairing
    each against the full row support, until an equilibrium appears.

    Raises NoEquilibriumError when the universe holds none.  Pass
    ``count_supports=True`` to also scan for the total number of
    equilibrium supports (one full pass; used when comparing the guess
    count against its exact expectation).
    """
    size = len(universe)
    if size == 0:
        raise ValueError("empty universe")
    equilibria = count_equilibrium_supports(game, universe) if count_supports else None
    rng = random.Random(seed)
    guesses = 0
    for index in _lazy_shuffle(size, rng):
        guesses += 1
        profile = _try_full_row_support(game, universe.support(index))
        if profile is not None:
            assert verify_equilibrium(game, profile)
            return profile, SearchStats(guesses, size, equilibria)
    raise NoEquilibriumError(
        f"no equilibrium among the {size} supports of universe {universe.name!r}"
    )


def expected_guesses(universe_size: int, equilibrium_count: int) -> Fraction:
    """Exact expected number of guesses until the first success when testing
    uniformly without replacement: (|U| - |E|) / (|E| + 1) + 1."""
    if equilibrium_count <= 0:
        raise ValueError("at least one equilibrium support is required")
    if equilibrium_count > universe_size:
        raise ValueError("more equilibria than universe elements")
    return Fraction(universe_size - equilibrium_count, equilibrium_count + 1) + 1


def stats_to_csv(rows, out) -> None:
    """Dump per-seed search statistics: seed, guesses, universe, equilibria_found."""
    writer = csv.writer(out)
    writer.writerow(["seed", "guesses", "universe", "equilibria_found"])
    for seed, stats in rows:
        writer.writerow(
            [
                seed,
                stats.guesses,
                stats.universe_size,
                "" if stats.equilibrium_support_count is None else stats.equilibrium_support_count,
            ]
        )
