from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from negadget.errors import (
    ParameterError,
    ResourceError,
    ShapeError,
    ValidationError,
)
from negadget.games import MixedProfile
from negadget.provers import (
    ProverStrategy,
    TwoProverGame,
    duplicate_questions,
    game_value,
    induced_two_prover,
    prover_payoff,
    uniformity_gap,
)

F = Fraction


def constant_game(nx, ny, na, nb, value, dist=None):
    table = tuple(
        tuple(
            tuple(tuple(value for _ in range(nb)) for _ in range(na))
            for _ in range(ny)
        )
        for _ in range(nx)
    )
    return TwoProverGame(
        x_answers=(na,) * nx, y_answers=(nb,) * ny, table=table, dist=dist
    )


def naive_game_value(t: TwoProverGame) -> Fraction:
    """Full double enumeration over strategy pairs; independent oracle."""
    best = F(0)
    for s1 in itertools.product(*(range(a) for a in t.x_answers)):
        for s2 in itertools.product(*(range(b) for b in t.y_answers)):
            value = prover_payoff(
                t, ProverStrategy(answers=s1), ProverStrategy(answers=s2)
            )
            if value > best:
                best = value
    return best


def random_two_prover(rng: random.Random) -> TwoProverGame:
    nx, ny = rng.randrange(1, 3), rng.randrange(1, 3)
    xa = tuple(rng.randrange(1, 4) for _ in range(nx))
    ya = tuple(rng.randrange(1, 4) for _ in range(ny))
    table = tuple(
        tuple(
            tuple(
                tuple(rng.randrange(2) for _ in range(ya[y]))
                for _ in range(xa[x])
            )
            for y in range(ny)
        )
        for x in range(nx)
    )
    return TwoProverGame(x_answers=xa, y_answers=ya, table=table)


class TestPayoff:
    def test_always_accept(self):
        t = constant_game(2, 2, 2, 2, 1)
        s = ProverStrategy(answers=(0, 0))
        assert prover_payoff(t, s, s) == 1

    def test_always_reject(self):
        t = constant_game(2, 2, 2, 2, 0)
        s = ProverStrategy(answers=(0, 0))
        assert prover_payoff(t, s, s) == 0

    def test_single_winning_pair(self):
        # V = 1 only at (x=0, y=0) with matching answers (0, 0).
        table = tuple(
            tuple(
                tuple(
                    tuple(
                        1 if (x, y, a, b) == (0, 0, 0, 0) else 0
                        for b in range(2)
                    )
                    for a in range(2)
                )
                for y in range(2)
            )
            for x in range(2)
        )
        t = TwoProverGame(x_answers=(2, 2), y_answers=(2, 2), table=table)
        s = ProverStrategy(answers=(0, 0))
        assert prover_payoff(t, s, s) == F(1, 4)

    def test_partial_strategy_rejected(self):
        t = constant_game(2, 2, 2, 2, 1)
        with pytest.raises(ValidationError):
            prover_payoff(
                t, ProverStrategy(answers=(0,)), ProverStrategy(answers=(0, 0))
            )

    def test_sub_distribution_missing_mass_pays_zero(self):
        dist = ((F(1, 2), F(0)), (F(0), F(0)))
        t = constant_game(2, 2, 1, 1, 1, dist=dist)
        s = ProverStrategy(answers=(0, 0))
        assert prover_payoff(t, s, s) == F(1, 2)


class TestGameValue:
    def test_constants(self):
        assert game_value(constant_game(2, 2, 2, 2, 1)) == 1
        assert game_value(constant_game(2, 2, 2, 2, 0)) == 0

    def test_matches_naive_oracle(self):
        rng = random.Random(7)
        for _ in range(30):
            t = random_two_prover(rng)
            assert game_value(t) == naive_game_value(t)

    def test_budget_error_names_product(self):
        t = constant_game(2, 2, 8, 8, 1)
        with pytest.raises(ResourceError, match="4096"):
            game_value(t, budget=100)

    def test_value_at_least_any_pair(self):
        rng = random.Random(11)
        t = random_two_prover(rng)
        value = game_value(t)
        for s1 in itertools.product(*(range(a) for a in t.x_answers)):
            for s2 in itertools.product(*(range(b) for b in t.y_answers)):
                assert value >= prover_payoff(
                    t, ProverStrategy(answers=s1), ProverStrategy(answers=s2)
                )

    def test_free_game_permutation_invariance(self):
        rng = random.Random(13)
        t = random_two_prover(rng)
        perm_x = list(range(t.nx))
        perm_y = list(range(t.ny))
        rng.shuffle(perm_x)
        rng.shuffle(perm_y)
        permuted = TwoProverGame(
            x_answers=tuple(t.x_answers[i] for i in perm_x),
            y_answers=tuple(t.y_answers[j] for j in perm_y),
            table=tuple(
                tuple(t.table[i][j] for j in perm_y) for i in perm_x
            ),
        )
        assert game_value(permuted) == game_value(t)


class TestDuplication:
    def test_value_preserved(self):
        rng = random.Random(17)
        for _ in range(10):
            t = random_two_prover(rng)
            doubled = duplicate_questions(t, dup_x=True, dup_y=True)
            assert doubled.nx == 2 * t.nx and doubled.ny == 2 * t.ny
            assert game_value(doubled) == game_value(t)


class TestUniformityGap:
    def test_uniform(self):
        assert uniformity_gap((F(1, 2), F(1, 2)), 2) == 0

    def test_concentrated(self):
        assert uniformity_gap((F(1), F(0)), 2) == 1

    def test_zero_marginal(self):
        assert uniformity_gap((F(0), F(0)), 2) == 1

    def test_bad_q(self):
        with pytest.raises(ParameterError):
            uniformity_gap((), 0)
        with pytest.raises(ShapeError):
            uniformity_gap((F(1),), 2)


class TestInducedGame:
    def test_certificate_marginals_uniform(self, single_build):
        b = single_build
        result = induced_two_prover(b.build.game, b.gadget.game, b.cert)
        nx, ny = b.build.game.nx, b.build.game.ny
        assert result.x_marginal == (F(1, nx),) * nx
        assert result.y_marginal == (F(1, ny),) * ny
        assert result.s_x.answers == b.s1.answers
        assert result.s_y.answers == b.s2.answers
        # The induced distribution is the outer product of the marginals.
        assert result.game.dist == tuple(
            tuple(F(1, nx * ny) for _ in range(ny)) for _ in range(nx)
        )
        assert prover_payoff(result.game, result.s_x, result.s_y) == 1

    def test_no_rc_mass_gives_empty_subdistribution(self, single_build):
        b = single_build
        game = b.gadget.game
        _, r0, r1, c0, c1 = game.block("RC")
        x = [F(0)] * game.rows
        x[r1] = F(1)  # first half-subset row
        y = [F(0)] * game.cols
        y[c1] = F(1)  # first half-subset column
        p = MixedProfile(x=tuple(x), y=tuple(y))
        result = induced_two_prover(b.build.game, game, p)
        assert sum(result.x_marginal) == 0
        assert sum(result.y_marginal) == 0

    def test_half_rc_mass(self, single_build):
        b = single_build
        game = b.gadget.game
        x = list(b.cert.x)
        moved = F(1, 2)
        # Move half the total RC mass onto the first half-subset row.
        x = [e * F(1, 2) for e in x]
        _, r0, r1, c0, c1 = game.block("RC")
        x[r1] = moved
        p = MixedProfile(x=tuple(x), y=b.cert.y)
        result = induced_two_prover(b.build.game, game, p)
        assert sum(result.x_marginal) == F(1, 2)
