"""
Tests for parity game solving and DOT export.
"""

import pytest

from core.errors import GuardExceededError
from core.models import Player
from games.builder import ParityGame
from games.export import to_dot
from games.solver import _losing_positions, attractor, brute_solve, solve
from tests.factories import random_parity_game

ELOISE, ABELARD = Player.ELOISE, Player.ABELARD


class TestAttractor:
    """Test forced reachability."""

    def test_chain(self):
        """Test owned positions are attracted with their move, others when all moves lead in."""
        # 0 (Eloise) -> 1 or 2; 1 (Abelard) -> 2 or 0; 2 -> 2
        game = ParityGame((ELOISE, ABELARD, ELOISE), ((1, 2), (2, 0), (2,)), (0, 0, 0))
        attr, strategy = attractor(game, frozenset(game.positions), {2}, ELOISE)
        assert attr == frozenset({0, 1, 2})
        assert strategy[0] == 2
        # Should not attract 0 for Abelard: Eloise escapes to 2
        attr, strategy = attractor(game, frozenset(game.positions), {1}, ABELARD)
        assert attr == frozenset({1})
        assert strategy == {}


class TestSolve:
    """Test Zielonka against positional-strategy enumeration."""

    def test_small_games(self):
        """Test self-loops decide by priority parity."""
        game = ParityGame((ELOISE, ABELARD), ((0, 1), (1,)), (1, 2))
        solution = solve(game)
        assert solution.winner(0) is ELOISE
        assert solution.move(0) == 1
        game = ParityGame((ABELARD, ELOISE), ((0, 1), (1,)), (2, 1))
        assert solve(game).winner(0) is ABELARD

    def test_matches_brute_force(self, rng):
        """Test 200 random games."""
        for _ in range(200):
            game = random_parity_game(rng, int(rng.integers(2, 9)))
            assert solve(game).regions == brute_solve(game).regions

    def test_regions_partition(self, rng):
        """Test every position is won by exactly one player."""
        for _ in range(50):
            game = random_parity_game(rng, 10)
            regions = solve(game).regions
            assert regions[ELOISE] | regions[ABELARD] == frozenset(game.positions)
            assert not regions[ELOISE] & regions[ABELARD]

    def test_strategies_win(self, rng):
        """Test each player's strategy wins from their whole region."""
        for _ in range(100):
            game = random_parity_game(rng, int(rng.integers(2, 12)))
            solution = solve(game)
            for player in (ELOISE, ABELARD):
                region = solution.regions[player]
                strategy = solution.strategies[player]
                owned = {v for v in region if game.owner[v] is player}
                assert set(strategy) == owned
                assert all(w in game.moves[v] and w in region for v, w in strategy.items())
                assert not region & _losing_positions(game, strategy, player)

    def test_brute_guard(self):
        """Test brute force refuses large games."""
        game = ParityGame((ELOISE,) * 3, ((0,), (1,), (2,)), (0, 0, 0))
        with pytest.raises(GuardExceededError):
            brute_solve(game, guard=2)

    def test_dump(self):
        """Test one line per position with winner and move."""
        game = ParityGame((ELOISE, ABELARD), ((0, 1), (1,)), (1, 2))
        lines = solve(game).dump(game).splitlines()
        assert lines[0] == "0 0 winner=eloise move=1"
        assert lines[1] == "1 1 winner=eloise"


class TestExport:
    """Test DOT rendering."""

    def test_dot(self):
        """Test shapes, colors and bold strategy edges."""
        game = ParityGame((ELOISE, ABELARD), ((0, 1), (1,)), (1, 2), observables=frozenset({1}))
        dot = to_dot(game, solve(game))
        assert dot.startswith("digraph game {")
        assert "shape=circle" in dot and "shape=box" in dot
        assert "peripheries=2" in dot
        assert "color=blue" in dot
        assert "n0 -> n1 [style=bold];" in dot

    def test_unsolved(self):
        """Test export without a solution."""
        game = ParityGame((ELOISE,), ((0,),), (0,))
        dot = to_dot(game)
        assert "color=" not in dot
        assert "n0 -> n0;" in dot
