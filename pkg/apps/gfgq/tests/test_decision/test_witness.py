"""
Tests for witness transducers.
"""

import pytest

from core.errors import AlphabetMismatchError, WitnessUnavailableError
from core.models import DecisionMode, Player
from automata.lasso import LassoWord
from decision.procedures import run_decision, sat_behavioral, witness_for
from decision.witness import (
    Transducer, check_witness, extract_witness, induced_lasso, simulate_witness,
)
from games.builder import ParityGame
from games.solver import solve
from logic.parser import parse

COPY = "A p:B. E q:B. G (q <-> p)"


class TestExtraction:
    """Test transducers read off Eloise's strategy."""

    @pytest.fixture
    def copier(self) -> Transducer:
        return sat_behavioral(parse(COPY), witness=True).witness

    def test_alphabets(self, copier):
        """Test inputs are the universal props and outputs the existential ones."""
        assert copier.inputs.props == ("p",)
        assert copier.outputs.props == ("q",)
        assert copier.initial == 0

    def test_copies_input(self, copier):
        """Test the transducer writes q = p at every instant."""
        assert copier.run([1, 0, 0, 1]) == [1, 0, 0, 1]

    def test_table(self, copier):
        """Test one row per state and input letter."""
        rows = copier.table()
        assert len(rows) == copier.size * 2
        assert copier.render_table().splitlines()[0] == "state\tinput\toutput\tnext"

    def test_induced_lasso(self, copier):
        """Test the produced word merges input and output letters."""
        word = induced_lasso(copier, LassoWord.of([["p"]], [[]]))
        assert word.letter(0) == frozenset({"p", "q"})
        assert word.letter(5) == frozenset()

    def test_delay_witness(self, rng, load_formula):
        """Test the strongly behavioral copy writes q(t) = p(t-1) from t = 1 on."""
        t = witness_for(load_formula("bhcsat2g.gq"))
        for _ in range(50):
            inputs = [int(b) for b in rng.integers(0, 2, size=8)]
            outputs = t.run(inputs)
            assert outputs[1:] == inputs[:-1]

    def test_from_formula(self, load_formula):
        """Test the formula-level entry point."""
        assert witness_for(parse(COPY)).run([1, 0, 0, 1]) == [1, 0, 0, 1]
        with pytest.raises(WitnessUnavailableError):
            witness_for(load_formula("intro_behavioral.gq"))

    def test_abelard_wins(self, load_formula):
        """Test no witness exists when Eloise loses."""
        state = run_decision(DecisionMode.SAT_BEHAVIORAL, load_formula("intro_behavioral.gq"))
        with pytest.raises(WitnessUnavailableError):
            extract_witness(state["game"], state["solution"])
        assert sat_behavioral(load_formula("intro_behavioral.gq"), witness=True).witness is None

    def test_bare_game(self):
        """Test games without an arena carry no rounds to read."""
        game = ParityGame((Player.ELOISE,), ((0,),), (0,))
        with pytest.raises(WitnessUnavailableError):
            extract_witness(game, solve(game))


class TestValidation:
    """Test witnesses against random adversaries."""

    @pytest.mark.parametrize("name", ["always_q.gq", "bhcsat1.gq", "bhcsat2.gq", "bhcsat2g.gq", "ceacae.gq"])
    def test_corpus_witnesses(self, load_formula, name):
        """Test every satisfiable corpus sentence yields a sound witness."""
        f = load_formula(name)
        t = sat_behavioral(f, witness=True).witness
        assert t is not None
        assert check_witness(f, t, samples=200) is None

    def test_corrupted_witness_fails(self):
        """Test flipping one output is caught."""
        f = parse(COPY)
        t = sat_behavioral(f, witness=True).witness
        broken = t.corrupted(0, t.inputs.encode(["p"]))
        failing = check_witness(f, broken, samples=200, seed=7)
        assert failing is not None
        assert not simulate_witness(broken, f, failing)

    def test_alphabet_mismatch(self):
        """Test the transducer must match the formula's quantifiers."""
        t = sat_behavioral(parse(COPY), witness=True).witness
        with pytest.raises(AlphabetMismatchError):
            simulate_witness(t, parse("A r:B. E q:B. G (q <-> r)"), LassoWord.of([], [["r"]]))
