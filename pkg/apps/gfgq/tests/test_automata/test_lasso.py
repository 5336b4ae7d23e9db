"""
Tests for lasso words, alphabets and direct LTL evaluation.
"""

import pytest

from core.errors import AlphabetMismatchError
from automata.alphabet import Alphabet
from automata.lasso import LassoWord, evaluate, holds, random_lasso
from logic.parser import parse


def ltl(text):
    return parse(text).matrix


class TestLassoWord:
    """Test positions, merging and rendering."""

    def test_positions(self):
        """Test letters and successors wrap into the loop."""
        w = LassoWord.of([["p"]], [[], ["q"]])
        assert w.length == 3
        assert w.letter(3) == frozenset()
        assert w.letter(4) == frozenset({"q"})
        assert w.successor(2) == 1
        assert w.prefix(4) == [frozenset({"p"}), frozenset(), frozenset({"q"}), frozenset()]

    def test_empty_loop(self):
        """Test a loop is never empty."""
        with pytest.raises(ValueError):
            LassoWord.of([["p"]], [])

    def test_merge(self):
        """Test letterwise union over the lcm of the loops."""
        a = LassoWord.of([], [["p"], []])
        b = LassoWord.of([["q"]], [[], ["q"], []])
        m = a.merge(b)
        for i in range(20):
            assert m.letter(i) == a.letter(i) | b.letter(i)

    def test_render(self):
        """Test the `{..} ({..})^w` rendering."""
        assert LassoWord.of([["p", "q"]], [[]]).render() == "{p q} ({})^w"

    def test_random_bounds(self, rng):
        """Test stem and loop lengths stay within bounds."""
        for _ in range(100):
            w = random_lasso(rng, ["p"], max_stem=2, max_loop=3)
            assert len(w.stem) <= 2
            assert 1 <= len(w.loop) <= 3


class TestEvaluate:
    """Test LTL on lassos."""

    @pytest.mark.parametrize("text, stem, loop, expected", [
        ("G p", [], [["p"]], True),
        ("G p", [["p"]], [[]], False),
        ("F G p", [[]], [["p"]], True),
        ("G F p", [], [[], ["p"]], True),
        ("F G p", [], [[], ["p"]], False),
        ("p U q", [["p"], ["p"]], [["q"]], True),
        ("p U q", [["p"], []], [["q"]], False),
        ("p R q", [], [["q"]], True),
        ("X X q", [[], []], [["q"]], True),
        ("(p <-> X q)", [["p"]], [["q"]], True),
    ])
    def test_examples(self, text, stem, loop, expected):
        """Test hand-checked verdicts."""
        assert holds(ltl(text), LassoWord.of(stem, loop)) is expected

    def test_vector(self):
        """Test one value per position of stem+loop."""
        values = evaluate(ltl("p"), LassoWord.of([["p"]], [[], ["p"]]))
        assert values == [True, False, True]

    def test_duals(self, rng):
        """Test F/G and U/R dualities on random lassos."""
        for _ in range(200):
            w = random_lasso(rng, ["p", "q"])
            assert holds(ltl("G p"), w) != holds(ltl("F !p"), w)
            assert holds(ltl("p U q"), w) != holds(ltl("!p R !q"), w)


class TestAlphabet:
    """Test valuation letters."""

    def test_encoding(self):
        """Test encode/decode with sorted props."""
        a = Alphabet.of(["q", "p"])
        assert a.props == ("p", "q")
        assert a.encode(["q"]) == 2
        assert a.decode(3) == frozenset({"p", "q"})
        assert a.valuation(1) == {"p": True, "q": False}
        assert a.encode_valuation({"p": False, "q": True}) == 2
        assert a.render(2) == "{q}"

    def test_restrict_and_without(self):
        """Test projection onto sub-alphabets."""
        a = Alphabet.of(["p", "q"])
        small = a.without("q")
        assert small.props == ("p",)
        assert a.restrict(3, small) == 1

    def test_mismatch(self):
        """Test foreign props are rejected."""
        a = Alphabet.of(["p"])
        with pytest.raises(AlphabetMismatchError):
            a.encode(["q"])
        with pytest.raises(AlphabetMismatchError):
            a.ensure_same(Alphabet.of(["q"]))
