"""
Tests for the formula text parser.
"""

import pytest

from core.errors import DuplicateQuantifierError, FormulaSyntaxError
from core.models import QuantifierKind
from logic.formula import (
    ALL, BEHAVIORAL, FALSE, STRONGLY_BEHAVIORAL, TRUE, VANILLA,
    And, Atom, Globally, Iff, Implies, Next, Not, Or, QuantSpec, Release, Until,
)
from logic.parser import parse, parse_file

p, q, r = Atom("p"), Atom("q"), Atom("r")


class TestQuantifiers:
    """Test prefix syntax and spec sugar."""

    def test_sugar(self):
        """Test :B, :S and a missing spec."""
        f = parse("E q:B. A p:S. E r. (p <-> X q)")
        kinds = [x.kind for x in f.prefix]
        specs = [x.spec for x in f.prefix]

        assert kinds == [QuantifierKind.EXISTS, QuantifierKind.FORALL, QuantifierKind.EXISTS]
        assert specs == [BEHAVIORAL, STRONGLY_BEHAVIORAL, VANILLA]

    def test_explicit_spec(self):
        """Test the <props;props> form."""
        f = parse("A p:<*; q r t>. p")
        assert f.prefix[0].spec == QuantSpec(ALL, frozenset({"q", "r", "t"}))

        g = parse("A p:<p;>. p")
        assert g.prefix[0].spec == QuantSpec(frozenset({"p"}), frozenset())

    def test_duplicate(self):
        """Test duplicate quantification is a typed error."""
        with pytest.raises(DuplicateQuantifierError):
            parse("E q. A q. q")


class TestPrecedence:
    """Test operator precedence and associativity."""

    @pytest.mark.parametrize("text, expected", [
        ("p & q | r", Or(And(p, q), r)),
        ("p | q & r", Or(p, And(q, r))),
        ("p -> q -> r", Implies(p, Implies(q, r))),
        ("p <-> q -> r", Iff(p, Implies(q, r))),
        ("p U q U r", Until(p, Until(q, r))),
        ("p R q & r", And(Release(p, q), r)),
        ("!p U q", Until(Not(p), q)),
        ("X p & q", And(Next(p), q)),
        ("G (p -> X q)", Globally(Implies(p, Next(q)))),
        ("true | false", Or(TRUE, FALSE)),
        ("G X p", Globally(Next(p))),
        ("G Xp", Globally(Atom("Xp"))),
        ("X (p)", Next(p)),
    ])
    def test_shapes(self, text, expected):
        """Test the tree built for each text."""
        assert parse(text).matrix == expected

    def test_comments_and_whitespace(self):
        """Test # comments run to end of line."""
        f = parse("# always p\nG p   # trailing\n")
        assert f.matrix == Globally(p)


class TestErrors:
    """Test syntax errors carry a position."""

    @pytest.mark.parametrize("text", ["E q: G q", "p &", "(p", "A . p", "p q"])
    def test_rejected(self, text):
        """Test malformed inputs raise FormulaSyntaxError."""
        with pytest.raises(FormulaSyntaxError):
            parse(text)

    def test_position(self):
        """Test line and column of the offending token."""
        with pytest.raises(FormulaSyntaxError) as info:
            parse("G p\n& & q")

        # Should point at the second line
        assert info.value.line == 2

    @pytest.mark.parametrize("text, keyword", [
        ("E X. p", "X"),
        ("A G:B. p", "G"),
        ("E q:<p U;>. q", "U"),
        ("E true. p", "true"),
    ])
    def test_keyword_names(self, text, keyword):
        """Test operator keywords cannot name a proposition."""
        with pytest.raises(FormulaSyntaxError) as info:
            parse(text)

        # Should name the keyword and where it was found
        assert f"'{keyword}' is an operator keyword" in str(info.value)
        assert info.value.line == 1


class TestCorpus:
    """Test every corpus formula parses."""

    def test_all_files(self, corpus_dir):
        """Test the corpus is well formed."""
        files = sorted(corpus_dir.glob("*.gq"))
        assert len(files) >= 10
        for path in files:
            parse_file(path)

    def test_ceacae(self, load_formula):
        """Test the five-quantifier example."""
        f = load_formula("ceacae.gq")
        assert f.prefix.props == ("p", "q", "r", "s", "t")
        assert f.is_closed
