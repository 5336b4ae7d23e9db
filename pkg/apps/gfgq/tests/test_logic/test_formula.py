"""
Tests for the formula AST: classification, spec algebra, negation and rendering.
"""

import pytest

from core.errors import DuplicateQuantifierError
from core.models import QuantifierKind
from logic.formula import (
    ALL, BEHAVIORAL, STRONGLY_BEHAVIORAL, TRUE, VANILLA,
    And, Atom, Formula, Future, Globally, Iff, Next, Not, Or, Prefix,
    QAnd, QNot, QuantSpec, Quantified, Quantifier, Until,
    as_prenex, classify, is_x_bounded, ltl_props, negate_prenex, render_ltl,
    spec_union, strict_on, to_general, x_depth,
)
from logic.parser import parse
from tests.factories import random_ltl, random_sentence

p, q = Atom("p"), Atom("q")


def E(prop, spec=VANILLA):
    return Quantifier(QuantifierKind.EXISTS, prop, spec)


def A(prop, spec=VANILLA):
    return Quantifier(QuantifierKind.FORALL, prop, spec)


class TestClassify:
    """Test structural predicates of formulae."""

    def test_behavioral_sentence(self):
        """Test a closed behavioral sentence."""
        f = Formula(Prefix((E("q", BEHAVIORAL), A("p", BEHAVIORAL))), Iff(p, Next(q)))
        c = classify(f)

        # Should be prenex, behavioral and closed
        assert c.is_prenex and c.is_behavioral
        assert not c.is_vanilla
        assert c.is_closed
        assert c.quantified_props == frozenset({"p", "q"})

    def test_vanilla_is_not_behavioral(self):
        """Test empty specs are not B."""
        f = Formula(Prefix((A("p"), E("q"))), Iff(q, Next(p)))
        c = classify(f)
        assert c.is_vanilla
        assert not c.is_behavioral

    def test_matrix_only(self):
        """Test an empty prefix is prenex with free props."""
        c = classify(Formula(Prefix(), Globally(p)))
        assert c.is_prenex
        assert c.free_props == frozenset({"p"})

    def test_strongly_behavioral(self):
        """Test S specs are recognised."""
        f = Formula(Prefix((E("q", STRONGLY_BEHAVIORAL),)), Globally(q))
        assert classify(f).is_strongly_behavioral
        assert not classify(f).is_behavioral

    def test_general_formula(self):
        """Test a quantifier under a Boolean connective is not prenex."""
        g = QAnd(Quantified(E("q"), q), p)
        c = classify(g)
        assert not c.is_prenex
        assert not c.is_behavioral
        assert c.free_props == frozenset({"p"})
        assert as_prenex(g) is None

    def test_general_view_of_prenex(self):
        """Test to_general and as_prenex are inverse on prenex formulae."""
        f = parse("A p:B. E q:S. (p <-> X q)")
        assert as_prenex(to_general(f)) == f
        assert classify(QNot(to_general(f))).free_props == frozenset()


class TestQuantSpec:
    """Test the specification algebra."""

    def test_union_examples(self):
        """Test componentwise union with ALL absorbing."""
        strict = QuantSpec(frozenset(), frozenset({"q", "r", "t"}))
        assert spec_union(BEHAVIORAL, strict) == QuantSpec(ALL, frozenset({"q", "r", "t"}))
        assert spec_union(strict, VANILLA) == strict
        a = QuantSpec(frozenset({"p"}), frozenset({"q"}))
        b = QuantSpec(frozenset({"q"}), frozenset({"p"}))
        assert spec_union(a, b) == QuantSpec(frozenset({"p", "q"}), frozenset({"p", "q"}))

    def test_union_laws(self, rng):
        """Test associativity, commutativity and idempotence on random specs."""
        def random_side():
            if rng.random() < 0.2:
                return ALL
            return frozenset(x for x in "pqr" if rng.random() < 0.5)

        specs = [QuantSpec(random_side(), random_side()) for _ in range(30)]
        for a in specs[:10]:
            assert spec_union(a, a) == a
            for b in specs[10:20]:
                assert spec_union(a, b) == spec_union(b, a)
                for c in specs[20:]:
                    assert spec_union(spec_union(a, b), c) == spec_union(a, spec_union(b, c))

    def test_split(self):
        """Test props are split by how a functor may read them."""
        spec = strict_on(["t"])
        unrestricted, behavioral, strict = spec.split(["p", "t"])
        assert unrestricted == frozenset()
        assert behavioral == frozenset({"p"})
        assert strict == frozenset({"t"})
        assert VANILLA.split(["p"])[0] == frozenset({"p"})

    def test_render(self):
        """Test explicit rendering of specs."""
        assert BEHAVIORAL.render() == "<*;>"
        assert STRONGLY_BEHAVIORAL.render() == "<;*>"
        assert VANILLA.render() == "<;>"
        assert strict_on(["r", "q"]).render() == "<*; q r>"


class TestNegatePrenex:
    """Test prenex negation."""

    def test_one_step(self):
        """Test kinds flip, specs stay and the matrix is negated inward."""
        f = Formula(Prefix((E("q", BEHAVIORAL),)), Globally(q))
        g = negate_prenex(f)
        assert g.prefix == Prefix((A("q", BEHAVIORAL),))
        assert g.matrix == Future(Not(q))

    def test_empty_prefix(self):
        """Test a bare matrix is negated."""
        assert negate_prenex(Formula(Prefix(), p)).matrix == Not(p)

    def test_biconditional(self):
        """Test biconditionals stay negated as a whole."""
        f = parse("A p:B. E q:S. (p <-> X q)")
        g = negate_prenex(f)
        assert g.prefix.render() == "E p:<*;>. A q:<;*>."
        assert g.matrix == Not(Iff(p, Next(q)))

    def test_involution(self, rng):
        """Test double negation restores the prefix."""
        for _ in range(50):
            f = random_sentence(rng, quantifiers=3)
            g = negate_prenex(negate_prenex(f))
            assert g.prefix == f.prefix
            assert ltl_props(g.matrix) == ltl_props(f.matrix)


class TestPrefix:
    """Test prefix bookkeeping."""

    def test_duplicate_rejected(self):
        """Test a prop may be quantified once."""
        with pytest.raises(DuplicateQuantifierError):
            Prefix((E("q"), A("q")))

    def test_views(self):
        """Test prop views and alternation count."""
        prefix = parse("A p:B. E q:B. E r:B. A s:B. E t:B. G (q <-> p)").prefix
        assert prefix.props == ("p", "q", "r", "s", "t")
        assert prefix.existential_props == ("q", "r", "t")
        assert prefix.universal_props == ("p", "s")
        assert prefix.alternations == 3
        assert prefix.is_behavioral()
        assert prefix.dual().existential_props == ("p", "s")


class TestLtl:
    """Test LTL helpers."""

    def test_x_depth_and_boundedness(self):
        """Test X-depth and the X-bounded predicate."""
        psi = And(p, Next(Next(q)))
        assert x_depth(psi) == 2
        assert is_x_bounded(psi, 3)
        assert not is_x_bounded(psi, 2)
        assert not is_x_bounded(Until(p, q), 5)

    def test_render(self):
        """Test binary operators are parenthesized."""
        assert render_ltl(Or(And(p, q), Not(Next(p)))) == "((p & q) | !X p)"
        assert render_ltl(Globally(TRUE)) == "G true"

    def test_render_parse_round_trip(self, rng):
        """Test parse(render(f)) == f on random ASTs."""
        for _ in range(100):
            psi = random_ltl(rng, ["p", "q", "r"], depth=4)
            assert parse(render_ltl(psi)).matrix == psi
        for _ in range(50):
            f = random_sentence(rng, quantifiers=3, x_bounded=False)
            assert parse(f.render()) == f
