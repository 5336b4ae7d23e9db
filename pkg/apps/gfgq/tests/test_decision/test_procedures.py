"""
Tests for satisfiability and model checking verdicts.
"""

import pytest

from core.errors import DomainError, GuardExceededError, UnsupportedFragmentError
from core.models import Answer, CheckMode, DecisionMode
from automata.lasso import holds
from decision.procedures import model_check, sat_behavioral, sat_vanilla
from logic.formula import Formula, Prefix, negate_prenex
from logic.parser import parse
from structures.kripke import lasso_traces
from tests.factories import random_kripke, random_ltl

UNIVERSAL, EXISTENTIAL = CheckMode.UNIVERSAL, CheckMode.EXISTENTIAL

DUALITY_FORMULAS = [
    "G p",
    "F !p",
    "F G p",
    "G F !p",
    "p U !p",
    "E q:B. G (q <-> p)",
    "E q:B. G (q <-> X p)",
    "E q:B. (X q <-> p)",
    "E q:B. F (q & !p)",
    "E q:S. G (q <-> p)",
    "E q:S. G (X q <-> p)",
    "A q:B. F (q & p)",
    "A q:B. (q | p)",
    "A q:B. G (q -> X p)",
    "A q:S. F (q <-> p)",
]


class TestSatisfiability:
    """Test golden verdicts on the corpus."""

    @pytest.mark.parametrize("name, expected", [
        ("always_q.gq", Answer.YES),
        ("bhcsat1.gq", Answer.YES),
        ("bhcsat2.gq", Answer.YES),
        ("bhcsat2g.gq", Answer.YES),
        ("ceacae.gq", Answer.YES),
        ("intro_behavioral.gq", Answer.NO),
        ("unrprp.gq", Answer.NO),
    ])
    def test_behavioral(self, load_formula, name, expected):
        """Test behavioral satisfiability through the game."""
        verdict = sat_behavioral(load_formula(name))
        assert verdict.answer is expected
        assert verdict.mode is DecisionMode.SAT_BEHAVIORAL
        assert verdict.witness is None

    @pytest.mark.parametrize("name, expected", [
        ("bhcsat0.gq", Answer.NO),
        ("intro_vanilla.gq", Answer.YES),
        ("sem.gq", Answer.YES),
    ])
    def test_vanilla(self, load_formula, name, expected):
        """Test vanilla satisfiability through quantifier elimination."""
        assert sat_vanilla(load_formula(name)).answer is expected

    def test_information_leak(self, load_formula):
        """Test the vanilla sentence is false while its behavioral counterpart holds."""
        assert not sat_vanilla(load_formula("bhcsat0.gq")).holds
        assert sat_behavioral(load_formula("bhcsat1.gq")).holds

    def test_statistics(self, load_formula):
        """Test sizes reported by a game run."""
        stats = sat_behavioral(load_formula("always_q.gq")).statistics
        assert stats.nba_states > 0
        assert stats.automaton_states > 0
        assert stats.game_positions == stats.automaton_states * 3
        assert stats.total_millis >= 0

    def test_errors(self, load_formula):
        """Test fragment checks and the state budget."""
        # Should reject free props
        with pytest.raises(UnsupportedFragmentError):
            sat_behavioral(load_formula("copy_p.gq"))
        # Should reject restricted quantifiers in vanilla mode
        with pytest.raises(UnsupportedFragmentError):
            sat_vanilla(load_formula("bhcsat1.gq"))
        with pytest.raises(GuardExceededError):
            sat_behavioral(load_formula("ceacae.gq"), budget=1)


class TestModelChecking:
    """Test universal and existential model checking."""

    @pytest.mark.parametrize("kripke, formula, mode, expected", [
        ("loop_p.kr", "G p", UNIVERSAL, True),
        ("branch_p.kr", "G p", UNIVERSAL, False),
        ("branch_p.kr", "G p", EXISTENTIAL, True),
        ("branch_p.kr", "F G !p", UNIVERSAL, False),
        ("branch_p.kr", "E q:B. G (q <-> p)", UNIVERSAL, True),
        ("branch_p.kr", "E q:B. G (q <-> X p)", UNIVERSAL, False),
        ("branch_p.kr", "E q:B. G (q <-> X p)", EXISTENTIAL, True),
        ("loop_p.kr", "E q:B. G (q <-> X p)", UNIVERSAL, True),
        ("branch_p.kr", "A q:B. (q | p)", UNIVERSAL, True),
    ])
    def test_scenarios(self, load_kripke, kripke, formula, mode, expected):
        """Test hand-checked verdicts."""
        verdict = model_check(load_kripke(kripke), parse(formula), mode)
        assert verdict.holds is expected

    @pytest.mark.parametrize("kripke", ["branch_p.kr", "loop_p.kr"])
    @pytest.mark.parametrize("formula", DUALITY_FORMULAS)
    def test_duality(self, load_kripke, kripke, formula):
        """Test EXISTENTIAL(f) = not UNIVERSAL(negate_prenex(f))."""
        k = load_kripke(kripke)
        f = parse(formula)
        existential = model_check(k, f, EXISTENTIAL).holds
        assert existential is not model_check(k, negate_prenex(f), UNIVERSAL).holds

    @pytest.mark.slow
    def test_quantifier_free_against_traces(self, rng):
        """Test LTL model checking equals checking every lasso trace up to stem+loop = 6."""
        for _ in range(30):
            k = random_kripke(rng, ["p", "q"])
            psi = random_ltl(rng, ["p", "q"], depth=2)
            f = Formula(Prefix(()), psi)
            verdicts = [holds(psi, w) for w in lasso_traces(k, 6)]
            assert model_check(k, f, UNIVERSAL).holds is all(verdicts)
            assert model_check(k, f, EXISTENTIAL).holds is any(verdicts)

    def test_errors(self, load_kripke):
        """Test fragment and domain checks."""
        k = load_kripke("branch_p.kr")
        with pytest.raises(UnsupportedFragmentError):
            model_check(k, parse("E q. G q"))
        with pytest.raises(DomainError):
            model_check(k, parse("E p:B. G p"))
        with pytest.raises(DomainError):
            model_check(k, parse("G r"))
