"""
Decision procedures: behavioral and vanilla satisfiability, model checking.

Each call runs the decision pipeline and re-raises the typed error a node
recorded, so callers see the same exceptions the stages raise.
"""

from __future__ import annotations
from typing import Optional

from core.errors import WitnessUnavailableError
from core.models import CheckMode, DecisionMode, Verdict
from decision.graph import get_pipeline
from decision.nodes import verdict_of
from decision.state import DecisionState
from decision.witness import Transducer
from logic.formula import Formula
from structures.kripke import KripkeStructure


def run_decision(
    mode: DecisionMode,
    f: Formula,
    kripke: Optional[KripkeStructure] = None,
    witness: bool = False,
    budget: Optional[int] = None,
) -> DecisionState:
    """Final pipeline state, with game and solution retained for export."""
    state = get_pipeline().run(mode, f, kripke=kripke, want_witness=witness, budget=budget)
    if state.get("error"):
        raise state["exception"]
    return state


def sat_behavioral(f: Formula, witness: bool = False, budget: Optional[int] = None) -> Verdict:
    """
    YES iff Eloise wins the quantification game of f.

    Prefixes with strongly behavioral specs are played in round order.

    Raises:
        UnsupportedFragmentError: f not closed, or its prefix has no round order
        GuardExceededError: automaton budget
    """
    return verdict_of(run_decision(DecisionMode.SAT_BEHAVIORAL, f, witness=witness, budget=budget))


def sat_vanilla(f: Formula, budget: Optional[int] = None) -> Verdict:
    """
    YES iff the NBA obtained by quantifier elimination is non-empty.

    Raises:
        UnsupportedFragmentError: f not closed or not vanilla
        GuardExceededError: automaton budget
    """
    return verdict_of(run_decision(DecisionMode.SAT_VANILLA, f, budget=budget))


def model_check(
    k: KripkeStructure,
    f: Formula,
    mode: CheckMode = CheckMode.UNIVERSAL,
    budget: Optional[int] = None,
) -> Verdict:
    """
    UNIVERSAL: Eloise wins the game where Abelard also picks a trace of K.
    EXISTENTIAL: NOT model_check(K, negate_prenex(f), UNIVERSAL).

    Raises:
        UnsupportedFragmentError: prefix not behavioral
        DomainError: f quantifies an atomic prop of K or has free props outside ap(K)
        GuardExceededError: automaton or subset budget
    """
    decision = DecisionMode.MC_UNIVERSAL if mode is CheckMode.UNIVERSAL else DecisionMode.MC_EXISTENTIAL
    return verdict_of(run_decision(decision, f, kripke=k, budget=budget))


def witness_for(f: Formula, budget: Optional[int] = None) -> Transducer:
    """
    Mealy witness of a satisfiable behavioral sentence.

    Raises:
        WitnessUnavailableError: f is not behaviorally satisfiable
        UnsupportedFragmentError: f not closed, or its prefix has no round order
        GuardExceededError: automaton budget
    """
    verdict = sat_behavioral(f, witness=True, budget=budget)
    if verdict.witness is None:
        raise WitnessUnavailableError(f"no witness: {f.render()} is not satisfiable")
    return verdict.witness
