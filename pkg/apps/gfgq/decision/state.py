"""State carried through the decision pipeline graph."""

from __future__ import annotations
from typing import Any, Dict, List, Optional, TypedDict

from core.models import Answer, DecisionMode
from automata.buchi import BuchiAutomaton
from automata.parity import ParityAutomaton
from games.builder import ParityGame
from games.solver import Solution
from logic.formula import Formula, Prefix
from structures.kripke import KripkeStructure


class DecisionState(TypedDict, total=False):
    # inputs
    mode: DecisionMode
    formula: Formula
    kripke: Optional[KripkeStructure]
    want_witness: bool
    budget: Optional[int]

    # set by preflight
    decided: Formula          # formula actually decided (negated for existential MC)
    flip: bool                # answer of `decided` is negated in the report
    played: Prefix            # round-ordered prefix the game is played on

    # artifacts
    nba: BuchiAutomaton
    dpa: ParityAutomaton
    game: ParityGame
    solution: Solution
    eloise_wins: bool
    witness: Any
    answer: Answer

    # bookkeeping
    timings: Dict[str, float]
    trace: List[str]
    error: Optional[str]
    exception: Optional[BaseException]
