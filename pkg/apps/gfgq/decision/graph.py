"""
LangGraph composition of the decision pipeline.

preflight → translator → determinizer → game_builder → solver →
witness_extractor → reporter, with an early exit to END whenever a node
records an error. Vanilla satisfiability is answered by the translator and
jumps straight to the reporter.
"""

from __future__ import annotations
import logging
from typing import Literal, Optional

from langgraph.graph import END, StateGraph

from core.models import DecisionMode
from decision.nodes import NODE_REGISTRY
from decision.state import DecisionState
from logic.formula import Formula
from structures.kripke import KripkeStructure

logger = logging.getLogger(__name__)

_CHAIN = ["preflight", "translator", "determinizer", "game_builder", "solver", "witness_extractor", "reporter"]


class DecisionGraph:
    """Deterministic decision pipeline; compiled once, invoked per query."""

    def __init__(self):
        self.graph = None
        self.app = None
        self._build_graph()

    def _build_graph(self):
        self.graph = StateGraph(DecisionState)
        for name in _CHAIN:
            self.graph.add_node(name, NODE_REGISTRY[name])
        self.graph.set_entry_point("preflight")

        self.graph.add_conditional_edges(
            "translator",
            self._after_translation,
            {"continue": "determinizer", "vanilla": "reporter", "end": END},
        )
        for current, following in zip(_CHAIN, _CHAIN[1:]):
            if current == "translator":
                continue
            self.graph.add_conditional_edges(
                current, self._should_continue, {"continue": following, "end": END}
            )
        self.graph.add_edge("reporter", END)

        # States carry automata and games; no checkpointer.
        self.app = self.graph.compile()

    def _should_continue(self, state: DecisionState) -> Literal["continue", "end"]:
        if state.get("error"):
            return "end"
        return "continue"

    def _after_translation(self, state: DecisionState) -> Literal["continue", "vanilla", "end"]:
        if state.get("error"):
            return "end"
        if state["mode"] is DecisionMode.SAT_VANILLA:
            return "vanilla"
        return "continue"

    def run(
        self,
        mode: DecisionMode,
        formula: Formula,
        kripke: Optional[KripkeStructure] = None,
        want_witness: bool = False,
        budget: Optional[int] = None,
    ) -> DecisionState:
        """Run the pipeline; the returned state carries every artifact and any error."""
        initial_state: DecisionState = {
            "mode": mode,
            "formula": formula,
            "kripke": kripke,
            "want_witness": want_witness,
            "budget": budget,
            "timings": {},
            "trace": [],
            "error": None,
        }
        result = self.app.invoke(initial_state)
        for line in result.get("trace", []):
            logger.debug(line)
        return result


_pipeline: Optional[DecisionGraph] = None


def get_pipeline() -> DecisionGraph:
    global _pipeline
    if _pipeline is None:
        _pipeline = DecisionGraph()
    return _pipeline
