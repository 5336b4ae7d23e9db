"""
LangGraph node implementations for the decision pipeline.

Nodes follow one pattern:
- emit() a progress line into state["trace"]
- return state updates, never mutate in place
- turn typed toolkit errors into state["error"] / state["exception"]
"""

from __future__ import annotations
import logging
import time
from datetime import datetime
from functools import wraps
from typing import Callable, Dict

from core.errors import DomainError, GfgqError, UnsupportedFragmentError
from core.models import Answer, DecisionMode, PipelineStatistics, Player, Verdict
from automata.determinize import determinize
from automata.ltl2nba import ltl_to_nba
from automata.quantifiers import vanilla_to_nba
from decision.state import DecisionState
from decision.witness import extract_witness
from games.builder import build_sat_game, check_mc_inputs, mc_prefix, mc_winning_automaton
from games.solver import solve
from logic.formula import classify, negate_prenex
from logic.prefix import round_order

logger = logging.getLogger(__name__)

Node = Callable[[DecisionState], DecisionState]

MC_MODES = (DecisionMode.MC_UNIVERSAL, DecisionMode.MC_EXISTENTIAL)


def emit(state: DecisionState, label: str) -> DecisionState:
    """Append a timestamped progress line; returns a new state."""
    trace = list(state.get("trace", []))
    trace.append(f"[{datetime.now().strftime('%H:%M:%S')}] {label}")
    return {**state, "trace": trace}


def node(name: str) -> Callable[[Node], Node]:
    """Skip on earlier errors, time the node, and record typed errors."""
    def decorate(fn: Node) -> Node:
        @wraps(fn)
        def run(state: DecisionState) -> DecisionState:
            if state.get("error"):
                return state
            started = time.perf_counter()
            try:
                result = fn(state)
            except GfgqError as e:
                logger.error(f"{name} failed: {e}")
                result = {**state, "error": f"{name}: {e}", "exception": e}
            timings = dict(result.get("timings", {}))
            timings[name] = round((time.perf_counter() - started) * 1000, 3)
            return {**result, "timings": timings}
        return run
    return decorate


@node("preflight")
def preflight(state: DecisionState) -> DecisionState:
    mode = state["mode"]
    f = state["formula"]
    state = emit(state, f"Checking {mode.value} input")
    info = classify(f)

    if mode in MC_MODES:
        k = state.get("kripke")
        if k is None:
            raise DomainError("model checking needs a Kripke structure")
        if not info.is_behavioral:
            raise UnsupportedFragmentError("model checking needs a behavioral prefix")
        if not f.free_props <= set(k.aps):
            raise DomainError(f"free props {sorted(f.free_props - set(k.aps))} are not atomic in K")
        decided = negate_prenex(f) if mode is DecisionMode.MC_EXISTENTIAL else f
        check_mc_inputs(k, decided.prefix, decided.matrix)
        return {
            **state,
            "decided": decided,
            "flip": mode is DecisionMode.MC_EXISTENTIAL,
            "played": mc_prefix(k, decided.prefix),
        }

    if not info.is_closed:
        raise UnsupportedFragmentError(f"formula has free props {sorted(info.free_props)}")
    if mode is DecisionMode.SAT_VANILLA:
        if not info.is_vanilla:
            raise UnsupportedFragmentError("vanilla satisfiability needs unrestricted quantifiers")
        return {**state, "decided": f, "flip": False, "played": f.prefix}

    played = f.prefix if info.is_behavioral else round_order(f.prefix)
    if not info.is_behavioral:
        logger.info(f"Playing {f.prefix.render()} in round order {played.render()}")
    return {**state, "decided": f, "flip": False, "played": played}


@node("translate")
def translate(state: DecisionState) -> DecisionState:
    state = emit(state, "Translating matrix to NBA")
    f = state["decided"]
    budget = state.get("budget")
    if state["mode"] is DecisionMode.SAT_VANILLA:
        nba = vanilla_to_nba(f, budget)
        return {**state, "nba": nba, "eloise_wins": not nba.is_empty()}
    nba = ltl_to_nba(f.matrix, state["played"].props, budget)
    logger.info(f"Matrix NBA: {nba.size} states")
    return {**state, "nba": nba}


@node("determinize")
def determinize_matrix(state: DecisionState) -> DecisionState:
    state = emit(state, "Determinizing to parity automaton")
    budget = state.get("budget")
    d = determinize(state["nba"], budget)
    if state["mode"] in MC_MODES:
        d = mc_winning_automaton(state["kripke"], state["played"], d, budget)
    logger.info(f"Game automaton: {d.size} states, priorities 0..{d.max_priority}")
    return {**state, "dpa": d}


@node("build_game")
def build_game(state: DecisionState) -> DecisionState:
    state = emit(state, "Building parity game")
    game = build_sat_game(state["played"], state["dpa"], state.get("budget"))
    return {**state, "game": game}


@node("solve")
def solve_game(state: DecisionState) -> DecisionState:
    state = emit(state, "Solving parity game")
    game = state["game"]
    solution = solve(game)
    return {**state, "solution": solution, "eloise_wins": solution.winner(game.initial) is Player.ELOISE}


@node("witness")
def witness(state: DecisionState) -> DecisionState:
    wanted = (
        state.get("want_witness")
        and state["mode"] is DecisionMode.SAT_BEHAVIORAL
        and state.get("eloise_wins")
    )
    if not wanted:
        return state
    state = emit(state, "Extracting witness transducer")
    return {**state, "witness": extract_witness(state["game"], state["solution"])}


@node("report")
def report(state: DecisionState) -> DecisionState:
    state = emit(state, "Assembling verdict")
    holds = bool(state.get("eloise_wins")) != bool(state.get("flip"))
    return {**state, "answer": Answer.YES if holds else Answer.NO}


def verdict_of(state: DecisionState) -> Verdict:
    """Verdict with sizes and timings collected from a finished run."""
    game = state.get("game")
    dpa = state.get("dpa")
    statistics = PipelineStatistics(
        nba_states=state["nba"].size if state.get("nba") is not None else 0,
        automaton_states=dpa.size if dpa is not None else 0,
        game_positions=game.size if game is not None else 0,
        priorities=len(set(game.priority)) if game is not None else 0,
        millis=dict(state.get("timings", {})),
    )
    return Verdict(
        answer=state["answer"],
        mode=state["mode"],
        witness=state.get("witness"),
        statistics=statistics,
    )


NODE_REGISTRY: Dict[str, Node] = {
    "preflight": preflight,
    "translator": translate,
    "determinizer": determinize_matrix,
    "game_builder": build_game,
    "solver": solve_game,
    "witness_extractor": witness,
    "reporter": report,
}
