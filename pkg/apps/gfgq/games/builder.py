"""
Parity games: the product of a quantification arena with a DPA.

The automaton component only moves on the reset edge out of a full valuation,
reading that valuation as a letter. Positions (q, ∅) carry priority(q) + 2;
every other position carries 0, which never dominates since each round ends
on a reset.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Hashable, List, Optional, Tuple

import networkx as nx

from core.config import settings
from core.errors import AlphabetMismatchError, DomainError, check_guard
from core.models import Player, QuantifierKind
from automata.alphabet import Alphabet
from automata.determinize import determinize
from automata.ltl2nba import ltl_to_nba
from automata.parity import ParityAutomaton, union_with_cosafety
from games.arena import Arena, build_arena
from logic.formula import BEHAVIORAL, Ltl, Prefix, Quantifier, ltl_props
from logic.prefix import round_order
from structures.kripke import KripkeStructure, trace_automata

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ParityGame:
    owner: Tuple[Player, ...]
    moves: Tuple[Tuple[int, ...], ...]
    priority: Tuple[int, ...]
    initial: int = 0
    observables: FrozenSet[int] = frozenset()
    keys: Tuple[Hashable, ...] = ()
    arena: Optional[Arena] = field(default=None, repr=False)
    automaton: Optional[ParityAutomaton] = field(default=None, repr=False)

    def __post_init__(self):
        if not (len(self.owner) == len(self.moves) == len(self.priority)):
            raise ValueError("owner, moves and priority must cover the same positions")
        for v, succ in enumerate(self.moves):
            if not succ:
                raise ValueError(f"position {v} has no move")
            if any(not 0 <= w < len(self.moves) for w in succ):
                raise ValueError(f"position {v} moves outside the game")

    @property
    def size(self) -> int:
        return len(self.moves)

    @property
    def positions(self) -> range:
        return range(self.size)

    @property
    def max_priority(self) -> int:
        return max(self.priority)

    @cached_property
    def predecessors(self) -> Tuple[Tuple[int, ...], ...]:
        pred: List[List[int]] = [[] for _ in self.positions]
        for v, succ in enumerate(self.moves):
            for w in succ:
                pred[w].append(v)
        return tuple(tuple(sorted(set(p))) for p in pred)

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        for v in self.positions:
            g.add_node(v, owner=self.owner[v], priority=self.priority[v])
        g.add_edges_from((v, w) for v, succ in enumerate(self.moves) for w in succ)
        return g

    def key(self, position: int) -> Hashable:
        return self.keys[position] if self.keys else position

    def render(self, position: int) -> str:
        if self.arena is None or not self.keys:
            return str(position)
        q, v = self.keys[position]
        return f"{q}:{self.arena.render(v)}"


def build_sat_game(prefix: Prefix, d: ParityAutomaton, budget: Optional[int] = None) -> ParityGame:
    """
    Full product Q × arena positions.

    Raises:
        AlphabetMismatchError: d is not over Val(ap(prefix))
        UnsupportedFragmentError: prefix not behavioral
        GuardExceededError: product above the automaton budget
    """
    if set(d.alphabet.props) != set(prefix.props):
        raise AlphabetMismatchError(f"automaton over {d.alphabet.props}, prefix over {prefix.props}")
    arena = build_arena(prefix)
    check_guard("automaton_states", d.size * arena.size, budget or settings.automaton_state_budget)
    letters = arena.letters(d.alphabet)
    m = arena.size

    owner, moves, priority, keys = [], [], [], []
    for q in d.states:
        for v in range(m):
            keys.append((q, v))
            owner.append(arena.owner[v])
            if v in letters:
                moves.append((d.step(q, letters[v]) * m + arena.initial,))
            else:
                moves.append(tuple(q * m + w for w in arena.moves[v]))
            priority.append(d.priority[q] + 2 if v == arena.initial else 0)
    game = ParityGame(
        tuple(owner), tuple(moves), tuple(priority),
        initial=d.initial * m + arena.initial,
        observables=frozenset(q * m + arena.initial for q in d.states),
        keys=tuple(keys), arena=arena, automaton=d,
    )
    logger.info(f"Built game: {game.size} positions, {len(set(priority))} priorities")
    return game


def mc_prefix(k: KripkeStructure, prefix: Prefix) -> Prefix:
    """∀^B p⃗.℘ for p⃗ = ap(K), put in round order."""
    universal = Prefix(tuple(Quantifier(QuantifierKind.FORALL, p, BEHAVIORAL) for p in k.aps))
    return round_order(universal.concat(prefix))


def check_mc_inputs(k: KripkeStructure, prefix: Prefix, psi: Ltl) -> None:
    clash = set(prefix.props) & set(k.aps)
    if clash:
        raise DomainError(f"props {sorted(clash)} are both quantified and atomic in K")
    unbound = ltl_props(psi) - set(prefix.props) - set(k.aps)
    if unbound:
        raise DomainError(f"free props {sorted(unbound)} are not atomic in K")


def build_mc_game(
    k: KripkeStructure, prefix: Prefix, psi: Ltl, budget: Optional[int] = None
) -> ParityGame:
    """
    Game for K ⊨ ℘ψ with ℘' = ∀p⃗.℘: Eloise wins a play when its word either
    leaves the traces of K or satisfies ψ.

    Raises:
        DomainError: ℘ quantifies a prop of K, or ψ has props outside ap(K) ∪ ap(℘)
        GuardExceededError: automaton budget
    """
    check_mc_inputs(k, prefix, psi)
    played = mc_prefix(k, prefix)
    d_psi = determinize(ltl_to_nba(psi, played.props, budget), budget)
    return build_sat_game(played, mc_winning_automaton(k, played, d_psi, budget), budget)


def mc_winning_automaton(
    k: KripkeStructure, played: Prefix, d_psi: ParityAutomaton, budget: Optional[int] = None
) -> ParityAutomaton:
    """DPA over Val(ap(played)) accepting words that leave L(K) or are accepted by d_psi."""
    traces = trace_automata(k)
    alphabet = Alphabet.of(played.props)
    winning = union_with_cosafety(d_psi, traces.complement, traces.failed, alphabet, budget)
    logger.info(f"MC winning automaton: {d_psi.size} x {traces.language.size} -> {winning.size} states")
    return winning
