"""
Nondeterministic Büchi automata over valuation alphabets.

States are 0..n-1; delta[s] maps a letter to the set of successors and omits
letters without successors. Constructions explore reachable keys and number
them in discovery order, so equal inputs always give identical automata.
"""

from __future__ import annotations
import logging
from collections import deque
from dataclasses import dataclass
from typing import (
    Callable, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Set, Tuple, TypeVar,
)

import networkx as nx

from core.config import settings
from core.errors import check_guard
from automata.alphabet import Alphabet
from automata.lasso import LassoWord

logger = logging.getLogger(__name__)

K = TypeVar("K", bound=Hashable)
Row = Mapping[int, FrozenSet[int]]


@dataclass(frozen=True, eq=False)
class BuchiAutomaton:
    alphabet: Alphabet
    initial: FrozenSet[int]
    delta: Tuple[Row, ...]
    accepting: FrozenSet[int]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.initial:
            raise ValueError("a Büchi automaton has at least one initial state")
        for row in self.delta:
            for letter, succs in row.items():
                if not 0 <= letter < self.alphabet.size:
                    raise ValueError(f"letter {letter} outside alphabet {self.alphabet.props}")
                if any(not 0 <= t < len(self.delta) for t in succs):
                    raise ValueError("transition to an undeclared state")

    @property
    def size(self) -> int:
        return len(self.delta)

    @property
    def states(self) -> range:
        return range(self.size)

    def label(self, state: int) -> str:
        return self.labels[state] if self.labels else str(state)

    def post(self, state: int, letter: int) -> FrozenSet[int]:
        return self.delta[state].get(letter, frozenset())

    def graph(self) -> nx.DiGraph:
        """State graph; each edge keeps the smallest letter enabling it."""
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        for s, row in enumerate(self.delta):
            for letter in sorted(row):
                for t in row[letter]:
                    if not g.has_edge(s, t):
                        g.add_edge(s, t, letter=letter)
        return g

    def accepts(self, word: LassoWord) -> bool:
        """Whether some run on the lasso visits an accepting state infinitely often."""
        stem, loop = word.encode(self.alphabet)
        letters = stem + loop
        g = nx.DiGraph()
        frontier = deque((s, 0) for s in sorted(self.initial))
        seen = set(frontier)
        g.add_nodes_from(frontier)
        while frontier:
            s, i = frontier.popleft()
            j = word.successor(i)
            for t in self.post(s, letters[i]):
                g.add_edge((s, i), (t, j))
                if (t, j) not in seen:
                    seen.add((t, j))
                    frontier.append((t, j))
        return any(
            any(s in self.accepting for s, _ in component)
            for component in _cyclic_components(g)
        )

    def good_states(self) -> Set[int]:
        """States lying on a cycle through an accepting state."""
        good: Set[int] = set()
        for component in _cyclic_components(self.graph()):
            if component & self.accepting:
                good |= component
        return good

    def reachable(self) -> Set[int]:
        g = self.graph()
        out = set(self.initial)
        for s in self.initial:
            out |= nx.descendants(g, s)
        return out

    def is_empty(self) -> bool:
        return not (self.good_states() & self.reachable())

    def find_accepted_lasso(self) -> Optional[LassoWord]:
        """An accepted lasso, or None when the language is empty."""
        g = self.graph()
        good = self.good_states() & self.reachable()
        targets = sorted(s for s in good if s in self.accepting)
        if not targets:
            return None
        distance, paths = nx.multi_source_dijkstra(g, set(self.initial))
        target = min((s for s in targets if s in distance), key=lambda s: (distance[s], s))
        component = next(c for c in _cyclic_components(g) if target in c)
        sub = g.subgraph(component)
        cycle: Optional[List[int]] = None
        for t in sorted(sub.successors(target)):
            back = nx.shortest_path(sub, t, target)
            if cycle is None or len(back) + 1 < len(cycle):
                cycle = [target] + back
        decode = lambda path: tuple(
            self.alphabet.decode(g.edges[a, b]["letter"]) for a, b in zip(path, path[1:])
        )
        return LassoWord(decode(paths[target]), decode(cycle))

    def prune(self) -> "BuchiAutomaton":
        """Drop unreachable states and states from which no acceptance is possible."""
        g = self.graph()
        good = self.good_states()
        live = set(good)
        for s in good:
            live |= nx.ancestors(g, s)
        keep = sorted(self.reachable() & live)
        if not keep:
            return empty_nba(self.alphabet)
        index = {s: i for i, s in enumerate(keep)}
        delta = []
        for s in keep:
            row = {}
            for letter, succs in self.delta[s].items():
                kept = frozenset(index[t] for t in succs if t in index)
                if kept:
                    row[letter] = kept
            delta.append(row)
        return BuchiAutomaton(
            self.alphabet,
            frozenset(index[s] for s in self.initial if s in index),
            tuple(delta),
            frozenset(index[s] for s in self.accepting if s in index),
            tuple(self.label(s) for s in keep) if self.labels else (),
        )

    def to_dot(self, name: str = "nba") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
        for s in self.states:
            shape = "doublecircle" if s in self.accepting else "circle"
            lines.append(f'  q{s} [shape={shape}, label="{self.label(s)}"];')
        for s in sorted(self.initial):
            lines.append(f"  init -> q{s};")
        for s, row in enumerate(self.delta):
            grouped: Dict[int, List[int]] = {}
            for letter in sorted(row):
                for t in row[letter]:
                    grouped.setdefault(t, []).append(letter)
            for t in sorted(grouped):
                text = ", ".join(self.alphabet.render(x) for x in grouped[t])
                lines.append(f'  q{s} -> q{t} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines)


def _cyclic_components(g: nx.DiGraph) -> List[FrozenSet]:
    """Strongly connected components that contain at least one edge."""
    out = []
    for component in nx.strongly_connected_components(g):
        if len(component) > 1 or any(g.has_edge(v, v) for v in component):
            out.append(frozenset(component))
    return out


def empty_nba(alphabet: Alphabet) -> BuchiAutomaton:
    return BuchiAutomaton(alphabet, frozenset({0}), ({},), frozenset(), ("empty",))


def universal_nba(alphabet: Alphabet) -> BuchiAutomaton:
    return BuchiAutomaton(
        alphabet, frozenset({0}), ({a: frozenset({0}) for a in alphabet.letters()},),
        frozenset({0}), ("true",),
    )


def explore_nba(
    alphabet: Alphabet,
    initial: Iterable[K],
    post: Callable[[K, int], Iterable[K]],
    accepting: Callable[[K], bool],
    budget: Optional[int] = None,
    label: Callable[[K], str] = str,
) -> BuchiAutomaton:
    """
    Build the reachable part of an automaton given on hashable keys.

    Raises:
        GuardExceededError: more states than the budget
    """
    limit = budget or settings.automaton_state_budget
    index: Dict[K, int] = {}
    keys: List[K] = []

    def intern(key: K) -> int:
        if key not in index:
            index[key] = len(keys)
            keys.append(key)
            check_guard("automaton_states", len(keys), limit)
        return index[key]

    initial_ids = frozenset(intern(k) for k in initial)
    delta: List[Dict[int, FrozenSet[int]]] = []
    i = 0
    while i < len(keys):
        key = keys[i]
        row = {}
        for letter in alphabet.letters():
            succs = frozenset(intern(t) for t in post(key, letter))
            if succs:
                row[letter] = succs
        delta.append(row)
        i += 1
    return BuchiAutomaton(
        alphabet,
        initial_ids,
        tuple(delta),
        frozenset(index[k] for k in keys if accepting(k)),
        tuple(label(k) for k in keys),
    )


def project_nba(a: BuchiAutomaton, ap: str) -> BuchiAutomaton:
    """
    Existential projection of `ap`: a letter of the smaller alphabet moves
    wherever either of its two extensions moved.

    Raises:
        AlphabetMismatchError: ap not in the alphabet
    """
    target = a.alphabet.without(ap)
    lifts: Dict[int, List[int]] = {}
    for letter in a.alphabet.letters():
        lifts.setdefault(a.alphabet.restrict(letter, target), []).append(letter)
    delta = []
    for row in a.delta:
        projected = {}
        for small, bigs in lifts.items():
            succs = frozenset().union(*(row.get(b, frozenset()) for b in bigs))
            if succs:
                projected[small] = succs
        delta.append(projected)
    logger.debug(f"Projected '{ap}' out of a {a.size}-state NBA")
    return BuchiAutomaton(target, a.initial, tuple(delta), a.accepting, a.labels).prune()

