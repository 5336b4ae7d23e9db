"""
Deterministic parity automata (max-even, state-based priorities).

A run is accepting iff the largest priority it visits infinitely often is even.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, List, Optional, Tuple, TypeVar

import networkx as nx

from core.config import settings
from core.errors import check_guard
from automata.alphabet import Alphabet
from automata.buchi import BuchiAutomaton, explore_nba
from automata.lasso import LassoWord

logger = logging.getLogger(__name__)

K = TypeVar("K", bound=Hashable)


@dataclass(frozen=True, eq=False)
class ParityAutomaton:
    alphabet: Alphabet
    initial: int
    delta: Tuple[Tuple[int, ...], ...]
    priority: Tuple[int, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.priority) != len(self.delta):
            raise ValueError("one priority per state")
        for row in self.delta:
            if len(row) != self.alphabet.size:
                raise ValueError("transition function is not total")

    @property
    def size(self) -> int:
        return len(self.delta)

    @property
    def states(self) -> range:
        return range(self.size)

    @property
    def max_priority(self) -> int:
        return max(self.priority)

    def label(self, state: int) -> str:
        return self.labels[state] if self.labels else str(state)

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]

    def run(self, letters) -> int:
        q = self.initial
        for a in letters:
            q = self.delta[q][a]
        return q

    def lasso_cycle(self, word: LassoWord) -> List[int]:
        """States visited infinitely often on the lasso, in visiting order."""
        stem, loop = word.encode(self.alphabet)
        letters = stem + loop
        q, i = self.initial, 0
        seen: Dict[Tuple[int, int], int] = {}
        trace: List[int] = []
        while (q, i) not in seen:
            seen[(q, i)] = len(trace)
            trace.append(q)
            q = self.delta[q][letters[i]]
            i = word.successor(i)
        return trace[seen[(q, i)]:]

    def accepts(self, word: LassoWord) -> bool:
        return max(self.priority[q] for q in self.lasso_cycle(word)) % 2 == 0

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        for s, row in enumerate(self.delta):
            for letter, t in enumerate(row):
                if not g.has_edge(s, t):
                    g.add_edge(s, t, letter=letter)
        return g

    def is_empty(self) -> bool:
        """No reachable cycle whose largest priority is even."""
        g = self.graph()
        reachable = nx.descendants(g, self.initial) | {self.initial}
        for p in sorted({x for x in self.priority if x % 2 == 0}):
            sub = g.subgraph(s for s in reachable if self.priority[s] <= p)
            for component in nx.strongly_connected_components(sub):
                cyclic = len(component) > 1 or any(sub.has_edge(v, v) for v in component)
                if cyclic and any(self.priority[v] == p for v in component):
                    return False
        return True

    def to_dot(self, name: str = "dpa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
        for s in self.states:
            lines.append(f'  q{s} [shape=circle, label="{self.label(s)} / {self.priority[s]}"];')
        lines.append(f"  init -> q{self.initial};")
        for s, row in enumerate(self.delta):
            grouped: Dict[int, List[int]] = {}
            for letter, t in enumerate(row):
                grouped.setdefault(t, []).append(letter)
            for t in sorted(grouped):
                text = ", ".join(self.alphabet.render(x) for x in grouped[t])
                lines.append(f'  q{s} -> q{t} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines)


def explore_dpa(
    alphabet: Alphabet,
    initial: K,
    step: Callable[[K, int], K],
    priority: Callable[[K], int],
    budget: Optional[int] = None,
    label: Callable[[K], str] = str,
) -> ParityAutomaton:
    """
    Build the reachable part of a deterministic automaton given on hashable keys.

    Raises:
        GuardExceededError: more states than the budget
    """
    limit = budget or settings.automaton_state_budget
    index: Dict[K, int] = {initial: 0}
    keys: List[K] = [initial]
    delta: List[Tuple[int, ...]] = []
    i = 0
    while i < len(keys):
        row = []
        for letter in alphabet.letters():
            t = step(keys[i], letter)
            if t not in index:
                index[t] = len(keys)
                keys.append(t)
                check_guard("automaton_states", len(keys), limit)
            row.append(index[t])
        delta.append(tuple(row))
        i += 1
    return ParityAutomaton(
        alphabet, 0, tuple(delta), tuple(priority(k) for k in keys), tuple(label(k) for k in keys)
    )


def complement_dpa(d: ParityAutomaton) -> ParityAutomaton:
    """Same transitions, every priority shifted by one."""
    return ParityAutomaton(d.alphabet, d.initial, d.delta, tuple(p + 1 for p in d.priority), d.labels)


def parity_to_buchi(d: ParityAutomaton, budget: Optional[int] = None) -> BuchiAutomaton:
    """
    Priority guessing: a copy (q, None) tracks the run, and copy (q, i) for an
    even i commits to never seeing a priority above i again; (q, i) accepts
    when priority(q) = i.
    """
    evens = sorted({p for p in d.priority if p % 2 == 0})

    def enter(q: int):
        yield (q, None)
        for i in evens:
            if d.priority[q] <= i:
                yield (q, i)

    def post(key, letter):
        q, i = key
        t = d.delta[q][letter]
        if i is None:
            return list(enter(t))
        return [(t, i)] if d.priority[t] <= i else []

    def accepting(key) -> bool:
        q, i = key
        return i is not None and d.priority[q] == i

    def label(key) -> str:
        q, i = key
        return f"{d.label(q)}|{'-' if i is None else i}"

    nba = explore_nba(d.alphabet, list(enter(d.initial)), post, accepting, budget, label)
    logger.debug(f"Parity-to-Büchi: {d.size} states -> {nba.size}")
    return nba.prune()


def union_with_cosafety(
    d: ParityAutomaton,
    monitor: ParityAutomaton,
    failed: int,
    alphabet: Optional[Alphabet] = None,
    budget: Optional[int] = None,
) -> ParityAutomaton:
    """
    Accept when `d` accepts or `monitor` enters its absorbing state `failed`.

    Both automata read the restriction of each letter of `alphabet` (default:
    the union of their alphabets). Once the monitor has failed the product
    collapses into one accepting sink whose even priority dominates `d`.
    """
    alphabet = alphabet or d.alphabet.union(monitor.alphabet)
    sink_priority = d.max_priority + (2 if d.max_priority % 2 == 0 else 1)
    sink = ("failed",)

    def step(key, letter):
        if key == sink:
            return sink
        q, s = key
        s2 = monitor.delta[s][alphabet.restrict(letter, monitor.alphabet)]
        if s2 == failed:
            return sink
        return (d.delta[q][alphabet.restrict(letter, d.alphabet)], s2)

    def priority(key) -> int:
        return sink_priority if key == sink else d.priority[key[0]]

    def label(key) -> str:
        return "failed" if key == sink else f"{d.label(key[0])},{monitor.label(key[1])}"

    initial = sink if monitor.initial == failed else (d.initial, monitor.initial)
    return explore_dpa(alphabet, initial, step, priority, budget, label)
