"""
Kripke structures and their trace languages.

Text format, one declaration per line (`#` starts a comment):

    kripke
    aps: p q
    init: s0
    state s0 {p}
    state s1 {p q}
    edge s0 s1
    edge s1 s1

A trace is the label sequence of an initial path, starting with the label of
the initial state.
"""

from __future__ import annotations
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Set, Tuple, Union

import networkx as nx

from core.config import settings
from core.errors import KripkeFormatError
from automata.alphabet import Alphabet
from automata.lasso import LassoWord
from automata.parity import ParityAutomaton, complement_dpa, explore_dpa
from oracle.assignments import Assignment, AssignmentSpace
from oracle.hyperassignment import Hyperassignment

logger = logging.getLogger(__name__)

NAME = r"[A-Za-z_][A-Za-z0-9_]*"
HEADER_RE = re.compile(r"^kripke$")
APS_RE = re.compile(rf"^aps:((?:\s+{NAME})*)$")
INIT_RE = re.compile(rf"^init:\s+({NAME})$")
STATE_RE = re.compile(rf"^state\s+({NAME})\s+\{{((?:\s*{NAME})*)\s*\}}$")
EDGE_RE = re.compile(rf"^edge\s+({NAME})\s+({NAME})$")


@dataclass(frozen=True, eq=False)
class KripkeStructure:
    aps: Tuple[str, ...]
    states: Tuple[str, ...]
    labels: Mapping[str, FrozenSet[str]]
    initial: str
    successors: Mapping[str, Tuple[str, ...]]

    def __post_init__(self):
        if self.initial not in self.labels:
            raise KripkeFormatError(f"initial state '{self.initial}' is not declared")
        for s in self.states:
            extra = self.labels[s] - set(self.aps)
            if extra:
                raise KripkeFormatError(f"state '{s}' is labeled with undeclared {sorted(extra)}")
        sinks = [s for s in self.states if not self.successors.get(s)]
        if sinks:
            raise KripkeFormatError(f"sink state(s) {sinks}: every state needs a successor")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.of(self.aps)

    def label_letter(self, state: str) -> int:
        return self.alphabet.encode(self.labels[state])

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        g.add_edges_from((s, t) for s in self.states for t in self.successors[s])
        return g

    def reachable(self) -> Set[str]:
        return nx.descendants(self.graph(), self.initial) | {self.initial}

    def to_dot(self, name: str = "kripke") -> str:
        lines = [f"digraph {name} {{", '  init [shape=point, label=""];']
        for s in self.states:
            label = " ".join(sorted(self.labels[s]))
            lines.append(f'  {s} [shape=ellipse, label="{s}\\n{{{label}}}"];')
        lines.append(f"  init -> {self.initial};")
        for s in self.states:
            for t in self.successors[s]:
                lines.append(f"  {s} -> {t};")
        lines.append("}")
        return "\n".join(lines)


def parse_kripke(text: str) -> KripkeStructure:
    """
    Raises:
        KripkeFormatError: unknown line, unknown state reference, duplicate or
            undeclared state, sink state, or missing header, aps or init
    """
    aps: Optional[Tuple[str, ...]] = None
    initial: Optional[Tuple[str, int]] = None
    labels: Dict[str, FrozenSet[str]] = {}
    order: List[str] = []
    edges: List[Tuple[str, str, int]] = []
    seen_header = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if not HEADER_RE.match(line):
                raise KripkeFormatError("expected 'kripke' header", number)
            seen_header = True
        elif m := APS_RE.match(line):
            aps = tuple(sorted(m.group(1).split()))
        elif m := INIT_RE.match(line):
            initial = (m.group(1), number)
        elif m := STATE_RE.match(line):
            name = m.group(1)
            if name in labels:
                raise KripkeFormatError(f"state '{name}' declared twice", number)
            labels[name] = frozenset(m.group(2).split())
            order.append(name)
        elif m := EDGE_RE.match(line):
            edges.append((m.group(1), m.group(2), number))
        else:
            raise KripkeFormatError(f"cannot read '{line}'", number)

    if not seen_header:
        raise KripkeFormatError("empty Kripke text")
    if aps is None:
        raise KripkeFormatError("missing 'aps:' line")
    if initial is None:
        raise KripkeFormatError("missing 'init:' line")
    if initial[0] not in labels:
        raise KripkeFormatError(f"unknown initial state '{initial[0]}'", initial[1])
    successors: Dict[str, List[str]] = {s: [] for s in order}
    for source, target, number in edges:
        for s in (source, target):
            if s not in labels:
                raise KripkeFormatError(f"unknown state '{s}'", number)
        if target not in successors[source]:
            successors[source].append(target)
    for s in order:
        extra = labels[s] - set(aps)
        if extra:
            raise KripkeFormatError(f"state '{s}' is labeled with undeclared {sorted(extra)}")
    k = KripkeStructure(
        aps, tuple(order), labels, initial[0], {s: tuple(ts) for s, ts in successors.items()}
    )
    logger.debug(f"Parsed Kripke structure: {len(order)} states over {aps}")
    return k


def read_kripke(path: Union[str, Path]) -> KripkeStructure:
    return parse_kripke(Path(path).read_text())


@dataclass(frozen=True)
class TraceAutomata:
    """L(K) and its complement as DPAs sharing states; `failed` is absorbing."""
    language: ParityAutomaton
    complement: ParityAutomaton
    failed: int


PRE = ("pre",)
FAILED = ("failed",)


def trace_automata(k: KripkeStructure, budget: Optional[int] = None) -> TraceAutomata:
    """
    Subset construction over label-guided moves: a key is the set of states
    the read prefix can end in, entered from a pre-initial key; reading a
    prefix that no path produces leads to the absorbing failed key.

    Raises:
        GuardExceededError: more subsets than the subset budget
    """
    alphabet = k.alphabet
    letters = {s: k.label_letter(s) for s in k.states}

    def step(key, letter):
        if key == FAILED:
            return FAILED
        if key == PRE:
            return frozenset({k.initial}) if letters[k.initial] == letter else FAILED
        nxt = frozenset(t for s in key for t in k.successors[s] if letters[t] == letter)
        return nxt or FAILED

    def label(key) -> str:
        if key in (PRE, FAILED):
            return key[0]
        return "{" + " ".join(sorted(key)) + "}"

    language = explore_dpa(
        alphabet, PRE, step, lambda key: 1 if key == FAILED else 0,
        budget or settings.subset_budget, label,
    )
    if "failed" not in language.labels:
        language = _with_failed_sink(language)
    failed = language.labels.index("failed")
    logger.debug(f"Trace automata of K: {language.size} states")
    return TraceAutomata(language, complement_dpa(language), failed)


def _with_failed_sink(d: ParityAutomaton) -> ParityAutomaton:
    sink = d.size
    return ParityAutomaton(
        d.alphabet,
        d.initial,
        d.delta + (tuple(sink for _ in d.alphabet.letters()),),
        d.priority + (1,),
        d.labels + ("failed",),
    )


def is_trace(k: KripkeStructure, word: LassoWord) -> bool:
    """Whether the lasso is a trace of K (every prefix is a path prefix)."""
    d = trace_automata(k).language
    return all(d.priority[q] == 0 for q in d.lasso_cycle(word))


def lasso_traces(k: KripkeStructure, max_length: int) -> Iterator[LassoWord]:
    """Distinct lasso traces read along initial paths of at most `max_length` states closing a loop."""
    seen = set()

    def walk(path: List[str]) -> Iterator[LassoWord]:
        last = path[-1]
        for j, s in enumerate(path):
            if s in k.successors[last]:
                word = LassoWord(
                    tuple(k.labels[x] for x in path[:j]), tuple(k.labels[x] for x in path[j:])
                )
                key = (word.stem, word.loop)
                if key not in seen:
                    seen.add(key)
                    yield word
        if len(path) < max_length:
            for t in k.successors[last]:
                yield from walk(path + [t])

    yield from walk([k.initial])


def trace_prefixes(k: KripkeStructure, horizon: int) -> Hyperassignment:
    """X_K: the single set of horizon-h trace prefixes, as assignments over ap(K)."""
    space = AssignmentSpace(k.aps, horizon)
    words: Set[Tuple[FrozenSet[str], ...]] = set()
    frontier = {(k.initial, (k.labels[k.initial],))}
    for _ in range(horizon - 1):
        frontier = {(t, w + (k.labels[t],)) for s, w in frontier for t in k.successors[s]}
    words = {w for _, w in frontier}
    mask = 0
    for w in words:
        chi = Assignment.of(horizon, {p: [p in letter for letter in w] for p in k.aps})
        mask |= 1 << space.index(chi)
    return Hyperassignment(space, frozenset({mask}))
