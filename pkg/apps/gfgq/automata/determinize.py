"""
Büchi to deterministic parity automata with compact Safra trees.

A tree node carries a name, a set of NBA states and its children ordered from
oldest to youngest. Names are kept dense (1..n) and ordered by age, so the
smallest name touched in a step decides that step's priority: the node that
was marked (good) or removed (bad) with the smallest name wins.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Optional, Set, Tuple

from automata.buchi import BuchiAutomaton
from automata.parity import ParityAutomaton, explore_dpa

logger = logging.getLogger(__name__)

# (name, states, children) with children from oldest to youngest
Tree = Tuple[int, FrozenSet[int], Tuple["Tree", ...]]


@dataclass
class _Node:
    name: int
    label: Set[int]
    children: List["_Node"] = field(default_factory=list)

    @classmethod
    def thaw(cls, tree: Tree) -> "_Node":
        name, label, children = tree
        return cls(name, set(label), [cls.thaw(c) for c in children])

    def freeze(self) -> Tree:
        return (self.name, frozenset(self.label), tuple(c.freeze() for c in self.children))

    def preorder(self) -> Iterator["_Node"]:
        yield self
        for c in self.children:
            yield from c.preorder()


def render_tree(tree: Optional[Tree]) -> str:
    if tree is None:
        return "∅"
    name, label, children = tree
    inner = "".join(render_tree(c) for c in children)
    return f"{name}{{{','.join(map(str, sorted(label)))}}}" + (f"[{inner}]" if inner else "")


def safra_step(a: BuchiAutomaton, tree: Tree, letter: int) -> Tuple[Optional[Tree], int]:
    """
    Successor tree and the min-parity priority of the step (2e for a marked
    node e, 2f-1 for a removed node f, whichever name is smaller).
    """
    root = _Node.thaw(tree)
    nodes = list(root.preorder())
    n = len(nodes)

    for v in nodes:
        v.label = set().union(*(a.post(s, letter) for s in v.label))
    if not root.label:
        return None, 2 * n + 1

    fresh = n
    for v in nodes:
        accepting = v.label & a.accepting
        if accepting:
            fresh += 1
            v.children.append(_Node(fresh, set(accepting)))

    def horizontal(v: _Node, taken: Set[int]) -> None:
        v.label -= taken
        claimed = set(taken)
        for c in v.children:
            horizontal(c, claimed)
            claimed |= c.label

    horizontal(root, set())

    removed: Set[int] = set()

    def drop_empty(v: _Node) -> None:
        kept = []
        for c in v.children:
            if c.label:
                drop_empty(c)
                kept.append(c)
            else:
                removed.update(x.name for x in c.preorder())
        v.children = kept

    drop_empty(root)

    marked: Set[int] = set()

    def vertical(v: _Node) -> None:
        if v.children and set().union(*(c.label for c in v.children)) == v.label:
            removed.update(x.name for c in v.children for x in c.preorder())
            v.children = []
            marked.add(v.name)
            return
        for c in v.children:
            vertical(c)

    vertical(root)

    f = min({x for x in removed if x <= n} | {n + 1})
    e = min(marked | {n + 1})
    priority = 2 * e if e < f else 2 * f - 1

    names = sorted(x.name for x in root.preorder())
    rename = {old: i + 1 for i, old in enumerate(names)}
    for x in root.preorder():
        x.name = rename[x.name]
    return root.freeze(), priority


def determinize(a: BuchiAutomaton, budget: Optional[int] = None) -> ParityAutomaton:
    """
    Deterministic, complete max-even parity automaton with L = L(a).

    DPA states pair a tree with the priority of the step that produced it, so
    priorities sit on states; the min-parity value p maps to 2N+2-p for N NBA
    states. The empty tree is a rejecting sink.

    Raises:
        GuardExceededError: more trees than the automaton budget
    """
    top = 2 * a.size + 2
    initial_tree: Tree = (1, frozenset(a.initial), ())
    sink = (None, 1)

    def step(key, letter):
        tree, _ = key
        if tree is None:
            return sink
        successor, p = safra_step(a, tree, letter)
        return sink if successor is None else (successor, top - p)

    def label(key) -> str:
        tree, p = key
        return render_tree(tree)

    d = explore_dpa(a.alphabet, (initial_tree, 0), step, lambda key: key[1], budget, label)
    logger.debug(f"Determinized {a.size}-state NBA into {d.size}-state DPA")
    return compact_priorities(d)


def compact_priorities(d: ParityAutomaton) -> ParityAutomaton:
    """Renumber priorities to the smallest values with the same order and parities."""
    mapping = {}
    current = -1
    for p in sorted(set(d.priority)):
        current += 1
        if current % 2 != p % 2:
            current += 1
        mapping[p] = current
    return ParityAutomaton(
        d.alphabet, d.initial, d.delta, tuple(mapping[p] for p in d.priority), d.labels
    )
