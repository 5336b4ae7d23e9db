"""
LTL to nondeterministic Büchi automata by tableau expansion.

A tableau state is the set of NNF obligations that must hold from the current
position on. Reading a letter expands the obligations into every consistent
cover; the cover's X-obligations form the successor. Each Until yields one
acceptance condition, satisfied on covers that do not postpone it; the
generalized condition is degeneralized with a counter.
"""

from __future__ import annotations
import logging
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from core.errors import AlphabetMismatchError
from automata.alphabet import Alphabet
from automata.buchi import BuchiAutomaton, explore_nba
from logic.formula import (
    And, Atom, Ltl, Next, Not, Or, Release, Truth, Until,
    ltl_props, render_ltl, subformulas, to_nnf,
)

logger = logging.getLogger(__name__)

Obligations = FrozenSet[Ltl]
Cover = Tuple[Obligations, FrozenSet[Ltl]]


class Tableau:
    """Letter-wise expansion of obligation sets for one NNF formula."""

    def __init__(self, nnf: Ltl, alphabet: Alphabet):
        self.nnf = nnf
        self.alphabet = alphabet
        self.untils: Tuple[Ltl, ...] = tuple(
            sorted({f for f in subformulas(nnf) if isinstance(f, Until)}, key=render_ltl)
        )
        self.expand = lru_cache(maxsize=None)(self._expand)

    def _expand(self, todo: Obligations, letter: int) -> Tuple[Cover, ...]:
        """Covers (next obligations, postponed untils) of `todo` under `letter`."""
        covers = set()

        def go(pending: Sequence[Ltl], nexts: Obligations, postponed: FrozenSet[Ltl]) -> None:
            if not pending:
                covers.add((nexts, postponed))
                return
            f, rest = pending[0], list(pending[1:])
            match f:
                case Truth(v):
                    if v:
                        go(rest, nexts, postponed)
                case Atom(p):
                    if self.alphabet.holds(letter, p):
                        go(rest, nexts, postponed)
                case Not(Atom(p)):
                    if not self.alphabet.holds(letter, p):
                        go(rest, nexts, postponed)
                case And(a, b):
                    go([a, b] + rest, nexts, postponed)
                case Or(a, b):
                    go([a] + rest, nexts, postponed)
                    go([b] + rest, nexts, postponed)
                case Next(a):
                    go(rest, nexts | {a}, postponed)
                case Until(a, b):
                    go([b] + rest, nexts, postponed)
                    go([a] + rest, nexts | {f}, postponed | {f})
                case Release(a, b):
                    go([a, b] + rest, nexts, postponed)
                    go([b] + rest, nexts | {f}, postponed)
                case _:
                    raise TypeError(f"not in negation normal form: {f!r}")

        go(sorted(todo, key=render_ltl), frozenset(), frozenset())
        return tuple(sorted(covers, key=lambda c: (sorted(map(render_ltl, c[0])), sorted(map(render_ltl, c[1])))))


def ltl_to_nba(psi: Ltl, props: Iterable[str], budget: Optional[int] = None) -> BuchiAutomaton:
    """
    NBA over Val(props) accepting exactly the words satisfying psi.

    Raises:
        AlphabetMismatchError: psi mentions a proposition outside props
        GuardExceededError: more states than the automaton budget
    """
    alphabet = Alphabet.of(props)
    missing = ltl_props(psi) - set(alphabet.props)
    if missing:
        raise AlphabetMismatchError(f"formula uses {sorted(missing)} outside {alphabet.props}")
    tableau = Tableau(to_nnf(psi), alphabet)
    k = len(tableau.untils)

    def advance(j: int, postponed: FrozenSet[Ltl]) -> int:
        j = 0 if j == k else j
        while j < k and tableau.untils[j] not in postponed:
            j += 1
        return j

    def post(key: Tuple[Obligations, int], letter: int) -> List[Tuple[Obligations, int]]:
        todo, j = key
        return [(nexts, advance(j, postponed)) for nexts, postponed in tableau.expand(todo, letter)]

    def label(key: Tuple[Obligations, int]) -> str:
        todo, j = key
        body = ", ".join(sorted(render_ltl(f) for f in todo)) or "true"
        return f"{{{body}}}#{j}" if k else f"{{{body}}}"

    initial = (frozenset({tableau.nnf}), 0)
    nba = explore_nba(alphabet, [initial], post, lambda key: key[1] == k, budget, label).prune()
    logger.debug(f"LTL to NBA: {render_ltl(psi)} -> {nba.size} states, {k} until(s)")
    return nba
