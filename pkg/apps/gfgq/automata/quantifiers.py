"""
Quantifier elimination for vanilla QPTL.

∃p projects p out of the letters; ∀p is ¬∃p¬, with the outer complement
obtained through determinization.
"""

from __future__ import annotations
import logging
from typing import Optional

from core.errors import UnsupportedFragmentError
from core.models import QuantifierKind
from automata.buchi import BuchiAutomaton, project_nba
from automata.determinize import determinize
from automata.ltl2nba import ltl_to_nba
from automata.parity import ParityAutomaton, complement_dpa, parity_to_buchi
from logic.formula import Formula, VANILLA, ltl_props

logger = logging.getLogger(__name__)


def eliminate_quantifier(
    d: ParityAutomaton, ap: str, kind: QuantifierKind, budget: Optional[int] = None
) -> BuchiAutomaton:
    """
    NBA over the alphabet of `d` without `ap`, recognizing the projection
    (EXISTS) or co-projection (FORALL) of L(d).

    Raises:
        AlphabetMismatchError: ap not in the alphabet of d
        GuardExceededError: automaton budget
    """
    d.alphabet.position(ap)
    if kind is QuantifierKind.EXISTS:
        return project_nba(parity_to_buchi(d, budget), ap)
    exists_not = eliminate_quantifier(complement_dpa(d), ap, QuantifierKind.EXISTS, budget)
    return parity_to_buchi(complement_dpa(determinize(exists_not, budget)), budget)


def vanilla_to_nba(f: Formula, budget: Optional[int] = None) -> BuchiAutomaton:
    """
    NBA over the free props of f for its models; a sentence yields an
    automaton over the empty alphabet, empty iff f is unsatisfiable.

    Raises:
        UnsupportedFragmentError: a quantifier carries a non-vanilla spec
        GuardExceededError: automaton budget
    """
    for q in f.prefix:
        if q.spec != VANILLA:
            raise UnsupportedFragmentError(f"quantifier {q.render()} is not vanilla")
    props = set(f.prefix.props) | ltl_props(f.matrix)
    nba = ltl_to_nba(f.matrix, props, budget)
    logger.info(f"Matrix NBA: {nba.size} states over {nba.alphabet.props}")
    for q in reversed(f.prefix.quantifiers):
        if q.is_existential:
            nba = project_nba(nba, q.prop)
        else:
            nba = eliminate_quantifier(determinize(nba, budget), q.prop, QuantifierKind.FORALL, budget)
        logger.info(f"Eliminated {q.kind.value} {q.prop}: {nba.size} states")
    return nba
