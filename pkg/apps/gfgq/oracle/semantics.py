"""
Tarski and alternating Hodges semantics at a bounded horizon.

Assignments are read as the lassos wrd(χ)·(last letter)^ω. The alternating
evaluator implements the six rules with ext_σ for quantifiers, working on
⊆-minimal families and minimal-transversal duals; both preserve ≡, hence the
truth value.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from core.errors import DomainError
from core.models import AlternationFlag, QuantifierKind
from automata.lasso import LassoWord, holds
from logic.formula import (
    Formula, GeneralFormula, Ltl, QAnd, QNot, QOr, Quantified,
    free_props, is_x_bounded, to_general,
)
from oracle.assignments import Assignment, AssignmentSpace, int_to_bits, wrd
from oracle.hyperassignment import (
    Family, Hyperassignment, extension_masks, extension_within,
    minimal, minimal_transversals, partitions,
)

logger = logging.getLogger(__name__)

AnyFormula = Union[Formula, GeneralFormula]


def assignment_lasso(chi: Assignment) -> LassoWord:
    letters = [frozenset(p for p, v in letter.items() if v) for letter in wrd(chi)]
    return LassoWord(tuple(letters[:-1]), (letters[-1],))


def _check_free(phi: GeneralFormula, domain) -> None:
    unbound = free_props(phi) - frozenset(domain)
    if unbound:
        raise DomainError(f"free propositions {sorted(unbound)} are not assigned")


def eval_tarski(chi: Assignment, phi: AnyFormula) -> bool:
    """
    chi ⊨ phi with quantifiers ranging over all horizon-h valuations.

    Raises:
        DomainError: a free proposition of phi outside dom(chi)
    """
    phi = to_general(phi)
    _check_free(phi, chi.domain)
    return _tarski(chi, phi)


def _tarski(chi: Assignment, phi: GeneralFormula) -> bool:
    match phi:
        case Quantified(q, body):
            base = chi.as_dict()
            results = (
                _tarski(Assignment.of(chi.horizon, {**base, q.prop: int_to_bits(v, chi.horizon)}), body)
                for v in range(1 << chi.horizon)
            )
            return any(results) if q.kind is QuantifierKind.EXISTS else all(results)
        case QNot(a):
            return not _tarski(chi, a)
        case QAnd(a, b):
            return _tarski(chi, a) and _tarski(chi, b)
        case QOr(a, b):
            return _tarski(chi, a) or _tarski(chi, b)
    return holds(phi, assignment_lasso(chi))


@lru_cache(maxsize=4096)
def truth_mask(space: AssignmentSpace, psi: Ltl) -> int:
    """Set of indices of `space` whose assignment satisfies psi."""
    mask = 0
    for i, chi in enumerate(space.members):
        if holds(psi, assignment_lasso(chi)):
            mask |= 1 << i
    return mask


def eval_alternating(a: Hyperassignment, phi: AnyFormula, alpha: AlternationFlag) -> bool:
    """
    a ⊨^α phi.

    Raises:
        DomainError: free props of phi unassigned, or a quantified prop already assigned
        GuardExceededError: partitions or extensions above their guards
    """
    phi = to_general(phi)
    _check_free(phi, a.domain)
    return _holds(a.space, minimal(a.family), phi, alpha)


def _holds(space: AssignmentSpace, family: Family, phi: GeneralFormula, alpha: AlternationFlag) -> bool:
    match phi:
        case Quantified(q, body):
            if not alpha.is_coherent(q.kind):
                return _holds(space, minimal_transversals(family), phi, alpha.dual)
            new_space = space.extended(q.prop)
            if isinstance(body, Ltl):
                target = truth_mask(new_space, body)
                if alpha is AlternationFlag.EA:
                    return any(extension_within(space, x, q.spec, target) for x in sorted(family))
                complement = new_space.full & ~target
                return not any(extension_within(space, x, q.spec, complement) for x in sorted(family))
            extended = minimal(extension_masks(space, family, q.spec))
            return _holds(new_space, extended, body, alpha)
        case QNot(a):
            return not _holds(space, family, a, alpha.dual)
        case QAnd(left, right):
            if alpha is AlternationFlag.AE:
                return _holds(space, minimal_transversals(family), phi, AlternationFlag.EA)
            return all(
                (p1 is not None and _holds(space, p1.family, left, alpha))
                or (p2 is not None and _holds(space, p2.family, right, alpha))
                for p1, p2 in partitions(Hyperassignment(space, family))
            )
        case QOr(left, right):
            if alpha is AlternationFlag.EA:
                return _holds(space, minimal_transversals(family), phi, AlternationFlag.AE)
            return any(
                (p1 is None or _holds(space, p1.family, left, alpha))
                and (p2 is None or _holds(space, p2.family, right, alpha))
                for p1, p2 in partitions(Hyperassignment(space, family))
            )
    target = truth_mask(space, phi)
    if alpha is AlternationFlag.EA:
        return any(x & ~target == 0 for x in family)
    return all(x & target for x in family)


def matrix_is_x_bounded(phi: AnyFormula, horizon: int) -> bool:
    """Every LTL leaf only inspects the explicit part of horizon-h words."""
    match phi:
        case Formula():
            return is_x_bounded(phi.matrix, horizon)
        case Quantified(_, body):
            return matrix_is_x_bounded(body, horizon)
        case QNot(a):
            return matrix_is_x_bounded(a, horizon)
        case QAnd(a, b) | QOr(a, b):
            return matrix_is_x_bounded(a, horizon) and matrix_is_x_bounded(b, horizon)
    return is_x_bounded(phi, horizon)


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    exact: bool


def decide_sentence(phi: AnyFormula, horizon: int, alpha: AlternationFlag = AlternationFlag.AE) -> OracleVerdict:
    """Evaluate a sentence at {{χ∅}}; exact only for X-bounded matrices."""
    result = eval_alternating(Hyperassignment.trivial(horizon), phi, alpha)
    exact = matrix_is_x_bounded(phi, horizon)
    if not exact:
        logger.warning(f"Oracle verdict at horizon {horizon} is approximate (matrix not X-bounded)")
    return OracleVerdict(result, exact)
