"""
Hyperassignments and their operators.

A hyperassignment is a non-empty set of non-empty sets of assignments over
one domain. Sets are stored as bitmasks over the indices of an
AssignmentSpace, so unions and inclusions are integer operations.

The literal operators (dualize, extend, partitions, NEV with selection maps)
follow their definitions exactly and are guarded. The reduced ones
(minimal, dualize_minimal, reduced evolution) return ≡-equivalent results
and are what the evaluator uses.
"""

from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from core.config import settings
from core.errors import DomainError, check_guard
from core.models import AlternationFlag, EvolutionMode
from logic.formula import Prefix, QuantSpec
from oracle.assignments import Assignment, AssignmentSpace
from oracle.functors import RestrictedChoices, enumerate_functors

logger = logging.getLogger(__name__)

Family = FrozenSet[int]


def indices(mask: int) -> Iterator[int]:
    """Set bits of `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def minimal(family: Iterable[int]) -> Family:
    """⊆-minimal members of a family of sets."""
    kept: List[int] = []
    for m in sorted(set(family), key=lambda x: (bin(x).count("1"), x)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return frozenset(kept)


def minimal_transversals(family: Iterable[int]) -> Family:
    """Minimal hitting sets (Berge), i.e. the ⊆-minimal images of choice functions."""
    edges = sorted(minimal(family), key=lambda x: (bin(x).count("1"), x))
    transversals: List[int] = [0]
    for edge in edges:
        hit = [t for t in transversals if t & edge]
        grown = [t | (1 << i) for t in transversals if not t & edge for i in indices(edge)]
        transversals = sorted(minimal(hit + grown))
    return frozenset(transversals)


@dataclass(frozen=True, eq=False)
class Hyperassignment:
    """Non-empty family of non-empty assignment sets over one space."""
    space: AssignmentSpace
    family: Family

    def __post_init__(self):
        if not self.family:
            raise DomainError("a hyperassignment contains at least one set")
        full = self.space.full
        for mask in self.family:
            if mask == 0:
                raise DomainError("a hyperassignment never contains the empty set")
            if mask & ~full:
                raise DomainError("set outside the assignment space")

    @classmethod
    def of(
        cls,
        sets: Iterable[Iterable[Assignment]],
        horizon: Optional[int] = None,
        domain: Optional[Sequence[str]] = None,
    ) -> "Hyperassignment":
        sets = [list(s) for s in sets]
        sample = next((chi for s in sets for chi in s), None)
        if sample is not None:
            horizon = sample.horizon if horizon is None else horizon
            domain = tuple(sorted(sample.domain)) if domain is None else tuple(domain)
        if horizon is None:
            raise DomainError("horizon needed for a hyperassignment without assignments")
        space = AssignmentSpace(tuple(domain or ()), horizon)
        family = frozenset(sum(1 << space.index(chi) for chi in set(s)) for s in sets)
        return cls(space, family)

    @classmethod
    def trivial(cls, horizon: int) -> "Hyperassignment":
        """{{χ∅}}: one set holding the empty assignment."""
        return cls(AssignmentSpace((), horizon), frozenset({1}))

    @classmethod
    def full(cls, space: AssignmentSpace) -> "Hyperassignment":
        """{Asg(P)}."""
        return cls(space, frozenset({space.full}))

    @property
    def horizon(self) -> int:
        return self.space.horizon

    @property
    def domain(self) -> FrozenSet[str]:
        return self.space.domain_set

    def __len__(self) -> int:
        return len(self.family)

    def __iter__(self) -> Iterator[FrozenSet[Assignment]]:
        return iter(self.sets())

    def members(self, mask: int) -> FrozenSet[Assignment]:
        return frozenset(self.space.assignment(i) for i in indices(mask))

    def sets(self) -> List[FrozenSet[Assignment]]:
        """Canonically sorted sets of assignments."""
        out = [self.members(mask) for mask in self.family]
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def reencode(self, space: AssignmentSpace) -> "Hyperassignment":
        if space == self.space:
            return self
        family = frozenset(
            sum(1 << self.space.translate(i, space) for i in indices(mask)) for mask in self.family
        )
        return Hyperassignment(space, family)

    def canonical(self) -> "Hyperassignment":
        return self.reencode(self.space.reordered(sorted(self.space.domain)))

    def minimal(self) -> "Hyperassignment":
        return Hyperassignment(self.space, minimal(self.family))

    def _key(self):
        c = self.canonical()
        return (c.space.domain, c.space.horizon, c.family)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hyperassignment):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def dump(self) -> str:
        """One set per line; assignments rendered as `p=01,q=11`, separated by ` ; `."""
        lines = []
        for s in self.sets():
            lines.append(" ; ".join(chi.render() or "-" for chi in sorted(s)))
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"Hyperassignment(domain={sorted(self.domain)}, h={self.horizon}, sets={len(self)})"


def _aligned(a1: Hyperassignment, a2: Hyperassignment) -> Hyperassignment:
    if a1.domain != a2.domain or a1.horizon != a2.horizon:
        raise DomainError(f"hyperassignments over {sorted(a1.domain)} and {sorted(a2.domain)}")
    return a2.reencode(a1.space)


def refines(a1: Hyperassignment, a2: Hyperassignment) -> bool:
    """a1 ⊑ a2: every X1 in a1 includes some X2 in a2."""
    a2 = _aligned(a1, a2)
    return all(any(x2 & x1 == x2 for x2 in a2.family) for x1 in a1.family)


def equivalent(a1: Hyperassignment, a2: Hyperassignment) -> bool:
    return refines(a1, a2) and refines(a2, a1)


def dualize(a: Hyperassignment, guard: Optional[int] = None) -> Hyperassignment:
    """Images of all choice functions of `a`, deduplicated."""
    choices = 1
    for mask in a.family:
        choices *= bin(mask).count("1")
    check_guard("dualize", choices, guard or settings.dualize_guard)
    options = [list(indices(mask)) for mask in sorted(a.family)]
    images = {sum(1 << i for i in set(pick)) for pick in itertools.product(*options)}
    return Hyperassignment(a.space, frozenset(images))


def dualize_minimal(a: Hyperassignment) -> Hyperassignment:
    """⊆-minimal part of the dual, computed as minimal transversals."""
    return Hyperassignment(a.space, minimal_transversals(a.family))


def partitions(
    a: Hyperassignment, guard: Optional[int] = None
) -> List[Tuple[Optional[Hyperassignment], Optional[Hyperassignment]]]:
    """All ordered splits (a1, a2) of `a`; None stands for the empty part."""
    check_guard("partitions", len(a), guard or settings.partition_guard)
    masks = sorted(a.family)
    out = []
    for selector in range(1 << len(masks)):
        left = frozenset(m for j, m in enumerate(masks) if selector >> j & 1)
        right = frozenset(masks) - left
        out.append((
            Hyperassignment(a.space, left) if left else None,
            Hyperassignment(a.space, right) if right else None,
        ))
    return out


def _extend_set(space: AssignmentSpace, mask: int, spec: QuantSpec) -> Tuple[RestrictedChoices, List[int]]:
    members = list(indices(mask))
    return RestrictedChoices(space, members, spec), members


def extension_masks(
    space: AssignmentSpace, family: Iterable[int], spec: QuantSpec, guard: Optional[int] = None
) -> Iterator[int]:
    """Masks, over space.extended(ap), of ext(X, F, ap) for X in `family` and every sigma-functor F."""
    limit = guard or settings.extension_guard
    shift = len(space.domain) * space.horizon
    produced = 0
    for mask in sorted(family):
        choices, members = _extend_set(space, mask, spec)
        produced += choices.choice_count
        check_guard("extension", produced, limit)
        for values in choices:
            yield sum(1 << (i | (v << shift)) for i, v in zip(members, values))


def extend(
    a: Hyperassignment, ap: str, spec: QuantSpec, guard: Optional[int] = None
) -> Hyperassignment:
    """
    ext_σ(a, ap) = {ext(X, F, ap) | X in a, F a sigma-functor over ap(a)}.

    Raises:
        DomainError: ap already in the domain
        GuardExceededError: more sets than the extension guard
    """
    new_space = a.space.extended(ap)
    family = frozenset(extension_masks(a.space, a.family, spec, guard))
    logger.debug(f"Extended {len(a)} sets by '{ap}' into {len(family)} sets")
    return Hyperassignment(new_space, family)


def extension_within(
    space: AssignmentSpace, mask: int, spec: QuantSpec, target: int
) -> bool:
    """Whether some sigma-functor extends set `mask` by a fresh prop inside `target`."""
    shift = len(space.domain) * space.horizon
    h = space.horizon
    choices, members = _extend_set(space, mask, spec)
    allowed = [{v for v in range(1 << h) if target >> (i | (v << shift)) & 1} for i in members]
    return choices.solve(allowed) is not None


def _normal_step_literal(
    a: Hyperassignment, ap: str, spec: QuantSpec, guard: Optional[int]
) -> Hyperassignment:
    functors = enumerate_functors(a.space.domain, spec, a.horizon)
    # enumerate_functors sorts the domain; align the set encoding with it
    base = a.reencode(functors[0].space)
    new_space = base.space.extended(ap)
    shift = len(base.space.domain) * base.horizon
    masks = sorted(base.family)
    check_guard("extension", len(masks) ** len(functors), guard or settings.extension_guard)
    family = set()
    for selection in itertools.product(masks, repeat=len(functors)):
        union = 0
        for x, f in zip(selection, functors):
            union |= sum(1 << (i | (f.value(i) << shift)) for i in indices(x))
        family.add(union)
    return Hyperassignment(new_space, frozenset(family))


def _normal_step_reduced(
    a: Hyperassignment, ap: str, spec: QuantSpec, guard: Optional[int]
) -> Hyperassignment:
    functors = enumerate_functors(a.space.domain, spec, a.horizon)
    base = a.reencode(functors[0].space)
    new_space = base.space.extended(ap)
    shift = len(base.space.domain) * base.horizon
    limit = guard or settings.extension_guard
    joined: Family = frozenset({0})
    for f in functors:
        images = minimal(
            sum(1 << (i | (f.value(i) << shift)) for i in indices(x)) for x in base.family
        )
        check_guard("extension", len(joined) * len(images), limit)
        joined = minimal(r | e for r in joined for e in images)
    return Hyperassignment(new_space, joined)


def evolve(
    a: Hyperassignment,
    prefix: Prefix,
    alpha: AlternationFlag,
    mode: EvolutionMode = EvolutionMode.EV,
    reduce: bool = False,
    guard: Optional[int] = None,
) -> Hyperassignment:
    """
    Apply the quantifiers of `prefix` to `a` under flag `alpha`.

    EV: coherent quantifiers extend, incoherent ones extend the dual and dualize
    back. NEV: incoherent quantifiers take, for every selection of one set per
    functor, the union of the selected extensions. With `reduce` every step is
    replaced by an ≡-equivalent ⊆-minimal one.

    Raises:
        DomainError: a prefix prop already in the domain of `a`
        GuardExceededError: an enumeration guard was tripped
    """
    clash = a.domain & frozenset(prefix.props)
    if clash:
        raise DomainError(f"props {sorted(clash)} quantified but already assigned")
    dual = dualize_minimal if reduce else (lambda h: dualize(h, guard))
    for q in prefix:
        if alpha.is_coherent(q.kind):
            a = extend(a, q.prop, q.spec, guard)
        elif mode is EvolutionMode.EV:
            a = dual(extend(dual(a), q.prop, q.spec, guard))
        elif reduce:
            a = _normal_step_reduced(a, q.prop, q.spec, guard)
        else:
            a = _normal_step_literal(a, q.prop, q.spec, guard)
        if reduce:
            a = a.minimal()
        logger.debug(f"{mode.value}_{alpha.value} after {q.kind.value} {q.prop}: {len(a)} sets")
    return a
