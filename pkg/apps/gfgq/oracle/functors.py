"""
Sigma-functors over bounded assignment spaces.

A functor answers each assignment with a temporal valuation. A sigma-functor
must answer at time k uniformly on every ≈^k_σ class, so it is fully described
by one bit per (k, class): those bits are the decision tree enumerated here.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from core.config import settings
from core.errors import check_guard
from logic.formula import QuantSpec
from oracle.assignments import (
    Assignment, AssignmentSpace, TemporalValuation, bits_to_int, int_to_bits,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Functor:
    """Total map Asg(domain) -> temporal valuations, stored as h-bit integers."""
    space: AssignmentSpace
    table: Tuple[int, ...]

    @classmethod
    def from_function(
        cls, space: AssignmentSpace, fn: Callable[[Assignment], Sequence[bool]]
    ) -> "Functor":
        return cls(space, tuple(bits_to_int(fn(chi)) for chi in space.members))

    @property
    def domain_props(self) -> Tuple[str, ...]:
        return self.space.domain

    def value(self, index: int) -> int:
        return self.table[index]

    def __call__(self, chi: Assignment) -> TemporalValuation:
        return int_to_bits(self.table[self.space.index(chi)], self.space.horizon)

    def as_mapping(self) -> Dict[Assignment, TemporalValuation]:
        h = self.space.horizon
        return {chi: int_to_bits(v, h) for chi, v in zip(self.space.members, self.table)}


def _pivot_mask(space: AssignmentSpace, prop: str, width: int) -> int:
    """Index bits of every other prop in full, and the first `width` bits of `prop`."""
    h = space.horizon
    mask = 0
    for j, p in enumerate(space.domain):
        w = width if p == prop else h
        mask |= ((1 << w) - 1) << (j * h)
    return mask


def is_sigma_functor(functor: Functor, spec: QuantSpec) -> bool:
    """
    Definition check: for each p in P_B (resp. P_S) and each k, the answer at
    time k agrees on all (p,k)-strict (resp. (p,k)-) distinguishable pairs.
    """
    space = functor.space
    _, behavioral, strict = spec.split(space.domain)
    for prop in sorted(behavioral | strict):
        for k in range(space.horizon):
            width = k + 1 if prop in behavioral else k
            mask = _pivot_mask(space, prop, width)
            seen: Dict[int, int] = {}
            for i, value in enumerate(functor.table):
                bit = value >> k & 1
                if seen.setdefault(i & mask, bit) != bit:
                    return False
    return True


class RestrictedChoices:
    """
    Class variables of sigma-functors restricted to a set of assignments.

    Every restriction of a sigma-functor to `members` is obtained by fixing one
    bit per (k, class met by members), and every such choice extends to a
    total sigma-functor.
    """

    def __init__(self, space: AssignmentSpace, members: Sequence[int], spec: QuantSpec):
        self.space = space
        self.members = tuple(members)
        self.horizon = space.horizon
        # var_of[k][m]: variable deciding bit k of member m
        self.var_of: List[List[int]] = []
        self.vars_at: List[List[int]] = []
        self.members_of: List[List[int]] = []
        count = 0
        for k in range(self.horizon):
            mask = space.class_mask(spec, k)
            ids: Dict[int, int] = {}
            row = []
            for m, index in enumerate(self.members):
                key = index & mask
                if key not in ids:
                    ids[key] = count
                    self.members_of.append([])
                    count += 1
                row.append(ids[key])
                self.members_of[ids[key]].append(m)
            self.var_of.append(row)
            self.vars_at.append(sorted(ids.values()))
        self.variable_count = count

    @property
    def choice_count(self) -> int:
        return 1 << self.variable_count

    def values(self, choice: int) -> Tuple[int, ...]:
        """Valuation of each member under the variable assignment `choice`."""
        out = []
        for m in range(len(self.members)):
            v = 0
            for k in range(self.horizon):
                if choice >> self.var_of[k][m] & 1:
                    v |= 1 << k
            out.append(v)
        return tuple(out)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        for choice in range(self.choice_count):
            yield self.values(choice)

    def solve(self, allowed: Sequence[Set[int]]) -> Optional[Tuple[int, ...]]:
        """
        Find member valuations with values[m] in allowed[m], or None.

        Backtracking over the class variables in time order, pruning on the
        prefixes of allowed valuations.
        """
        h = self.horizon
        prefixes = [
            [{v & ((1 << (k + 1)) - 1) for v in allowed_m} for k in range(h)]
            for allowed_m in allowed
        ]
        if any(not p[h - 1] for p in prefixes):
            return None
        order = [(k, var) for k in range(h) for var in self.vars_at[k]]
        partial = [0] * len(self.members)

        def backtrack(pos: int) -> bool:
            if pos == len(order):
                return True
            k, var = order[pos]
            touched = self.members_of[var]
            for bit in (0, 1):
                ok = True
                for m in touched:
                    candidate = partial[m] | (bit << k)
                    if candidate not in prefixes[m][k]:
                        ok = False
                        break
                if not ok:
                    continue
                for m in touched:
                    partial[m] |= bit << k
                if backtrack(pos + 1):
                    return True
                for m in touched:
                    partial[m] &= ~(1 << k)
            return False

        return tuple(partial) if backtrack(0) else None


def enumerate_functors(
    props: Iterable[str],
    spec: QuantSpec,
    horizon: int,
    validate: bool = True,
    space_guard: Optional[int] = None,
    functor_guard: Optional[int] = None,
) -> List[Functor]:
    """
    All sigma-functors over Asg(props) at `horizon`, in a stable order.

    Raises:
        GuardExceededError: assignment space or functor count above the guards
    """
    space = AssignmentSpace(tuple(sorted(props)), horizon)
    check_guard("assignment_space", space.size, space_guard or settings.assignment_space_guard)
    choices = RestrictedChoices(space, range(space.size), spec)
    check_guard("functors", choices.choice_count, functor_guard or settings.functor_guard)
    functors = [Functor(space, values) for values in choices]
    if validate:
        for f in functors:
            if not is_sigma_functor(f, spec):
                raise RuntimeError(f"enumerated functor violates {spec.render()}: {f.table}")
    logger.debug(f"Enumerated {len(functors)} functors over {space.domain} at h={horizon}")
    return functors
