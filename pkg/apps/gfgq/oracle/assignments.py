"""
Bounded-horizon assignments.

An assignment maps each proposition of its domain to a temporal valuation of
length h, read as the infinite word bits·(last bit)^ω. An AssignmentSpace
enumerates Asg(P) at horizon h and encodes each assignment as an integer:
bit j*h + t holds the value of the j-th domain proposition at time t.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from pydantic import Field, TypeAdapter
from typing_extensions import Annotated

from core.config import settings
from core.errors import DomainError
from logic.formula import QuantSpec

TemporalValuation = Tuple[bool, ...]
ValuationLetter = Dict[str, bool]

Horizon = Annotated[int, Field(ge=1)]
_horizon_adapter = TypeAdapter(Horizon)


def check_horizon(h: int) -> int:
    """Validate a horizon against h >= 1 and the configured enumeration bound."""
    h = _horizon_adapter.validate_python(h)
    if h > settings.horizon_limit:
        raise ValueError(f"horizon {h} above the enumeration bound {settings.horizon_limit}")
    return h


def bits_to_int(bits: Sequence[bool]) -> int:
    return sum(1 << t for t, b in enumerate(bits) if b)


def int_to_bits(value: int, horizon: int) -> TemporalValuation:
    return tuple(bool(value >> t & 1) for t in range(horizon))


def render_bits(bits: Sequence[bool]) -> str:
    return "".join("1" if b else "0" for b in bits)


@dataclass(frozen=True, order=True)
class Assignment:
    """Assignment over a finite domain at a fixed horizon."""
    horizon: int
    values: Tuple[Tuple[str, TemporalValuation], ...] = ()

    @classmethod
    def of(cls, horizon: int, valuation: Mapping[str, Sequence[bool]]) -> "Assignment":
        items = []
        for prop, bits in sorted(valuation.items()):
            if len(bits) != horizon:
                raise DomainError(f"valuation of '{prop}' has length {len(bits)}, expected {horizon}")
            items.append((prop, tuple(bool(b) for b in bits)))
        return cls(horizon, tuple(items))

    @classmethod
    def parse(cls, text: str) -> "Assignment":
        """Inverse of render: `p=01,q=11`."""
        valuation = {}
        for part in filter(None, (s.strip() for s in text.split(","))):
            prop, bits = part.split("=")
            valuation[prop.strip()] = [c == "1" for c in bits.strip()]
        if not valuation:
            raise DomainError("cannot infer the horizon of an empty assignment")
        horizon = len(next(iter(valuation.values())))
        return cls.of(horizon, valuation)

    @property
    def domain(self) -> FrozenSet[str]:
        return frozenset(p for p, _ in self.values)

    def as_dict(self) -> Dict[str, TemporalValuation]:
        return dict(self.values)

    def __getitem__(self, prop: str) -> TemporalValuation:
        for p, bits in self.values:
            if p == prop:
                return bits
        raise DomainError(f"'{prop}' is not in the assignment domain {sorted(self.domain)}")

    def extend(self, prop: str, bits: Sequence[bool]) -> "Assignment":
        if prop in self.domain:
            raise DomainError(f"'{prop}' already in the assignment domain")
        return Assignment.of(self.horizon, {**self.as_dict(), prop: bits})

    def restrict(self, props: Iterable[str]) -> "Assignment":
        keep = set(props)
        return Assignment(self.horizon, tuple((p, b) for p, b in self.values if p in keep))

    def render(self) -> str:
        return ",".join(f"{p}={render_bits(b)}" for p, b in self.values)


def wrd(chi: Assignment) -> List[ValuationLetter]:
    """Word of an assignment: letter t maps each prop p to chi(p)(t)."""
    return [{p: bits[t] for p, bits in chi.values} for t in range(chi.horizon)]


def wrd_inverse(letters: Sequence[Mapping[str, bool]]) -> Assignment:
    """Rebuild the assignment whose word is `letters`."""
    if not letters:
        raise DomainError("a word of horizon 0 has no assignment")
    domain = set(letters[0])
    if any(set(letter) != domain for letter in letters):
        raise DomainError("letters range over different propositions")
    return Assignment.of(len(letters), {p: [letter[p] for letter in letters] for p in domain})


@dataclass(frozen=True)
class AssignmentSpace:
    """Asg(domain) at a horizon, with integer encoding of its members."""
    domain: Tuple[str, ...]
    horizon: int
    _positions: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.domain)) != len(self.domain):
            raise DomainError(f"repeated proposition in domain {self.domain}")
        object.__setattr__(self, "_positions", {p: j for j, p in enumerate(self.domain)})

    @property
    def size(self) -> int:
        return 1 << (len(self.domain) * self.horizon)

    @property
    def full(self) -> int:
        """Bitmask of the whole space, used as a set of indices."""
        return (1 << self.size) - 1

    @property
    def domain_set(self) -> FrozenSet[str]:
        return frozenset(self.domain)

    def position(self, prop: str) -> int:
        try:
            return self._positions[prop]
        except KeyError:
            raise DomainError(f"'{prop}' is not in the domain {self.domain}") from None

    def value(self, index: int, prop: str) -> int:
        """Temporal valuation of `prop` in assignment `index`, as h bits."""
        h = self.horizon
        return index >> (self.position(prop) * h) & ((1 << h) - 1)

    def assignment(self, index: int) -> Assignment:
        h = self.horizon
        return Assignment.of(h, {p: int_to_bits(index >> (j * h), h) for j, p in enumerate(self.domain)})

    def index(self, chi: Assignment) -> int:
        if chi.domain != self.domain_set or chi.horizon != self.horizon:
            raise DomainError(f"assignment over {sorted(chi.domain)} outside space {self.domain}")
        return sum(bits_to_int(chi[p]) << (j * self.horizon) for j, p in enumerate(self.domain))

    def extended(self, prop: str) -> "AssignmentSpace":
        if prop in self._positions:
            raise DomainError(f"'{prop}' already in the domain {self.domain}")
        return AssignmentSpace(self.domain + (prop,), self.horizon)

    def reordered(self, domain: Sequence[str]) -> "AssignmentSpace":
        if frozenset(domain) != self.domain_set:
            raise DomainError(f"cannot reorder {self.domain} as {tuple(domain)}")
        return AssignmentSpace(tuple(domain), self.horizon)

    def translate(self, index: int, target: "AssignmentSpace") -> int:
        """Index of the same assignment in a space over the same props in another order."""
        h = self.horizon
        out = 0
        for j, p in enumerate(self.domain):
            out |= (index >> (j * h) & ((1 << h) - 1)) << (target.position(p) * h)
        return out

    def project(self, index: int, props: Sequence[str], target: "AssignmentSpace") -> int:
        """Restriction of assignment `index` to the props of `target`."""
        out = 0
        for p in props:
            out |= self.value(index, p) << (target.position(p) * self.horizon)
        return out

    def class_mask(self, spec: QuantSpec, k: int) -> int:
        """
        Bits of an index that determine its ≈^k_σ class.

        Unrestricted props contribute all h bits, behavioral ones bits 0..k and
        strongly behavioral ones bits 0..k-1.
        """
        h = self.horizon
        unrestricted, behavioral, strict = spec.split(self.domain)
        mask = 0
        for j, p in enumerate(self.domain):
            if p in unrestricted:
                width = h
            elif p in behavioral:
                width = k + 1
            else:
                width = k
            mask |= ((1 << width) - 1) << (j * h)
        return mask

    @cached_property
    def members(self) -> Tuple[Assignment, ...]:
        return tuple(self.assignment(i) for i in range(self.size))


def spec_equiv(chi1: Assignment, chi2: Assignment, spec: QuantSpec, k: int) -> bool:
    """
    chi1 ≈^k_σ chi2: equal off P_B ∪ P_S, equal up to k on P_B \\ P_S,
    equal strictly before k on P_S.
    """
    if chi1.domain != chi2.domain or chi1.horizon != chi2.horizon:
        raise DomainError("assignments over different domains")
    if not 0 <= k < chi1.horizon:
        raise DomainError(f"time index {k} outside horizon {chi1.horizon}")
    unrestricted, behavioral, strict = spec.split(chi1.domain)
    for p in chi1.domain:
        a, b = chi1[p], chi2[p]
        if p in unrestricted and a != b:
            return False
        if p in behavioral and a[:k + 1] != b[:k + 1]:
            return False
        if p in strict and a[:k] != b[:k]:
            return False
    return True
