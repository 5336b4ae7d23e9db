"""
Valuation alphabets.

A letter is a total valuation of a declared, ordered proposition tuple,
encoded as an integer whose bit j holds the value of props[j].
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple

from core.errors import AlphabetMismatchError


@dataclass(frozen=True)
class Alphabet:
    props: Tuple[str, ...]

    @classmethod
    def of(cls, props: Iterable[str]) -> "Alphabet":
        return cls(tuple(sorted(set(props))))

    @property
    def size(self) -> int:
        return 1 << len(self.props)

    def letters(self) -> range:
        return range(self.size)

    def position(self, prop: str) -> int:
        try:
            return self.props.index(prop)
        except ValueError:
            raise AlphabetMismatchError(f"'{prop}' not in alphabet {self.props}") from None

    def encode(self, true_props: Iterable[str]) -> int:
        """Letter in which exactly `true_props` hold."""
        return sum(1 << self.position(p) for p in set(true_props))

    def encode_valuation(self, valuation: Mapping[str, bool]) -> int:
        if set(valuation) != set(self.props):
            raise AlphabetMismatchError(f"valuation over {sorted(valuation)} for alphabet {self.props}")
        return sum(1 << j for j, p in enumerate(self.props) if valuation[p])

    def decode(self, letter: int) -> FrozenSet[str]:
        return frozenset(p for j, p in enumerate(self.props) if letter >> j & 1)

    def valuation(self, letter: int) -> Dict[str, bool]:
        return {p: bool(letter >> j & 1) for j, p in enumerate(self.props)}

    def holds(self, letter: int, prop: str) -> bool:
        return bool(letter >> self.position(prop) & 1)

    def restrict(self, letter: int, target: "Alphabet") -> int:
        """Project a letter onto a sub-alphabet."""
        return target.encode(p for p in self.decode(letter) if p in target.props)

    def without(self, prop: str) -> "Alphabet":
        self.position(prop)
        return Alphabet(tuple(p for p in self.props if p != prop))

    def union(self, other: "Alphabet") -> "Alphabet":
        return Alphabet.of(self.props + other.props)

    def render(self, letter: int) -> str:
        return "{" + " ".join(sorted(self.decode(letter))) + "}"

    def ensure_same(self, other: "Alphabet", what: str = "automaton") -> None:
        if set(self.props) != set(other.props):
            raise AlphabetMismatchError(f"{what} over {other.props}, expected {self.props}")
