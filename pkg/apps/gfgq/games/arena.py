"""
Quantification-game arenas.

A position is a partial valuation of the prefix's propositions, given as the
tuple of values of its first #v quantifiers. The owner of a position is the
player of quantifier #v; full valuations belong to Abelard and reset to the
empty valuation, which starts the next round.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, FrozenSet, Tuple

from core.errors import UnsupportedFragmentError
from core.models import Player
from automata.alphabet import Alphabet
from logic.formula import Prefix

Valuation = Tuple[bool, ...]


@dataclass(frozen=True, eq=False)
class Arena:
    prefix: Prefix
    positions: Tuple[Valuation, ...]
    owner: Tuple[Player, ...]
    moves: Tuple[Tuple[int, ...], ...]
    observables: FrozenSet[int]
    initial: int = 0

    @property
    def size(self) -> int:
        return len(self.positions)

    def index(self, valuation: Valuation) -> int:
        # positions are listed by length, then by binary value (first prop most significant)
        n = len(valuation)
        value = 0
        for b in valuation:
            value = value << 1 | int(b)
        return (1 << n) - 1 + value

    def is_full(self, position: int) -> bool:
        return len(self.positions[position]) == len(self.prefix)

    def true_props(self, position: int) -> FrozenSet[str]:
        return frozenset(p for p, b in zip(self.prefix.props, self.positions[position]) if b)

    def letters(self, alphabet: Alphabet) -> Dict[int, int]:
        """Letter of every observable position over `alphabet`."""
        return {v: alphabet.encode(self.true_props(v)) for v in sorted(self.observables)}

    def render(self, position: int) -> str:
        values = self.positions[position]
        if not values:
            return "∅"
        return ",".join(f"{p}={int(b)}" for p, b in zip(self.prefix.props, values))


def build_arena(prefix: Prefix) -> Arena:
    """
    Raises:
        UnsupportedFragmentError: a quantifier that is not behavioral
    """
    if not prefix.is_behavioral():
        raise UnsupportedFragmentError(f"arena needs a behavioral prefix, got {prefix.render()}")
    n = len(prefix)
    positions = []
    for length in range(n + 1):
        for value in range(1 << length):
            positions.append(tuple(bool(value >> (length - 1 - i) & 1) for i in range(length)))
    owner = []
    moves = []
    for v in positions:
        i = len(v)
        if i < n:
            owner.append(Player.ELOISE if prefix[i].is_existential else Player.ABELARD)
            base = (1 << (i + 1)) - 1
            value = 0
            for b in v:
                value = value << 1 | int(b)
            moves.append((base + 2 * value, base + 2 * value + 1))
        else:
            owner.append(Player.ABELARD)
            moves.append((0,))
    observables = frozenset(range((1 << n) - 1, (1 << (n + 1)) - 1))
    return Arena(prefix, tuple(positions), tuple(owner), tuple(moves), observables)
