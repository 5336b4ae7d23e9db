"""
Witness transducers extracted from Eloise's winning strategy.

A transducer state is the automaton state q at the start of a round, i.e. the
product position (q, ∅). Each round reads the valuation of the universal
props, walks the round with Abelard's choices taken from the input and
Eloise's from her strategy, and emits the valuation of the existential props.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.config import settings
from core.errors import AlphabetMismatchError, WitnessUnavailableError
from core.models import Player
from automata.alphabet import Alphabet
from automata.determinize import determinize
from automata.lasso import LassoWord, random_lasso
from automata.ltl2nba import ltl_to_nba
from automata.parity import ParityAutomaton
from games.builder import ParityGame
from games.solver import Solution
from logic.formula import Formula

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Transducer:
    """Mealy machine: output[s][i] and successor[s][i] for state s and input letter i."""
    inputs: Alphabet
    outputs: Alphabet
    initial: int
    output: Tuple[Tuple[int, ...], ...]
    successor: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.output)

    def label(self, state: int) -> str:
        return self.labels[state] if self.labels else str(state)

    def run(self, inputs: Iterable[int]) -> List[int]:
        s = self.initial
        out = []
        for i in inputs:
            out.append(self.output[s][i])
            s = self.successor[s][i]
        return out

    def corrupted(self, state: int, letter: int) -> "Transducer":
        """Copy with the output of (state, letter) flipped on every output prop."""
        flipped = self.output[state][letter] ^ (self.outputs.size - 1)
        row = self.output[state][:letter] + (flipped,) + self.output[state][letter + 1:]
        output = self.output[:state] + (row,) + self.output[state + 1:]
        return Transducer(self.inputs, self.outputs, self.initial, output, self.successor, self.labels)

    def table(self) -> List[Tuple[str, str, str, str]]:
        """Rows (state, input, output, next state), one per state and input letter."""
        rows = []
        for s in range(self.size):
            for i in self.inputs.letters():
                rows.append((
                    self.label(s),
                    self.inputs.render(i),
                    self.outputs.render(self.output[s][i]),
                    self.label(self.successor[s][i]),
                ))
        return rows

    def render_table(self) -> str:
        lines = ["state\tinput\toutput\tnext"]
        lines += ["\t".join(row) for row in self.table()]
        return "\n".join(lines)


def extract_witness(game: ParityGame, solution: Solution) -> Transducer:
    """
    Read Eloise's winning strategy off a solved game as a Mealy transducer.

    Rounds are read in the arena's play order, which is round_order of the
    sentence's prefix. An existential played before a universal in a round
    never sees that universal's current letter, which is the strict dependency
    the ∀∃ canonical form states with S<...>. So the transducer also witnesses
    the C_∀∃ form, with no explicit conversion. procedures.witness_for starts
    from a formula instead of a game.

    Raises:
        WitnessUnavailableError: Eloise does not win from the initial position,
            or the game was not built from an arena and an automaton
    """
    if game.arena is None or game.automaton is None:
        raise WitnessUnavailableError("game carries no arena/automaton to read rounds from")
    if solution.winner(game.initial) is not Player.ELOISE:
        raise WitnessUnavailableError("Abelard wins: no witness to extract")
    arena, d = game.arena, game.automaton
    prefix = arena.prefix
    m = arena.size
    inputs = Alphabet.of(prefix.universal_props)
    outputs = Alphabet.of(prefix.existential_props)
    strategy = solution.strategies[Player.ELOISE]

    def round_from(q: int, letter: int) -> Tuple[int, int]:
        v = arena.initial
        values = {}
        for quantifier in prefix:
            if quantifier.is_existential:
                position = q * m + v
                if position not in strategy:
                    raise WitnessUnavailableError(f"no strategy move at {game.render(position)}")
                v = strategy[position] - q * m
                value = arena.positions[v][-1]
            else:
                value = inputs.holds(letter, quantifier.prop)
                v = arena.moves[v][int(value)]
            values[quantifier.prop] = value
        true_props = [p for p, b in values.items() if b]
        out = outputs.encode(p for p in true_props if p in outputs.props)
        return out, d.step(q, d.alphabet.encode(true_props))

    index: Dict[int, int] = {d.initial: 0}
    order = [d.initial]
    output: List[Tuple[int, ...]] = []
    successor: List[Tuple[int, ...]] = []
    i = 0
    while i < len(order):
        q = order[i]
        out_row, next_row = [], []
        for letter in inputs.letters():
            out, q2 = round_from(q, letter)
            if q2 not in index:
                index[q2] = len(order)
                order.append(q2)
            out_row.append(out)
            next_row.append(index[q2])
        output.append(tuple(out_row))
        successor.append(tuple(next_row))
        i += 1
    t = Transducer(inputs, outputs, 0, tuple(output), tuple(successor), tuple(d.label(q) for q in order))
    logger.info(f"Extracted witness transducer with {t.size} states")
    return t


def matrix_automaton(f: Formula) -> ParityAutomaton:
    return determinize(ltl_to_nba(f.matrix, set(f.prefix.props) | f.free_props))


def induced_lasso(t: Transducer, adversary: LassoWord) -> LassoWord:
    """The full word produced by t against the adversary; periodic in (state, position)."""
    stem, loop = adversary.encode(t.inputs)
    letters = stem + loop
    s, i = t.initial, 0
    seen: Dict[Tuple[int, int], int] = {}
    word = []
    while (s, i) not in seen:
        seen[(s, i)] = len(word)
        a = letters[i]
        word.append(t.inputs.decode(a) | t.outputs.decode(t.output[s][a]))
        s = t.successor[s][a]
        i = adversary.successor(i)
    start = seen[(s, i)]
    return LassoWord(tuple(word[:start]), tuple(word[start:]))


def simulate_witness(
    t: Transducer, f: Formula, adversary: LassoWord, d: Optional[ParityAutomaton] = None
) -> bool:
    """
    Whether the word built by t against `adversary` satisfies the matrix of f.

    Raises:
        AlphabetMismatchError: t does not read the universal props of f or
            write its existential ones
    """
    if set(t.inputs.props) != set(f.prefix.universal_props):
        raise AlphabetMismatchError(f"transducer reads {t.inputs.props}, formula has {f.prefix.universal_props}")
    if set(t.outputs.props) != set(f.prefix.existential_props):
        raise AlphabetMismatchError(f"transducer writes {t.outputs.props}, formula has {f.prefix.existential_props}")
    d = d or matrix_automaton(f)
    return d.accepts(induced_lasso(t, adversary))


def check_witness(
    f: Formula,
    t: Transducer,
    samples: Optional[int] = None,
    seed: int = 0,
) -> Optional[LassoWord]:
    """First random adversary the witness fails against, or None if all pass."""
    rng = np.random.default_rng(seed)
    d = matrix_automaton(f)
    for _ in range(samples or settings.lasso_samples):
        adversary = random_lasso(rng, t.inputs.props)
        if not simulate_witness(t, f, adversary, d):
            logger.warning(f"Witness fails against {adversary.render()}")
            return adversary
    return None
