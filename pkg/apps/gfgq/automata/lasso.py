"""
Lasso words and direct LTL evaluation on them.

A lasso stem·loop^ω has finitely many distinct suffixes, one per position of
stem+loop, so every LTL subformula is evaluated as a vector of booleans over
those positions: U as a least and R as a greatest fixpoint.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from automata.alphabet import Alphabet
from logic.formula import (
    Atom, And, Future, Globally, Iff, Implies, Ltl, Next, Not, Or, Release, Truth, Until,
)

Letter = FrozenSet[str]


@dataclass(frozen=True)
class LassoWord:
    """stem · loop^ω over letters given as sets of true propositions."""
    stem: Tuple[Letter, ...]
    loop: Tuple[Letter, ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("a lasso loop is never empty")

    @classmethod
    def of(cls, stem: Iterable[Iterable[str]], loop: Iterable[Iterable[str]]) -> "LassoWord":
        return cls(tuple(frozenset(x) for x in stem), tuple(frozenset(x) for x in loop))

    @property
    def length(self) -> int:
        return len(self.stem) + len(self.loop)

    def letter(self, i: int) -> Letter:
        if i < len(self.stem):
            return self.stem[i]
        return self.loop[(i - len(self.stem)) % len(self.loop)]

    def successor(self, i: int) -> int:
        """Successor among the length positions; the last one wraps to the loop start."""
        return i + 1 if i + 1 < self.length else len(self.stem)

    def prefix(self, n: int) -> List[Letter]:
        return [self.letter(i) for i in range(n)]

    def encode(self, alphabet: Alphabet) -> Tuple[List[int], List[int]]:
        return (
            [alphabet.encode(x & set(alphabet.props)) for x in self.stem],
            [alphabet.encode(x & set(alphabet.props)) for x in self.loop],
        )

    def restrict(self, props: Iterable[str]) -> "LassoWord":
        keep = frozenset(props)
        return LassoWord(tuple(x & keep for x in self.stem), tuple(x & keep for x in self.loop))

    def merge(self, other: "LassoWord") -> "LassoWord":
        """Letterwise union of two lassos (over disjoint props)."""
        stem_len = max(len(self.stem), len(other.stem))
        loop_len = int(np.lcm(len(self.loop), len(other.loop)))
        letters = [self.letter(i) | other.letter(i) for i in range(stem_len + loop_len)]
        return LassoWord(tuple(letters[:stem_len]), tuple(letters[stem_len:]))

    def render(self) -> str:
        show = lambda xs: " ".join("{" + " ".join(sorted(x)) + "}" for x in xs)
        return f"{show(self.stem)} ({show(self.loop)})^w"


def random_lasso(
    rng: np.random.Generator,
    props: Sequence[str],
    max_stem: int = 4,
    max_loop: int = 4,
) -> LassoWord:
    """Uniform random lasso with stem length 0..max_stem and loop length 1..max_loop."""
    def letters(n: int) -> List[Letter]:
        return [frozenset(p for p in props if rng.random() < 0.5) for _ in range(n)]

    stem = letters(int(rng.integers(0, max_stem + 1)))
    loop = letters(int(rng.integers(1, max_loop + 1)))
    return LassoWord(tuple(stem), tuple(loop))


def evaluate(psi: Ltl, word: LassoWord) -> List[bool]:
    """Truth value of `psi` at every position of stem+loop."""
    n = word.length
    succ = [word.successor(i) for i in range(n)]
    cache: Dict[Ltl, List[bool]] = {}

    def until(a: List[bool], b: List[bool]) -> List[bool]:
        s = [False] * n
        changed = True
        while changed:
            changed = False
            for i in range(n - 1, -1, -1):
                v = b[i] or (a[i] and s[succ[i]])
                if v != s[i]:
                    s[i] = v
                    changed = True
        return s

    def release(a: List[bool], b: List[bool]) -> List[bool]:
        s = [True] * n
        changed = True
        while changed:
            changed = False
            for i in range(n - 1, -1, -1):
                v = b[i] and (a[i] or s[succ[i]])
                if v != s[i]:
                    s[i] = v
                    changed = True
        return s

    def ev(f: Ltl) -> List[bool]:
        if f in cache:
            return cache[f]
        match f:
            case Truth(v):
                out = [v] * n
            case Atom(name):
                out = [name in word.letter(i) for i in range(n)]
            case Not(a):
                out = [not x for x in ev(a)]
            case And(a, b):
                out = [x and y for x, y in zip(ev(a), ev(b))]
            case Or(a, b):
                out = [x or y for x, y in zip(ev(a), ev(b))]
            case Implies(a, b):
                out = [(not x) or y for x, y in zip(ev(a), ev(b))]
            case Iff(a, b):
                out = [x == y for x, y in zip(ev(a), ev(b))]
            case Next(a):
                va = ev(a)
                out = [va[succ[i]] for i in range(n)]
            case Future(a):
                out = until([True] * n, ev(a))
            case Globally(a):
                out = release([False] * n, ev(a))
            case Until(a, b):
                out = until(ev(a), ev(b))
            case Release(a, b):
                out = release(ev(a), ev(b))
            case _:
                raise TypeError(f"Unsupported LTL construct: {f!r}")
        cache[f] = out
        return out

    return ev(psi)


def holds(psi: Ltl, word: LassoWord) -> bool:
    """word ⊨ psi."""
    return evaluate(psi, word)[0]
