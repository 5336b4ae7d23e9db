"""
HOA export and import.

Only state-based acceptance is written: `Buchi` for NBAs and
`parity max even K` for DPAs, with one explicit edge per letter. The reader
accepts the same subset, with arbitrary Boolean edge labels.
"""

from __future__ import annotations
import logging
from pathlib import Path
from typing import Callable, Dict, FrozenSet, List, Set, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput

from core.errors import AutomatonFormatError
from automata.alphabet import Alphabet
from automata.buchi import BuchiAutomaton
from automata.parity import ParityAutomaton

logger = logging.getLogger(__name__)

Automaton = Union[BuchiAutomaton, ParityAutomaton]


def _letter_label(alphabet: Alphabet, letter: int) -> str:
    if not alphabet.props:
        return "t"
    return "&".join(
        str(j) if letter >> j & 1 else f"!{j}" for j in range(len(alphabet.props))
    )


def _parity_condition(k: int) -> str:
    """Max-even condition over sets 0..k-1."""
    formula = "Inf(0)"
    for i in range(1, k):
        formula = f"Inf({i}) | ({formula})" if i % 2 == 0 else f"Fin({i}) & ({formula})"
    return formula


def _header(alphabet: Alphabet, name: str, size: int, starts) -> List[str]:
    aps = " ".join(f'"{p}"' for p in alphabet.props)
    lines = ["HOA: v1", f'name: "{name}"', f"States: {size}"]
    lines += [f"Start: {s}" for s in starts]
    lines.append(f"AP: {len(alphabet.props)} {aps}".rstrip())
    return lines


def to_hoa(a: Automaton, name: str = "gfgq") -> str:
    if isinstance(a, ParityAutomaton):
        k = a.max_priority + 1
        lines = _header(a.alphabet, name, a.size, [a.initial])
        lines += [
            f"acc-name: parity max even {k}",
            f"Acceptance: {k} {_parity_condition(k)}",
            "properties: explicit-labels state-acc deterministic complete",
            "--BODY--",
        ]
        for s in a.states:
            lines.append(f'State: {s} "{a.label(s)}" {{{a.priority[s]}}}')
            for letter, t in enumerate(a.delta[s]):
                lines.append(f"[{_letter_label(a.alphabet, letter)}] {t}")
    else:
        lines = _header(a.alphabet, name, a.size, sorted(a.initial))
        lines += [
            "acc-name: Buchi",
            "Acceptance: 1 Inf(0)",
            "properties: explicit-labels state-acc",
            "--BODY--",
        ]
        for s in a.states:
            mark = " {0}" if s in a.accepting else ""
            lines.append(f'State: {s} "{a.label(s)}"{mark}')
            for letter in sorted(a.delta[s]):
                for t in sorted(a.delta[s][letter]):
                    lines.append(f"[{_letter_label(a.alphabet, letter)}] {t}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"


HOA_GRAMMAR = r"""
start: item+ _BODY state* _END

?item: _HOA IDENT                            -> version
     | _NAME STRING                          -> name
     | _STATES INT                           -> states
     | _START INT                            -> start_state
     | _AP INT STRING*                       -> aps
     | _ACC_NAME IDENT (IDENT | INT)*        -> acc_name
     | _ACCEPTANCE INT acc                   -> acceptance
     | _PROPERTIES IDENT*                    -> properties

acc: acc_term ("|" acc_term)*
acc_term: acc_atom ("&" acc_atom)*
acc_atom: "Inf" "(" INT ")" | "Fin" "(" INT ")" | "(" acc ")" | "t" | "f"

state: _STATE INT STRING? marks? edge*
edge: "[" label "]" INT
marks: "{" INT* "}"

label: conj ("|" conj)*
conj: lit ("&" lit)*
lit: "!" lit        -> neg
   | INT            -> ap
   | "t"            -> true
   | "f"            -> false
   | "(" label ")"  -> group

_HOA.2: "HOA:"
_NAME.2: "name:"
_STATES.2: "States:"
_START.2: "Start:"
_AP.2: "AP:"
_ACC_NAME.2: "acc-name:"
_ACCEPTANCE.2: "Acceptance:"
_PROPERTIES.2: "properties:"
_STATE.2: "State:"
_BODY.2: "--BODY--"
_END.2: "--END--"
IDENT: /[A-Za-z_][A-Za-z0-9_-]*/
STRING: /"[^"]*"/

%import common.INT
%import common.WS
%ignore WS
"""

Predicate = Callable[[FrozenSet[int]], bool]


class HoaBuilder(Transformer):
    """Collects header fields and states into a plain dictionary."""

    def start(self, items):
        header: Dict[str, object] = {"start": [], "states_list": []}
        for item in items:
            if isinstance(item, tuple) and item[0] == "state":
                header["states_list"].append(item[1:])
            elif isinstance(item, tuple) and item[0] == "start":
                header["start"].append(item[1])
            elif isinstance(item, tuple):
                header[item[0]] = item[1]
        return header

    def version(self, items):
        return ("version", str(items[0]))

    def name(self, items):
        return ("name", str(items[0])[1:-1])

    def states(self, items):
        return ("size", int(items[0]))

    def start_state(self, items):
        return ("start", int(items[0]))

    def aps(self, items):
        names = [str(x)[1:-1] for x in items[1:]]
        if len(names) != int(items[0]):
            raise AutomatonFormatError(f"AP declares {items[0]} propositions, lists {len(names)}")
        return ("aps", names)

    def acc_name(self, items):
        return ("acc_name", " ".join(str(x) for x in items))

    def acceptance(self, items):
        return ("acceptance_sets", int(items[0]))

    def properties(self, items):
        return ("properties", [str(x) for x in items])

    def state(self, items):
        index = int(items[0])
        marks: Set[int] = set()
        edges = []
        for x in items[1:]:
            if isinstance(x, tuple) and x[0] == "marks":
                marks = x[1]
            elif isinstance(x, tuple) and x[0] == "edge":
                edges.append(x[1:])
        return ("state", index, marks, edges)

    def marks(self, items):
        return ("marks", {int(x) for x in items})

    def edge(self, items):
        return ("edge", items[0], int(items[1]))

    def label(self, items) -> Predicate:
        return lambda v: any(c(v) for c in items)

    def conj(self, items) -> Predicate:
        return lambda v: all(c(v) for c in items)

    @v_args(inline=True)
    def neg(self, inner: Predicate) -> Predicate:
        return lambda v: not inner(v)

    @v_args(inline=True)
    def ap(self, index) -> Predicate:
        j = int(index)
        return lambda v: j in v

    def true(self, _) -> Predicate:
        return lambda v: True

    def false(self, _) -> Predicate:
        return lambda v: False

    @v_args(inline=True)
    def group(self, inner: Predicate) -> Predicate:
        return inner


_hoa_parser = Lark(HOA_GRAMMAR, parser="lalr")


def from_hoa(text: str) -> Automaton:
    """
    Read an automaton written by `to_hoa` (or any HOA file in the same subset).

    Raises:
        AutomatonFormatError: syntax errors, unsupported acceptance, or a
            parity file that is not deterministic and complete
    """
    try:
        data = HoaBuilder().transform(_hoa_parser.parse(text))
    except UnexpectedInput as e:
        raise AutomatonFormatError(f"HOA syntax error at line {e.line}, column {e.column}") from e
    except Exception as e:
        cause = getattr(e, "orig_exc", None)
        if isinstance(cause, AutomatonFormatError):
            raise cause from None
        raise

    aps: List[str] = data.get("aps", [])
    alphabet = Alphabet.of(aps)
    size = data.get("size", len(data["states_list"]))
    true_aps = [
        frozenset(j for j, p in enumerate(aps) if alphabet.holds(letter, p))
        for letter in alphabet.letters()
    ]
    marks: Dict[int, Set[int]] = {}
    moves: Dict[int, Dict[int, Set[int]]] = {s: {} for s in range(size)}
    for index, state_marks, edges in data["states_list"]:
        if not 0 <= index < size:
            raise AutomatonFormatError(f"state {index} outside 0..{size - 1}")
        marks[index] = state_marks
        for predicate, target in edges:
            for letter, v in enumerate(true_aps):
                if predicate(v):
                    moves[index].setdefault(letter, set()).add(target)

    acc_name = data.get("acc_name", "")
    if not data["start"]:
        raise AutomatonFormatError("no Start state")
    if acc_name == "Buchi":
        return BuchiAutomaton(
            alphabet,
            frozenset(data["start"]),
            tuple({a: frozenset(ts) for a, ts in moves[s].items()} for s in range(size)),
            frozenset(s for s, m in marks.items() if 0 in m),
        )
    if acc_name.startswith("parity max even"):
        delta = []
        for s in range(size):
            row = []
            for letter in alphabet.letters():
                targets = moves[s].get(letter, set())
                if len(targets) != 1:
                    raise AutomatonFormatError(f"state {s} has {len(targets)} moves on a letter")
                row.append(next(iter(targets)))
            delta.append(tuple(row))
        priority = []
        for s in range(size):
            if len(marks.get(s, ())) != 1:
                raise AutomatonFormatError(f"state {s} needs exactly one priority")
            priority.append(next(iter(marks[s])))
        if len(data["start"]) != 1:
            raise AutomatonFormatError("a parity automaton has one Start state")
        return ParityAutomaton(alphabet, data["start"][0], tuple(delta), tuple(priority))
    raise AutomatonFormatError(f"unsupported acceptance '{acc_name}'")


def read_hoa(path: Union[str, Path]) -> Automaton:
    return from_hoa(Path(path).read_text())


def write_hoa(a: Automaton, path: Union[str, Path], name: str = "gfgq") -> None:
    Path(path).write_text(to_hoa(a, name))
    logger.info(f"Wrote HOA automaton ({a.size} states) to {path}")
