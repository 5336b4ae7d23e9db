"""
Formula text parser built on lark.

Grammar:
    sentence := { quant } ltl
    quant    := ("E"|"A") IDENT [":" spec] "."
    spec     := "B" | "S" | "<" props ";" props ">"     props := "*" | { IDENT }
Binary precedence, loosest first: <->, ->, |, &, then U and R (right-associative);
unary operators bind tightest. `#` starts a comment that runs to end of line.

An IDENT is read as far as it goes, so `Xp` is the proposition Xp while `X p`
is next-p; operators must be separated from names by blanks or brackets. The
keywords in RESERVED never name a proposition.
"""

from __future__ import annotations
import logging
from pathlib import Path
from typing import Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from core.errors import FormulaSyntaxError, GfgqError
from core.models import QuantifierKind
from logic.formula import (
    ALL, BEHAVIORAL, FALSE, STRONGLY_BEHAVIORAL, TRUE, VANILLA,
    And, Atom, Formula, Future, Globally, Iff, Implies, Next, Not, Or,
    Prefix, QuantSpec, Quantifier, Release, Until,
)

logger = logging.getLogger(__name__)


GRAMMAR = r"""
start: quantifier* ltl

quantifier: "E" NAME [":" spec] "." -> exists
          | "A" NAME [":" spec] "." -> forall

spec: "B"                     -> spec_b
    | "S"                     -> spec_s
    | "<" props ";" props ">" -> spec_explicit

props: "*"                    -> all_props
     | NAME*                  -> named_props

?ltl: iff_level
?iff_level: implies_level
          | iff_level "<->" implies_level       -> iff
?implies_level: or_level
              | or_level "->" implies_level     -> implies
?or_level: and_level
         | or_level "|" and_level               -> disj
?and_level: temporal_level
          | and_level "&" temporal_level        -> conj
?temporal_level: unary
               | unary "U" temporal_level       -> until
               | unary "R" temporal_level       -> release
?unary: atom
      | "!" unary                               -> neg
      | "X" unary                               -> next
      | "F" unary                               -> future
      | "G" unary                               -> globally
?atom: "true"                                   -> true_const
     | "false"                                  -> false_const
     | NAME                                     -> prop
     | "(" ltl ")"

NAME: /[a-zA-Z_][a-zA-Z0-9_]*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

RESERVED = frozenset({"E", "A", "X", "F", "G", "U", "R", "true", "false"})


def _proposition(token) -> str:
    name = str(token)
    if name in RESERVED:
        raise FormulaSyntaxError(
            f"'{name}' is an operator keyword and cannot name a proposition",
            getattr(token, "line", None),
            getattr(token, "column", None),
        )
    return name


@v_args(inline=True)
class FormulaBuilder(Transformer):
    """Turns the parse tree into the frozen AST."""

    def start(self, *items):
        *quantifiers, matrix = items
        return Formula(Prefix(tuple(quantifiers)), matrix)

    def exists(self, name, spec):
        return Quantifier(QuantifierKind.EXISTS, _proposition(name), spec or VANILLA)

    def forall(self, name, spec):
        return Quantifier(QuantifierKind.FORALL, _proposition(name), spec or VANILLA)

    def spec_b(self):
        return BEHAVIORAL

    def spec_s(self):
        return STRONGLY_BEHAVIORAL

    def spec_explicit(self, behavioral, strongly_behavioral):
        return QuantSpec(behavioral, strongly_behavioral)

    def all_props(self):
        return ALL

    def named_props(self, *names):
        return frozenset(_proposition(n) for n in names)

    def iff(self, a, b):
        return Iff(a, b)

    def implies(self, a, b):
        return Implies(a, b)

    def disj(self, a, b):
        return Or(a, b)

    def conj(self, a, b):
        return And(a, b)

    def until(self, a, b):
        return Until(a, b)

    def release(self, a, b):
        return Release(a, b)

    def neg(self, a):
        return Not(a)

    def next(self, a):
        return Next(a)

    def future(self, a):
        return Future(a)

    def globally(self, a):
        return Globally(a)

    def true_const(self):
        return TRUE

    def false_const(self):
        return FALSE

    def prop(self, name):
        return Atom(_proposition(name))


_parser = Lark(GRAMMAR, parser="lalr", maybe_placeholders=True)


def parse(text: str) -> Formula:
    """
    Parse formula text into a prenex Formula.

    Raises:
        FormulaSyntaxError: text outside the grammar (with line/column)
        DuplicateQuantifierError: a proposition quantified twice
    """
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as e:
        line = getattr(e, "line", None)
        column = getattr(e, "column", None)
        raise FormulaSyntaxError("unexpected input", line, column) from None
    try:
        formula = FormulaBuilder().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, GfgqError):
            raise e.orig_exc from None
        raise
    logger.debug(f"Parsed formula with {len(formula.prefix)} quantifiers")
    return formula


def parse_file(path: Union[str, Path]) -> Formula:
    return parse(Path(path).read_text(encoding="utf-8"))
