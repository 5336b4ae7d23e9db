"""
AST of GFG-QPTL formulae.

An LTL matrix is a tree of frozen dataclasses; a prenex formula pairs a
duplicate-free quantifier prefix with a matrix. A general (non-prenex) variant
admitting negation, conjunction and disjunction above quantifiers exists for
the bounded-horizon oracle only.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, Optional, Tuple, Union

from core.errors import DuplicateQuantifierError
from core.models import Classification, QuantifierKind


# ---------------------------------------------------------------------------
# Proposition sets with the ALL sentinel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AllProps:
    """Sentinel standing for every atomic proposition."""

    def __repr__(self) -> str:
        return "ALL"


ALL = AllProps()

PropSet = Union[FrozenSet[str], AllProps]


def props_union(a: PropSet, b: PropSet) -> PropSet:
    if isinstance(a, AllProps) or isinstance(b, AllProps):
        return ALL
    return a | b


def props_contains(a: PropSet, prop: str) -> bool:
    return isinstance(a, AllProps) or prop in a


def _render_props(a: PropSet) -> str:
    if isinstance(a, AllProps):
        return "*"
    return " ".join(sorted(a))


@dataclass(frozen=True)
class QuantSpec:
    """Quantifier specification <P_B><P_S>."""
    behavioral: PropSet = frozenset()
    strongly_behavioral: PropSet = frozenset()

    def union(self, other: "QuantSpec") -> "QuantSpec":
        return QuantSpec(
            props_union(self.behavioral, other.behavioral),
            props_union(self.strongly_behavioral, other.strongly_behavioral),
        )

    def split(self, props: Iterable[str]) -> Tuple[FrozenSet[str], FrozenSet[str], FrozenSet[str]]:
        """
        Partition `props` by how a sigma-functor may read them.

        Returns (unrestricted, behavioral, strict): props outside P_B and P_S are
        read without restriction, P_B minus P_S up to the current instant, and
        P_S strictly before it.
        """
        unrestricted, behavioral, strict = set(), set(), set()
        for p in props:
            if props_contains(self.strongly_behavioral, p):
                strict.add(p)
            elif props_contains(self.behavioral, p):
                behavioral.add(p)
            else:
                unrestricted.add(p)
        return frozenset(unrestricted), frozenset(behavioral), frozenset(strict)

    def render(self) -> str:
        b = _render_props(self.behavioral)
        s = _render_props(self.strongly_behavioral)
        sep = "; " if b and s else ";"
        return f"<{b}{sep}{s}>"


BEHAVIORAL = QuantSpec(ALL, frozenset())
STRONGLY_BEHAVIORAL = QuantSpec(frozenset(), ALL)
VANILLA = QuantSpec()


def spec_union(a: QuantSpec, b: QuantSpec) -> QuantSpec:
    """Componentwise union of two specifications; ALL absorbs."""
    return a.union(b)


def strict_on(props: Iterable[str]) -> QuantSpec:
    """B ∪ S<props>: behavioral, and strongly behavioral on `props`."""
    return BEHAVIORAL.union(QuantSpec(frozenset(), frozenset(props)))


# ---------------------------------------------------------------------------
# LTL
# ---------------------------------------------------------------------------

class Ltl:
    """Base class of LTL nodes."""


@dataclass(frozen=True)
class Truth(Ltl):
    value: bool


@dataclass(frozen=True)
class Atom(Ltl):
    name: str


@dataclass(frozen=True)
class Not(Ltl):
    operand: Ltl


@dataclass(frozen=True)
class And(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True)
class Or(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True)
class Implies(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True)
class Iff(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True)
class Next(Ltl):
    operand: Ltl


@dataclass(frozen=True)
class Future(Ltl):
    operand: Ltl


@dataclass(frozen=True)
class Globally(Ltl):
    operand: Ltl


@dataclass(frozen=True)
class Until(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True)
class Release(Ltl):
    left: Ltl
    right: Ltl


TRUE = Truth(True)
FALSE = Truth(False)

_UNARY = (Not, Next, Future, Globally)
_BINARY = (And, Or, Implies, Iff, Until, Release)
_SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->", Until: "U", Release: "R"}


def children(psi: Ltl) -> Tuple[Ltl, ...]:
    if isinstance(psi, _UNARY):
        return (psi.operand,)
    if isinstance(psi, _BINARY):
        return (psi.left, psi.right)
    return ()


def subformulas(psi: Ltl) -> Iterator[Ltl]:
    """Pre-order traversal."""
    yield psi
    for c in children(psi):
        yield from subformulas(c)


def ltl_props(psi: Ltl) -> FrozenSet[str]:
    return frozenset(node.name for node in subformulas(psi) if isinstance(node, Atom))


def x_depth(psi: Ltl) -> int:
    """Nesting depth of X operators."""
    match psi:
        case Next(a):
            return 1 + x_depth(a)
        case _:
            return max((x_depth(c) for c in children(psi)), default=0)


def has_unbounded_operators(psi: Ltl) -> bool:
    return any(isinstance(node, (Until, Release, Future, Globally)) for node in subformulas(psi))


def is_x_bounded(psi: Ltl, horizon: int) -> bool:
    """True when the matrix only looks at the explicit part of a horizon-h word."""
    return not has_unbounded_operators(psi) and x_depth(psi) < horizon


def to_core(psi: Ltl) -> Ltl:
    """Expand F, G, R, -> and <-> into the {!, &, |, X, U} core."""
    match psi:
        case Truth() | Atom():
            return psi
        case Not(a):
            return Not(to_core(a))
        case And(a, b):
            return And(to_core(a), to_core(b))
        case Or(a, b):
            return Or(to_core(a), to_core(b))
        case Implies(a, b):
            return Or(Not(to_core(a)), to_core(b))
        case Iff(a, b):
            ca, cb = to_core(a), to_core(b)
            return Or(And(ca, cb), And(Not(ca), Not(cb)))
        case Next(a):
            return Next(to_core(a))
        case Future(a):
            return Until(TRUE, to_core(a))
        case Globally(a):
            return Not(Until(TRUE, Not(to_core(a))))
        case Until(a, b):
            return Until(to_core(a), to_core(b))
        case Release(a, b):
            return Not(Until(Not(to_core(a)), Not(to_core(b))))
    raise TypeError(f"Unsupported LTL construct: {psi!r}")


def to_nnf(psi: Ltl, negated: bool = False) -> Ltl:
    """
    Negation normal form over {true, false, p, !p, &, |, X, U, R}.

    With `negated` set, returns the NNF of !psi.
    """
    match psi:
        case Truth(v):
            return Truth(v != negated)
        case Atom():
            return Not(psi) if negated else psi
        case Not(a):
            return to_nnf(a, not negated)
        case And(a, b):
            op = Or if negated else And
            return op(to_nnf(a, negated), to_nnf(b, negated))
        case Or(a, b):
            op = And if negated else Or
            return op(to_nnf(a, negated), to_nnf(b, negated))
        case Implies(a, b):
            if negated:
                return And(to_nnf(a), to_nnf(b, True))
            return Or(to_nnf(a, True), to_nnf(b))
        case Iff(a, b):
            if negated:
                return Or(And(to_nnf(a), to_nnf(b, True)), And(to_nnf(a, True), to_nnf(b)))
            return Or(And(to_nnf(a), to_nnf(b)), And(to_nnf(a, True), to_nnf(b, True)))
        case Next(a):
            return Next(to_nnf(a, negated))
        case Future(a):
            if negated:
                return Release(FALSE, to_nnf(a, True))
            return Until(TRUE, to_nnf(a))
        case Globally(a):
            if negated:
                return Until(TRUE, to_nnf(a, True))
            return Release(FALSE, to_nnf(a))
        case Until(a, b):
            op = Release if negated else Until
            return op(to_nnf(a, negated), to_nnf(b, negated))
        case Release(a, b):
            op = Until if negated else Release
            return op(to_nnf(a, negated), to_nnf(b, negated))
    raise TypeError(f"Unsupported LTL construct: {psi!r}")


def negate(psi: Ltl) -> Ltl:
    """
    Push one negation through `psi` down to atoms.

    Biconditionals are kept as negated biconditionals, and double negations
    cancel, so negate(negate(psi)) is equivalent to psi.
    """
    match psi:
        case Truth(v):
            return Truth(not v)
        case Atom():
            return Not(psi)
        case Not(a):
            return a
        case And(a, b):
            return Or(negate(a), negate(b))
        case Or(a, b):
            return And(negate(a), negate(b))
        case Implies(a, b):
            return And(a, negate(b))
        case Iff():
            return Not(psi)
        case Next(a):
            return Next(negate(a))
        case Future(a):
            return Globally(negate(a))
        case Globally(a):
            return Future(negate(a))
        case Until(a, b):
            return Release(negate(a), negate(b))
        case Release(a, b):
            return Until(negate(a), negate(b))
    raise TypeError(f"Unsupported LTL construct: {psi!r}")


def render_ltl(psi: Ltl) -> str:
    """Concrete syntax with every binary operator parenthesized."""
    match psi:
        case Truth(v):
            return "true" if v else "false"
        case Atom(name):
            return name
        case Not(a):
            return f"!{render_ltl(a)}"
        case Next(a):
            return f"X {render_ltl(a)}"
        case Future(a):
            return f"F {render_ltl(a)}"
        case Globally(a):
            return f"G {render_ltl(a)}"
    if isinstance(psi, _BINARY):
        return f"({render_ltl(psi.left)} {_SYMBOL[type(psi)]} {render_ltl(psi.right)})"
    raise TypeError(f"Unsupported LTL construct: {psi!r}")


# ---------------------------------------------------------------------------
# Quantifiers and prenex formulae
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quantifier:
    kind: QuantifierKind
    prop: str
    spec: QuantSpec = VANILLA

    @property
    def is_existential(self) -> bool:
        return self.kind is QuantifierKind.EXISTS

    def dual(self) -> "Quantifier":
        return Quantifier(self.kind.dual, self.prop, self.spec)

    def with_spec(self, spec: QuantSpec) -> "Quantifier":
        return Quantifier(self.kind, self.prop, spec)

    def render(self) -> str:
        return f"{self.kind.value} {self.prop}:{self.spec.render()}."


@dataclass(frozen=True)
class Prefix:
    """Ordered, duplicate-free quantifier sequence."""
    quantifiers: Tuple[Quantifier, ...] = ()

    def __post_init__(self):
        seen = set()
        for q in self.quantifiers:
            if q.prop in seen:
                raise DuplicateQuantifierError(q.prop)
            seen.add(q.prop)

    def __len__(self) -> int:
        return len(self.quantifiers)

    def __iter__(self) -> Iterator[Quantifier]:
        return iter(self.quantifiers)

    def __getitem__(self, index: int) -> Quantifier:
        return self.quantifiers[index]

    @property
    def props(self) -> Tuple[str, ...]:
        return tuple(q.prop for q in self.quantifiers)

    @property
    def existential_props(self) -> Tuple[str, ...]:
        return tuple(q.prop for q in self.quantifiers if q.is_existential)

    @property
    def universal_props(self) -> Tuple[str, ...]:
        return tuple(q.prop for q in self.quantifiers if not q.is_existential)

    @property
    def alternations(self) -> int:
        kinds = [q.kind for q in self.quantifiers]
        return sum(1 for a, b in zip(kinds, kinds[1:]) if a is not b)

    def is_behavioral(self) -> bool:
        return all(q.spec == BEHAVIORAL for q in self.quantifiers)

    def dual(self) -> "Prefix":
        return Prefix(tuple(q.dual() for q in self.quantifiers))

    def concat(self, other: "Prefix") -> "Prefix":
        return Prefix(self.quantifiers + other.quantifiers)

    def render(self) -> str:
        return " ".join(q.render() for q in self.quantifiers)


@dataclass(frozen=True)
class Formula:
    """Prenex GFG-QPTL formula."""
    prefix: Prefix = field(default_factory=Prefix)
    matrix: Ltl = TRUE

    @property
    def free_props(self) -> FrozenSet[str]:
        return ltl_props(self.matrix) - frozenset(self.prefix.props)

    @property
    def is_closed(self) -> bool:
        return not self.free_props

    def render(self) -> str:
        head = self.prefix.render()
        return f"{head} {render_ltl(self.matrix)}" if head else render_ltl(self.matrix)


# General formulae, oracle only

@dataclass(frozen=True)
class Quantified:
    quantifier: Quantifier
    body: "GeneralFormula"


@dataclass(frozen=True)
class QNot:
    operand: "GeneralFormula"


@dataclass(frozen=True)
class QAnd:
    left: "GeneralFormula"
    right: "GeneralFormula"


@dataclass(frozen=True)
class QOr:
    left: "GeneralFormula"
    right: "GeneralFormula"


GeneralFormula = Union[Ltl, Quantified, QNot, QAnd, QOr]


def to_general(f: Union[Formula, GeneralFormula]) -> GeneralFormula:
    if not isinstance(f, Formula):
        return f
    body: GeneralFormula = f.matrix
    for q in reversed(f.prefix.quantifiers):
        body = Quantified(q, body)
    return body


def as_prenex(g: Union[Formula, GeneralFormula]) -> Optional[Formula]:
    """The prenex view of `g`, or None when a quantifier sits under a Boolean connective."""
    if isinstance(g, Formula):
        return g
    quantifiers = []
    while isinstance(g, Quantified):
        quantifiers.append(g.quantifier)
        g = g.body
    if not isinstance(g, Ltl):
        return None
    return Formula(Prefix(tuple(quantifiers)), g)


def free_props(g: Union[Formula, GeneralFormula]) -> FrozenSet[str]:
    match g:
        case Formula():
            return g.free_props
        case Quantified(q, body):
            return free_props(body) - {q.prop}
        case QNot(a):
            return free_props(a)
        case QAnd(a, b) | QOr(a, b):
            return free_props(a) | free_props(b)
    return ltl_props(g)


def quantified_props(g: Union[Formula, GeneralFormula]) -> FrozenSet[str]:
    match g:
        case Formula():
            return frozenset(g.prefix.props)
        case Quantified(q, body):
            return quantified_props(body) | {q.prop}
        case QNot(a):
            return quantified_props(a)
        case QAnd(a, b) | QOr(a, b):
            return quantified_props(a) | quantified_props(b)
    return frozenset()


def classify(g: Union[Formula, GeneralFormula]) -> Classification:
    """Structural predicates: prenex shape, quantifier fragment, bound/free props."""
    prenex = as_prenex(g)
    specs = [q.spec for q in prenex.prefix] if prenex is not None else []
    return Classification(
        is_prenex=prenex is not None,
        is_behavioral=prenex is not None and all(s == BEHAVIORAL for s in specs),
        is_strongly_behavioral=prenex is not None and all(s == STRONGLY_BEHAVIORAL for s in specs),
        is_vanilla=prenex is not None and all(s == VANILLA for s in specs),
        free_props=free_props(g),
        quantified_props=quantified_props(g),
    )


def negate_prenex(f: Formula) -> Formula:
    """Prenex form of !f: kinds flipped, specs kept, matrix negated inward."""
    return Formula(f.prefix.dual(), negate(f.matrix))


def render(f: Formula) -> str:
    return f.render()
