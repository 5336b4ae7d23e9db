"""
Canonical forms of behavioral quantifier prefixes.

C_EA moves every existential in front of every universal and compensates each
swap by making the universal strongly behavioral on the existentials it jumped
over; C_AE is the dual. `round_order` goes the other way: it recovers the
intra-round play order from a prefix whose specs are all of the form B ∪ S<Z>.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx

from core.errors import UnsupportedFragmentError
from core.models import AlternationFlag, QuantifierKind
from logic.formula import BEHAVIORAL, Prefix, Quantifier, strict_on

logger = logging.getLogger(__name__)

Block = Tuple[Quantifier, ...]


@dataclass(frozen=True)
class BlockDecomposition:
    """
    ℘ = leading · (first_i · second_i)_{i=1..k} · trailing.

    For target EA the leading and second blocks are existential and the first
    and trailing blocks universal; for AE the other way round. Only the leading
    and trailing blocks may be empty.
    """
    target: AlternationFlag
    leading: Block
    pairs: Tuple[Tuple[Block, Block], ...]
    trailing: Block

    @property
    def k(self) -> int:
        return len(self.pairs)

    def blocks(self) -> List[Block]:
        out = [self.leading]
        for first, second in self.pairs:
            out.extend([first, second])
        out.append(self.trailing)
        return out

    def flatten(self) -> Prefix:
        return Prefix(tuple(q for block in self.blocks() for q in block))


def _coherent_kind(target: AlternationFlag) -> QuantifierKind:
    return QuantifierKind.EXISTS if target is AlternationFlag.EA else QuantifierKind.FORALL


def _runs(prefix: Prefix) -> List[Block]:
    runs: List[List[Quantifier]] = []
    for q in prefix:
        if runs and runs[-1][0].kind is q.kind:
            runs[-1].append(q)
        else:
            runs.append([q])
    return [tuple(r) for r in runs]


def decompose(prefix: Prefix, target: AlternationFlag) -> BlockDecomposition:
    """Split `prefix` into the alternating blocks used by C_target."""
    leading_kind = _coherent_kind(target)
    runs = _runs(prefix)
    leading: Block = ()
    if runs and runs[0][0].kind is leading_kind:
        leading = runs.pop(0)
    trailing: Block = ()
    if runs and runs[-1][0].kind is not leading_kind:
        trailing = runs.pop()
    pairs = tuple((runs[i], runs[i + 1]) for i in range(0, len(runs), 2))
    return BlockDecomposition(target, leading, pairs, trailing)


def canonize(prefix: Prefix, target: AlternationFlag) -> Prefix:
    """
    Canonical form C_target of a behavioral prefix.

    Coherent quantifiers keep spec B and come first in their original order;
    the j-th quantifier of the i-th incoherent block gets B ∪ S<props of the
    coherent blocks i..k>.

    Raises:
        UnsupportedFragmentError: some spec differs from B
    """
    if not prefix.is_behavioral():
        raise UnsupportedFragmentError("canonical forms are defined for behavioral prefixes only")
    d = decompose(prefix, target)
    coherent: List[Quantifier] = list(d.leading)
    incoherent: List[Quantifier] = []
    for i, (first, _) in enumerate(d.pairs):
        later = [q.prop for _, second in d.pairs[i:] for q in second]
        incoherent.extend(q.with_spec(strict_on(later)) for q in first)
    for _, second in d.pairs:
        coherent.extend(second)
    incoherent.extend(q.with_spec(BEHAVIORAL) for q in d.trailing)
    result = Prefix(tuple(coherent) + tuple(incoherent))
    logger.debug(f"C_{target.value} reduced {prefix.alternations} alternations to {result.alternations}")
    return result


def dual_prefix(prefix: Prefix) -> Prefix:
    """Flip every quantifier kind, keep the specs."""
    return prefix.dual()


def round_order(prefix: Prefix) -> Prefix:
    """
    Behavioral prefix listing the quantifiers in intra-round play order.

    Each quantifier must be played after the earlier-declared props it reads
    behaviorally and before those it reads strictly in the past. Requires every
    spec, restricted to earlier props, to be B ∪ S<Z>; the ordering constraints
    then form a tournament, which is orderable iff acyclic.

    Raises:
        UnsupportedFragmentError: a quantifier reads an earlier prop without
            behavioral restriction, or the constraints are cyclic
    """
    position = {q.prop: i for i, q in enumerate(prefix)}
    g = nx.DiGraph()
    g.add_nodes_from(position)
    for i, q in enumerate(prefix):
        unrestricted, behavioral, strict = q.spec.split(prefix.props[:i])
        if unrestricted:
            raise UnsupportedFragmentError(
                f"quantifier on '{q.prop}' is not behavioral in {sorted(unrestricted)}"
            )
        g.add_edges_from((w, q.prop) for w in behavioral)
        g.add_edges_from((q.prop, z) for z in strict)
    if not nx.is_directed_acyclic_graph(g):
        raise UnsupportedFragmentError("quantifier specifications admit no round order")
    order = list(nx.lexicographical_topological_sort(g, key=position.__getitem__))
    by_prop = {q.prop: q for q in prefix}
    return Prefix(tuple(by_prop[p].with_spec(BEHAVIORAL) for p in order))
