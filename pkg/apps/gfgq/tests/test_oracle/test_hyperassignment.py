"""
Tests for hyperassignment operators: dualization, partitions, extension and evolution.
"""

import pytest

from core.errors import DomainError, GuardExceededError
from core.models import AlternationFlag, EvolutionMode
from logic.formula import BEHAVIORAL, STRONGLY_BEHAVIORAL, Prefix, QuantSpec
from logic.parser import parse
from logic.prefix import canonize
from oracle.assignments import Assignment, AssignmentSpace
from oracle.hyperassignment import (
    Hyperassignment, dualize, dualize_minimal, equivalent, evolve, extend,
    indices, minimal, partitions, refines,
)
from tests.factories import random_hyperassignment, random_prefix


def family(*sets):
    return frozenset(sum(1 << i for i in s) for s in sets)


@pytest.fixture
def space() -> AssignmentSpace:
    return AssignmentSpace(("p",), 3)


class TestDualize:
    """Test literal and minimal dualization."""

    def test_choice_images(self, space):
        """Test the images of the four choice functions."""
        a = Hyperassignment(space, family({0, 1}, {2, 3}, {4}))
        d = dualize(a)
        assert d.family == family({0, 2, 4}, {0, 3, 4}, {1, 2, 4}, {1, 3, 4})

    def test_small_cases(self, space):
        """Test singleton fixed point and a single choice function."""
        assert dualize(Hyperassignment(space, family({0}))).family == family({0})
        assert dualize(Hyperassignment(space, family({0}, {1}))).family == family({0, 1})

    def test_involution(self, rng):
        """Test min(a) ⊆ dual(dual(a)) and a ≡ dual(dual(a))."""
        for i in range(201):
            a = random_hyperassignment(rng, ["p"], 1 + i % 3, max_sets=3, max_size=2)
            back = dualize(dualize(a))
            assert a.minimal().family <= back.family
            assert equivalent(a, back)

    def test_minimal_equivalent(self, rng):
        """Test minimal transversals are ≡ to the literal dual."""
        for i in range(201):
            a = random_hyperassignment(rng, ["p"], 1 + i % 3)
            literal, reduced = dualize(a), dualize_minimal(a)
            assert reduced.family <= literal.family
            assert equivalent(literal, reduced)

    def test_guard(self, space):
        """Test the choice-function bound."""
        a = Hyperassignment(space, family({0, 1}, {2, 3}, {4, 5}))
        with pytest.raises(GuardExceededError):
            dualize(a, guard=4)


class TestRefinement:
    """Test the ⊑ preorder and monotonicity of the operators."""

    def test_examples(self, space):
        """Test inclusion, superset sets and reflexivity."""
        a = Hyperassignment(space, family({0, 1}))
        b = Hyperassignment(space, family({0}))
        assert refines(a, b)
        assert not refines(b, a)
        assert refines(a, a)
        assert refines(a, Hyperassignment(space, family({0, 1}, {5})))

    def test_domain_mismatch(self, space):
        """Test different domains are not comparable."""
        other = AssignmentSpace(("q",), 3)
        with pytest.raises(DomainError):
            refines(Hyperassignment(space, family({0})), Hyperassignment(other, family({0})))

    def test_monotonicity(self, rng):
        """Test a1 ⊑ a2 implies dual(a2) ⊑ dual(a1) and ext(a1) ⊑ ext(a2)."""
        for i in range(201):
            a1 = random_hyperassignment(rng, ["p"], 1 + i % 3, max_size=2)
            extra = random_hyperassignment(rng, ["p"], a1.horizon, max_size=2)
            a2 = Hyperassignment(a1.space, a1.family | extra.family)
            assert refines(a1, a2)
            assert refines(dualize_minimal(a2), dualize_minimal(a1))
            assert refines(extend(a1, "q", BEHAVIORAL), extend(a2, "q", BEHAVIORAL))

    def test_minimal_equivalent(self, rng):
        """Test the ⊆-minimal part is ≡ to the family."""
        for _ in range(100):
            a = random_hyperassignment(rng, ["p"], 2, max_sets=4)
            assert equivalent(a, a.minimal())
            assert a.minimal().family == minimal(a.family)


class TestPartitions:
    """Test ordered splits."""

    @pytest.mark.parametrize("sets, expected", [(1, 2), (2, 4), (3, 8)])
    def test_counts(self, space, sets, expected):
        """Test 2^|a| disjoint covers."""
        a = Hyperassignment(space, family(*({i} for i in range(sets))))
        splits = partitions(a)
        assert len(splits) == expected
        for left, right in splits:
            lf = left.family if left else frozenset()
            rf = right.family if right else frozenset()
            assert lf | rf == a.family
            assert not lf & rf

    def test_guard(self, space):
        """Test the partition bound."""
        a = Hyperassignment(space, family(*({i} for i in range(5))))
        with pytest.raises(GuardExceededError):
            partitions(a, guard=4)


class TestExtend:
    """Test ext_σ."""

    def test_trivial_strongly_behavioral(self):
        """Test four singleton sets, one per valuation."""
        a = extend(Hyperassignment.trivial(2), "q", STRONGLY_BEHAVIORAL)
        assert len(a) == 4
        assert all(len(s) == 1 for s in a.sets())
        assert a.domain == frozenset({"q"})

    def test_delay_functor_present(self):
        """Test the set built by q(0)=true, q(t)=p(t-1)."""
        base = Hyperassignment.full(AssignmentSpace(("p",), 2))
        spec = QuantSpec(frozenset(), frozenset({"p"}))
        a = extend(base, "q", spec)

        expected = 0
        for chi in base.space.members:
            delayed = chi.extend("q", [True] + list(chi["p"][:-1]))
            expected |= 1 << a.space.index(delayed)
        assert expected in a.family

    def test_sizes_preserved(self, rng):
        """Test every extended set has its source's cardinality."""
        for _ in range(50):
            a = random_hyperassignment(rng, ["p"], 2)
            sizes = {len(list(indices(m))) for m in a.family}
            for mask in extend(a, "q", BEHAVIORAL).family:
                assert len(list(indices(mask))) in sizes

    def test_clash(self):
        """Test ap must be fresh."""
        a = Hyperassignment.full(AssignmentSpace(("p",), 2))
        with pytest.raises(DomainError):
            extend(a, "p", BEHAVIORAL)


class TestEvolve:
    """Test prefix evolution."""

    def test_universal_under_ea(self):
        """Test ev_EA(A p) over {{χ∅}} is {Asg(p)}."""
        prefix = parse("A p:B. p").prefix
        a = evolve(Hyperassignment.trivial(2), prefix, AlternationFlag.EA)
        assert a == Hyperassignment.full(AssignmentSpace(("p",), 2))

    def test_existential_under_ea(self):
        """Test ev_EA(E q) over {{χ∅}} is four singletons."""
        prefix = parse("E q:B. q").prefix
        a = evolve(Hyperassignment.trivial(2), prefix, AlternationFlag.EA)
        assert len(a) == 4
        assert all(len(s) == 1 for s in a.sets())

    def test_empty_prefix(self, rng):
        """Test evolving by ε is the identity."""
        a = random_hyperassignment(rng, ["p"], 2)
        for mode in EvolutionMode:
            assert evolve(a, Prefix(), AlternationFlag.AE, mode) == a

    def test_clash(self):
        """Test quantified props must be fresh."""
        a = Hyperassignment.full(AssignmentSpace(("p",), 2))
        with pytest.raises(DomainError):
            evolve(a, parse("E p. p").prefix, AlternationFlag.EA)

    def test_reduced_equivalent(self, rng):
        """Test reduced evolution is ≡ to literal evolution."""
        for _ in range(201):
            prefix = random_prefix(rng, ["p", "q"])
            alpha = AlternationFlag.EA if rng.random() < 0.5 else AlternationFlag.AE
            literal = evolve(Hyperassignment.trivial(1), prefix, alpha)
            reduced = evolve(Hyperassignment.trivial(1), prefix, alpha, reduce=True)
            assert equivalent(literal, reduced)

    @pytest.mark.slow
    def test_normal_evolution_equivalent(self, rng):
        """Test NEV ≡ EV, literal at h=1 and reduced at h=2."""
        for _ in range(201):
            prefix = random_prefix(rng, ["p", "q"])
            alpha = AlternationFlag.EA if rng.random() < 0.5 else AlternationFlag.AE
            nev = evolve(Hyperassignment.trivial(1), prefix, alpha, EvolutionMode.NEV)
            ev = evolve(Hyperassignment.trivial(1), prefix, alpha, EvolutionMode.EV)
            assert equivalent(nev, ev)

        for _ in range(201):
            prefix = random_prefix(rng, ["p", "q"], STRONGLY_BEHAVIORAL)
            alpha = AlternationFlag.EA if rng.random() < 0.5 else AlternationFlag.AE
            nev = evolve(Hyperassignment.trivial(2), prefix, alpha, EvolutionMode.NEV, reduce=True)
            ev = evolve(Hyperassignment.trivial(2), prefix, alpha, EvolutionMode.EV, reduce=True)
            assert equivalent(nev, ev)

    @pytest.mark.parametrize("text, max_horizon", [
        ("A q:S. q", 2), ("E q:S. q", 2), ("A q:B. q", 1), ("E q:B. q", 1),
    ])
    def test_normal_evolution_restriction(self, rng, text, max_horizon):
        """Test every NEV set restricts into the union of the source sets."""
        prefix = parse(text).prefix
        for i in range(51):
            a = random_hyperassignment(rng, ["p"], 1 + i % max_horizon, max_sets=2, max_size=2)
            union = 0
            for mask in a.family:
                union |= mask
            for alpha in AlternationFlag:
                out = evolve(a, prefix, alpha, EvolutionMode.NEV, reduce=True)
                for mask in out.family:
                    for j in indices(mask):
                        assert union >> out.space.project(j, ["p"], a.space) & 1

    @pytest.mark.parametrize("text", ["A q:B. q", "E q:B. q", "A q:S. q"])
    def test_monotone(self, rng, text):
        """Test evolution preserves ⊑."""
        prefix = parse(text).prefix
        for i in range(67):
            # singleton sets at h=2 keep the dualized extensions small
            h = 1 + i % 2
            size = 2 if h == 1 else 1
            a1 = random_hyperassignment(rng, ["p"], h, max_sets=2, max_size=size)
            extra = random_hyperassignment(rng, ["p"], h, max_sets=1, max_size=size)
            a2 = Hyperassignment(a1.space, a1.family | extra.family)
            for alpha in AlternationFlag:
                assert refines(
                    evolve(a1, prefix, alpha, reduce=True),
                    evolve(a2, prefix, alpha, reduce=True),
                )

    @pytest.mark.slow
    @pytest.mark.parametrize("horizon, props", [(1, ["p", "q", "r"]), (2, ["p", "q"])])
    def test_canonical_ordering(self, rng, horizon, props):
        """Test ev(C_dual) ⊑ ev(prefix) ⊑ ev(C_alpha) for behavioral prefixes."""
        for _ in range(101):
            prefix = random_prefix(rng, props)
            for alpha in AlternationFlag:
                start = Hyperassignment.trivial(horizon)
                low = evolve(start, canonize(prefix, alpha.dual), alpha, reduce=True)
                mid = evolve(start, prefix, alpha, reduce=True)
                high = evolve(start, canonize(prefix, alpha), alpha, reduce=True)
                assert refines(low, mid)
                assert refines(mid, high)


class TestDump:
    """Test the debug dump format."""

    def test_dump(self):
        """Test one set per line with `p=01,q=11` assignments."""
        a = Hyperassignment.of([[Assignment.parse("p=01,q=11"), Assignment.parse("p=00,q=11")]])
        assert a.dump() == "p=00,q=11 ; p=01,q=11"
        assert Hyperassignment.trivial(2).dump() == "-"

    def test_empty_rejected(self, space):
        """Test empty families and empty sets are rejected."""
        with pytest.raises(DomainError):
            Hyperassignment(space, frozenset())
        with pytest.raises(DomainError):
            Hyperassignment(space, frozenset({0}))
