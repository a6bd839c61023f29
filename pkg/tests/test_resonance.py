import itertools

import pytest

from sexpand.errors import NotReducible, NotResonant
from sexpand.expansion import s_expand
from sexpand.multialgebra import (
    SubspaceSplit,
    check_gji,
    check_reduction_condition,
)
from sexpand.resonance import (
    ReductionPartition,
    SemigroupDecomposition,
    SubspaceDecomposition,
    check_reduction_partition,
    check_resonance,
    closure_sets,
    reduce_resonant,
    resonant_subalgebra,
    search_resonant,
)
from sexpand.semigroup import validate

from conftest import algebra


def expected_restricted_entries(base, s, d, slot_sets, keep):
    """Oracle: selector-times-constant entries over restricted element sets.

    slot_sets maps part label -> allowed elements per bracket slot; keep maps
    part label -> elements allowed as targets.  Returns {(pairs, pair): value}
    keyed by (generator, element) tuples, independent of any library indexing.
    """
    part_of = d.part_of(base.dim)
    out = {}
    for lower, upper, value in base.tensor.items():
        pools = [sorted(slot_sets[part_of[g]]) for g in lower]
        for alphas in itertools.product(*pools):
            gamma = s.fold(alphas)
            if gamma not in keep[part_of[upper]]:
                continue
            key = (tuple(zip(lower, alphas)), (upper, gamma))
            out[key] = value
    return out


def local_entries(r):
    """The library result rephrased in (generator, element) pair terms."""
    out = {}
    for lower, upper, value in r.algebra.tensor.items():
        out[(tuple(r.pairs[i] for i in lower), r.pairs[upper])] = value
    return out


class TestClosureSets:
    def test_abelian_has_empty_map(self):
        a = algebra(3, 2, [])
        d = SubspaceDecomposition({"0": {0, 1, 2}})
        assert closure_sets(a, d).i_map == {}

    def test_single_part_whole_algebra(self, so3):
        d = SubspaceDecomposition({"0": {0, 1, 2}})
        cs = closure_sets(so3, d)
        assert cs.i_map == {("0", "0"): frozenset({"0"})}

    def test_symmetric_pair_structure(self, so4, so4_decomposition):
        cs = closure_sets(so4, so4_decomposition)
        assert cs.i_map == {
            ("0", "0"): frozenset({"0"}),
            ("0", "1"): frozenset({"1"}),
            ("1", "1"): frozenset({"0"}),
        }

    def test_decomposition_must_cover(self, so3):
        d = SubspaceDecomposition({"0": {0, 1}})
        with pytest.raises(ValueError, match="misses"):
            closure_sets(so3, d)

    def test_parts_must_be_disjoint(self):
        with pytest.raises(ValueError, match="overlap"):
            SubspaceDecomposition({"0": {0, 1}, "1": {1, 2}})


class TestCheckResonance:
    def test_se2_resonant_subsets(self, so4, so4_decomposition, so4_resonant_subsets, se2):
        cs = closure_sets(so4, so4_decomposition)
        assert check_resonance(se2, so4_resonant_subsets, cs).ok

    def test_singleton_subsets_fail(self, so4, so4_decomposition, se2):
        cs = closure_sets(so4, so4_decomposition)
        sd = SemigroupDecomposition({"0": {0}, "1": {1}})
        result = check_resonance(se2, sd, cs)
        assert not result.ok
        # l1 * l1 = l2 must be in S_0 but is not
        assert (("1", "1"), (1, 1), 2, "0") in result.witnesses

    def test_truncated_subsets_fail_on_cross_products(
        self, so4, so4_decomposition, se2
    ):
        cs = closure_sets(so4, so4_decomposition)
        sd = SemigroupDecomposition({"0": {0, 2, 3}, "1": {1}})
        result = check_resonance(se2, sd, cs)
        assert not result.ok
        # l2 * l1 = l3 must be in S_1 but is not
        assert (("0", "1"), (2, 1), 3, "1") in result.witnesses

    def test_empty_closure_is_vacuous(self, se2):
        from sexpand.resonance import ClosureStructure

        cs = ClosureStructure(("0",), {})
        sd = SemigroupDecomposition({"0": {0, 1, 2, 3}})
        assert check_resonance(se2, sd, cs).ok

    def test_covers_reports_truth(self, so4_resonant_subsets):
        assert so4_resonant_subsets.covers(4)
        assert not SemigroupDecomposition({"0": {0, 2}, "1": {1}}).covers(4)


class TestResonantSubalgebra:
    def test_dimension_and_gji(self, so4, so4_decomposition, so4_resonant_subsets, se2):
        r = resonant_subalgebra(so4, se2, so4_decomposition, so4_resonant_subsets)
        assert r.dim == 3 * 3 + 2 * 3
        assert check_gji(r.algebra).ok

    def test_entries_match_formula_oracle(
        self, so4, so4_decomposition, so4_resonant_subsets, se2
    ):
        r = resonant_subalgebra(so4, se2, so4_decomposition, so4_resonant_subsets)
        slot = {p: so4_resonant_subsets.subsets[p] for p in ("0", "1")}
        expected = expected_restricted_entries(so4, se2, so4_decomposition, slot, slot)
        assert local_entries(r) == expected

    def test_closes_inside_ambient_expansion(
        self, so4, so4_decomposition, so4_resonant_subsets, se2
    ):
        r = resonant_subalgebra(so4, se2, so4_decomposition, so4_resonant_subsets)
        full = s_expand(so4, se2)
        members = {r.pairing.encode(g, alpha) for g, alpha in r.pairs}
        flat_of = {i: r.pairing.encode(g, a) for i, (g, a) in enumerate(r.pairs)}
        for pair in itertools.combinations(sorted(members), 2):
            coeffs = full.algebra.bracket(pair)
            for flat, value in enumerate(coeffs):
                if value:
                    assert flat in members
        # and the restricted tensor agrees with the ambient one entrywise
        for lower, upper, value in r.algebra.tensor.items():
            ambient_lower = tuple(flat_of[i] for i in lower)
            assert full.algebra.tensor.get(ambient_lower, flat_of[upper]) == value

    def test_single_part_with_full_subset_recovers_expansion(self, so3, se2):
        d = SubspaceDecomposition({"0": {0, 1, 2}})
        sd = SemigroupDecomposition({"0": {0, 1, 2, 3}})
        r = resonant_subalgebra(so3, se2, d, sd)
        full = s_expand(so3, se2)
        assert r.algebra == full.algebra

    def test_abelian_base(self, se2):
        a = algebra(2, 2, [])
        d = SubspaceDecomposition({"0": {0}, "1": {1}})
        sd = SemigroupDecomposition({"0": {0, 2, 3}, "1": {1, 3}})
        r = resonant_subalgebra(a, se2, d, sd)
        assert r.algebra.tensor.nonzero_count == 0

    def test_not_resonant_raises(self, so4, so4_decomposition, se2):
        sd = SemigroupDecomposition({"0": {0, 2, 3}, "1": {1}})
        with pytest.raises(NotResonant):
            resonant_subalgebra(so4, se2, so4_decomposition, sd)

    def test_induced_closure_contained_in_base(
        self, so4, so4_decomposition, so4_resonant_subsets, se2
    ):
        r = resonant_subalgebra(so4, se2, so4_decomposition, so4_resonant_subsets)
        part_of = so4_decomposition.part_of(so4.dim)
        induced = SubspaceDecomposition(
            {
                p: {i for i, (g, _) in enumerate(r.pairs) if part_of[g] == p}
                for p in ("0", "1")
            }
        )
        base_cs = closure_sets(so4, so4_decomposition)
        sub_cs = closure_sets(r.algebra, induced)
        for key, targets in sub_cs.i_map.items():
            assert targets <= base_cs.i_map[key]


class TestReductionPartition:
    def test_zero_element_hat_is_valid(
        self, so4, so4_decomposition, so4_resonant_subsets, se2
    ):
        cs = closure_sets(so4, so4_decomposition)
        rp = ReductionPartition.from_hat(
            so4_resonant_subsets, {"0": {3}, "1": {3}}
        )
        assert check_reduction_partition(se2, rp, cs).ok

    def test_identity_hat_fails(self, so4, so4_decomposition, so4_resonant_subsets, se2):
        cs = closure_sets(so4, so4_decomposition)
        rp = ReductionPartition.from_hat(
            so4_resonant_subsets, {"0": {0}, "1": {3}}
        )
        result = check_reduction_partition(se2, rp, cs)
        assert not result.ok
        # hat l0 against check l1 lands on l1, missing from the hat of part 1
        assert (("0", "1"), "0", (0, 1), 1, "1") in result.witnesses

    def test_empty_hats_vacuously_ok(
        self, so4, so4_decomposition, so4_resonant_subsets, se2
    ):
        cs = closure_sets(so4, so4_decomposition)
        rp = ReductionPartition.from_hat(so4_resonant_subsets, {})
        assert check_reduction_partition(se2, rp, cs).ok

    def test_hat_must_be_inside_subset(self, so4_resonant_subsets):
        with pytest.raises(ValueError, match="not inside"):
            ReductionPartition.from_hat(so4_resonant_subsets, {"1": {0}})

    def test_overlap_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            ReductionPartition({"0": {1}}, {"0": {1, 2}})


class TestReduceResonant:
    @pytest.fixture
    def resonant(self, so4, so4_decomposition, so4_resonant_subsets, se2):
        return resonant_subalgebra(so4, se2, so4_decomposition, so4_resonant_subsets)

    def test_zero_hat_dimension_and_gji(self, resonant, so4_resonant_subsets, se2):
        rp = ReductionPartition.from_hat(so4_resonant_subsets, {"0": {3}, "1": {3}})
        reduced = reduce_resonant(resonant, rp)
        assert reduced.dim == 2 * 3 + 1 * 3
        assert check_gji(reduced.algebra).ok

    def test_entries_match_formula_oracle(
        self, resonant, so4, so4_decomposition, so4_resonant_subsets, se2
    ):
        rp = ReductionPartition.from_hat(so4_resonant_subsets, {"0": {3}, "1": {3}})
        reduced = reduce_resonant(resonant, rp)
        checks = {"0": frozenset({0, 2}), "1": frozenset({1})}
        expected = expected_restricted_entries(
            so4, se2, so4_decomposition, checks, checks
        )
        assert local_entries(reduced) == expected

    def test_empty_hat_is_identity(self, resonant, so4_resonant_subsets, se2):
        rp = ReductionPartition.from_hat(so4_resonant_subsets, {})
        reduced = reduce_resonant(resonant, rp)
        assert reduced.algebra == resonant.algebra
        assert reduced.pairs == resonant.pairs

    def test_split_satisfies_reduction_condition(
        self, resonant, so4_decomposition, so4_resonant_subsets, se2
    ):
        rp = ReductionPartition.from_hat(so4_resonant_subsets, {"0": {3}, "1": {3}})
        part_of = so4_decomposition.part_of(6)
        keep = frozenset(
            i
            for i, (g, alpha) in enumerate(resonant.pairs)
            if alpha in rp.check[part_of[g]]
        )
        split = SubspaceSplit(keep, resonant.dim)
        assert check_reduction_condition(resonant.algebra, split).ok

    def test_invalid_partition_raises(self, resonant, so4_resonant_subsets, se2):
        rp = ReductionPartition.from_hat(so4_resonant_subsets, {"0": {0}, "1": {3}})
        with pytest.raises(NotReducible):
            reduce_resonant(resonant, rp)


class TestSearchResonant:
    def test_finds_the_expected_decomposition(self, so4, so4_decomposition, se2):
        cs = closure_sets(so4, so4_decomposition)
        found = search_resonant(se2, cs)
        assert found.complete
        target = SemigroupDecomposition({"0": {0, 2, 3}, "1": {1, 3}})
        assert target in found.decompositions
        # everything returned really is resonant and covers S
        for sd in found.decompositions:
            assert sd.covers(se2.order)
            assert check_resonance(se2, sd, cs).ok

    def test_trivial_semigroup(self):
        from sexpand.resonance import ClosureStructure

        s = validate(["e"], [[0]])
        cs = ClosureStructure(("0", "1"), {("0", "1"): frozenset({"0"})})
        found = search_resonant(s, cs)
        assert SemigroupDecomposition({"0": {0}, "1": {0}}) in found.decompositions

    def test_z2_self_product_constraint(self):
        from sexpand.resonance import ClosureStructure

        z2 = validate(["e", "a"], [[0, 1], [1, 0]])
        cs = ClosureStructure(("0", "1"), {("1", "1"): frozenset({"0"})})
        found = search_resonant(z2, cs)
        assert SemigroupDecomposition({"0": {0}, "1": {1}}) in found.decompositions

    def test_budget_flags_incomplete(self, so4, so4_decomposition, se2):
        cs = closure_sets(so4, so4_decomposition)
        limited = search_resonant(se2, cs, max_results=1)
        assert len(limited.decompositions) == 1
        assert not limited.complete
        node_limited = search_resonant(se2, cs, max_nodes=3)
        assert not node_limited.complete

    def test_search_is_deterministic(self, so4, so4_decomposition, se2):
        cs = closure_sets(so4, so4_decomposition)
        a = search_resonant(se2, cs)
        b = search_resonant(se2, cs)
        assert a.decompositions == b.decompositions

    def test_every_result_builds_and_closes(self, so4, so4_decomposition, se2):
        cs = closure_sets(so4, so4_decomposition)
        found = search_resonant(se2, cs)
        full = s_expand(so4, se2)
        part_of = so4_decomposition.part_of(6)
        for sd in found.decompositions[:10]:
            r = resonant_subalgebra(so4, se2, so4_decomposition, sd)
            members = {r.pairing.encode(g, a) for g, a in r.pairs}
            for pair in itertools.combinations(sorted(members), 2):
                for flat, value in enumerate(full.algebra.bracket(pair)):
                    if value:
                        assert flat in members
