import random
from functools import reduce

import pytest

from partlat import (
    DistanceKind,
    FuzzyPartition,
    GroundSetMismatchError,
    Instance,
    UnsupportedMetricError,
    bottom,
    brute_force_consensus,
    consensus,
    dispersion,
    fuzzy_consensus,
    meet,
    strong_patterns,
    top,
)
from helpers import part


def inst(*compacts):
    return Instance(tuple(part(c) for c in compacts))


class TestInstance:
    def test_requires_shared_ground_set(self):
        with pytest.raises(GroundSetMismatchError):
            Instance((bottom(3), bottom(4)))

    def test_requires_nonempty(self):
        with pytest.raises(ValueError):
            Instance(())

    def test_singleton_allowed_for_fuzzy_use(self):
        single = Instance((part("12|3"),))
        assert single.m == 1


class TestClosedFormConsensus:
    def test_two_atoms_meet_at_bottom(self):
        result = consensus(inst("12|3", "1|23"), DistanceKind.HD)
        assert result.partition == bottom(3)
        assert result.objective == 2

    def test_pairs_are_optimal_exhaustively(self, parts):
        from itertools import combinations_with_replacement

        meet_kinds = (DistanceKind.HD, DistanceKind.VI, DistanceKind.DELTA_LOGICAL)
        join_kinds = (DistanceKind.DELTA_RANK, DistanceKind.DELTA_COSIZE)
        for n in (2, 3, 4):
            for a, b in combinations_with_replacement(parts(n), 2):
                instance = Instance((a, b))
                for kind in meet_kinds + join_kinds:
                    got = consensus(instance, kind)
                    exact = brute_force_consensus(instance, kind)
                    assert got.objective == pytest.approx(exact.objective, abs=1e-9)
                    assert got.partition in exact.partitions

    def test_aggregate_can_lose_for_triples(self):
        # {top, top, bottom}: the meet scores 2 but top scores 1
        instance = Instance((top(2), top(2), bottom(2)))
        got = consensus(instance, DistanceKind.HD)
        exact = brute_force_consensus(instance, DistanceKind.HD)
        assert got.partition == bottom(2) and got.objective == 2
        assert exact.objective == 1 and exact.partitions == (top(2),)
        # and dually for the join-based family
        instance = Instance((bottom(2), bottom(2), top(2)))
        got = consensus(instance, DistanceKind.DELTA_RANK)
        exact = brute_force_consensus(instance, DistanceKind.DELTA_RANK)
        assert got.objective == 2 and exact.objective == 1

    def test_identical_instance(self):
        result = consensus(inst("12|34", "12|34"), DistanceKind.HD)
        assert result.partition == part("12|34")
        assert result.objective == 0

    def test_rank_join_consensus(self):
        result = consensus(inst("135|27|46", "1|23|47|56"), DistanceKind.DELTA_RANK)
        assert result.partition == top(7)
        assert result.objective == 5

    def test_mmd_rejected(self):
        with pytest.raises(UnsupportedMetricError):
            consensus(inst("12|3", "1|23"), DistanceKind.MMD)

    def test_relation_matrix_rejected(self):
        with pytest.raises(UnsupportedMetricError):
            consensus(inst("12|3", "1|23"), DistanceKind.RELATION_MATRIX)

    def test_single_partition_rejected(self):
        with pytest.raises(ValueError):
            consensus(Instance((part("12|3"),)), DistanceKind.HD)


class TestBruteForce:
    def test_two_atoms_full_argmin(self):
        result = brute_force_consensus(inst("12|3", "1|23"), DistanceKind.HD)
        assert set(result.partitions) == {bottom(3), part("12|3"), part("1|23")}
        assert result.objective == 2

    def test_repeated_partition(self):
        result = brute_force_consensus(inst("12|34", "12|34"), DistanceKind.VI)
        assert part("12|34") in result.partitions
        assert result.objective == pytest.approx(0.0, abs=1e-12)

    def test_cosize_instance_of_four(self):
        result = brute_force_consensus(
            inst("123|4", "1|2|34"), DistanceKind.DELTA_COSIZE
        )
        assert top(4) in result.partitions
        assert result.objective == 4

    def test_serves_mmd(self):
        # deleting the shared element reconciles either atom with the other
        result = brute_force_consensus(inst("12|3", "1|23"), DistanceKind.MMD)
        assert result.objective == 1

    def test_argmin_in_enumeration_order(self, parts):
        result = brute_force_consensus(inst("12|3", "1|23"), DistanceKind.HD)
        order = {p: i for i, p in enumerate(parts(3))}
        indices = [order[p] for p in result.partitions]
        assert indices == sorted(indices)


class TestDispersion:
    def test_zero_at_meet_of_atoms(self):
        instance = inst("12|3", "1|23")
        assert dispersion(bottom(3), instance) == 0

    def test_top_of_atom_instance(self):
        assert dispersion(top(3), inst("12|3", "1|23")) == 2

    def test_zero_on_identical_elements(self):
        assert dispersion(part("12|34"), inst("12|34", "12|34")) == 0

    def test_meet_minimises_for_pairs(self, parts):
        # for two-element instances the meet is a dispersion minimiser
        for n in (3, 4):
            ps = parts(n)
            for a in ps:
                for b in ps:
                    instance = Instance((a, b))
                    floor = dispersion(meet(a, b), instance)
                    assert floor == 0
                    for q in ps:
                        assert dispersion(q, instance) >= floor

    def test_meet_can_lose_for_triples(self):
        # {top, top, bottom}: the meet is bottom but top has less dispersion
        instance = Instance((top(2), top(2), bottom(2)))
        assert dispersion(bottom(2), instance) > dispersion(top(2), instance)

    def test_value_at_meet(self, parts):
        # at the meet every pair term is twice the pairwise-meet size gap
        rng = random.Random(19)
        ps = parts(5)
        for _ in range(100):
            chosen = tuple(rng.choice(ps) for _ in range(3))
            center = reduce(meet, chosen)
            expected = 0
            for a in range(3):
                for b in range(a + 1, 3):
                    expected += meet(chosen[a], chosen[b]).size - center.size
            expected = 2 * expected / (len(chosen) - 1)
            assert dispersion(center, Instance(chosen)) == pytest.approx(
                expected, abs=1e-12
            )


class TestFuzzyConsensus:
    def test_two_atoms(self):
        t = fuzzy_consensus(inst("12|3", "1|23"))
        assert t.coords == (0.5, 0.0, 0.5)

    def test_single_partition(self):
        t = fuzzy_consensus(Instance((part("12|3"),)))
        assert t.coords == (1.0, 0.0, 0.0)

    def test_top_and_atom(self):
        t = fuzzy_consensus(inst("123", "12|3"))
        assert t.coords == (1.0, 0.5, 0.5)

    def test_counts_are_integral(self):
        t = fuzzy_consensus(inst("123|4", "12|34", "1|2|34"))
        assert t.m == 3
        assert all(isinstance(c, int) for c in t.counts)

    def test_lies_in_hull(self):
        from partlat import decompose

        t = fuzzy_consensus(inst("123|4", "12|34", "1|2|34"))
        combo = decompose(FuzzyPartition(t.n, t.coords))
        assert combo.ok


class TestStrongPatterns:
    def test_single_certain_atom(self):
        t = fuzzy_consensus(inst("123", "12|3"))
        assert strong_patterns(t) == part("12|3")

    def test_no_certain_atom_gives_bottom(self):
        t = fuzzy_consensus(inst("12|3", "1|23"))
        assert strong_patterns(t) == bottom(3)

    def test_all_ones_gives_top(self):
        t = fuzzy_consensus(inst("123", "123"))
        assert strong_patterns(t) == top(3)

    def test_equals_instance_meet(self, parts):
        rng = random.Random(29)
        ps = parts(5)
        for _ in range(200):
            chosen = tuple(rng.choice(ps) for _ in range(rng.randint(1, 4)))
            got = strong_patterns(fuzzy_consensus(Instance(chosen)))
            assert got == reduce(meet, chosen)
