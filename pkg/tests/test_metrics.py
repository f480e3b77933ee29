from __future__ import annotations

import pytest

from commshift import (
    Partition,
    brute_force_best_modularity,
    build_graph,
    modularity,
    nmi,
)

from .conftest import random_graph
from .oracles import (
    all_partitions,
    best_modularity_exhaustive,
    graph_to_dense,
    modularity_double_sum,
)


def random_partition(rng, n):
    return Partition.from_labels(rng.integers(0, max(1, n), size=n).tolist())


class TestModularity:
    def test_all_in_one_is_zero(self, rng):
        for _ in range(20):
            g = random_graph(rng, weighted=True)
            p = Partition.from_labels([0] * g.node_count)
            assert modularity(g, p) == pytest.approx(0.0, abs=1e-12)

    def test_triangle_singletons(self, triangle):
        p = Partition.singletons(3)
        assert modularity(triangle, p) == pytest.approx(-1.0 / 3.0, abs=1e-12)

    def test_barbell_two_triangles(self, barbell):
        p = Partition.from_labels([0, 0, 0, 1, 1, 1])
        assert modularity(barbell, p) == pytest.approx(5.0 / 14.0, abs=1e-12)

    def test_matches_double_sum_definition(self, rng):
        for _ in range(60):
            g = random_graph(rng, weighted=bool(rng.integers(2)))
            p = random_partition(rng, g.node_count)
            expected = modularity_double_sum(graph_to_dense(g), list(p.labels))
            assert modularity(g, p) == pytest.approx(expected, abs=1e-12)

    def test_relabel_and_node_order_invariance(self, rng):
        g = random_graph(rng, n=7, weighted=True)
        labels = [0, 1, 0, 2, 1, 0, 2]
        q1 = modularity(g, Partition.from_labels(labels))
        q2 = modularity(g, Partition.from_labels([{0: 5, 1: 9, 2: 7}[l] for l in labels]))
        assert q1 == q2

    def test_weight_scaling_invariance(self, rng):
        for _ in range(10):
            g = random_graph(rng, weighted=True)
            scaled = build_graph(
                [
                    (g.node_names[u], g.node_names[v], 3.7 * w)
                    for u, v, w in g.edges()
                ]
                + [(name, name, 1.0) for name in g.node_names]
            )
            p = random_partition(rng, g.node_count)
            assert abs(modularity(g, p) - modularity(scaled, p)) <= 1e-10

    def test_zero_edge_graph_is_zero(self):
        g = build_graph([("a", "a"), ("b", "b"), ("c", "c")])
        assert modularity(g, Partition.singletons(3)) == 0.0

    def test_label_length_mismatch(self, triangle):
        with pytest.raises(ValueError, match="covers"):
            modularity(triangle, Partition.singletons(2))


class TestNmi:
    def test_identical_partitions(self):
        p = Partition.from_labels([0, 0, 1, 1, 2])
        assert nmi(p, p) == 1.0

    def test_orthogonal_four_nodes(self):
        a = Partition.from_labels([0, 0, 1, 1])
        b = Partition.from_labels([0, 1, 0, 1])
        assert nmi(a, b) == pytest.approx(0.0, abs=1e-12)

    def test_three_one_vs_two_two(self):
        a = Partition.from_labels([0, 0, 0, 1])
        b = Partition.from_labels([0, 0, 1, 1])
        assert nmi(a, b) == pytest.approx(0.3437110184854508, abs=1e-9)

    def test_both_trivial(self):
        a = Partition.from_labels([0, 0, 0])
        assert nmi(a, a) == 1.0

    def test_one_trivial(self):
        a = Partition.from_labels([0, 0, 0])
        b = Partition.from_labels([0, 1, 2])
        assert nmi(a, b) == 0.0
        assert nmi(b, a) == 0.0

    def test_symmetry_exact(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 40))
            a = random_partition(rng, n)
            b = random_partition(rng, n)
            assert nmi(a, b) == nmi(b, a)

    def test_range_fuzz(self, rng):
        for _ in range(1000):
            n = int(rng.integers(1, 30))
            a = random_partition(rng, n)
            b = random_partition(rng, n)
            value = nmi(a, b)
            assert -1e-12 <= value <= 1.0 + 1e-12

    def test_node_count_mismatch(self):
        with pytest.raises(ValueError):
            nmi(Partition.singletons(3), Partition.singletons(4))


class TestBruteForceBestModularity:
    def test_barbell_optimum(self, barbell):
        part, q = brute_force_best_modularity(barbell)
        assert q == pytest.approx(5.0 / 14.0, abs=1e-12)
        assert part.as_sets() == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}

    def test_single_edge(self):
        g = build_graph([("a", "b")])
        part, q = brute_force_best_modularity(g)
        assert q == pytest.approx(0.0, abs=1e-12)
        assert part.community_count == 1

    def test_empty_edge_graph(self):
        g = build_graph([("a", "a"), ("b", "b"), ("c", "c")])
        part, q = brute_force_best_modularity(g)
        assert q == 0.0

    def test_too_large_rejected(self, rng):
        g = random_graph(rng, n=11)
        with pytest.raises(ValueError, match="too large"):
            brute_force_best_modularity(g)

    def test_matches_independent_enumeration(self, rng):
        for _ in range(10):
            g = random_graph(rng, max_n=6, weighted=True)
            _, q = brute_force_best_modularity(g)
            assert q == pytest.approx(best_modularity_exhaustive(g), abs=1e-12)

    def test_enumeration_counts_are_bell_numbers(self):
        bell = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52}
        for n, expected in bell.items():
            assert sum(1 for _ in all_partitions(n)) == expected
