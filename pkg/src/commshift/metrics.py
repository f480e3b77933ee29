"""Partition quality measures: modularity Q and normalized mutual information."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import Graph, degree
from .partition import Partition


@dataclass(frozen=True)
class MetricValue:
    name: str
    value: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name == "nmi" and not -1e-9 <= self.value <= 1.0 + 1e-9:
            raise ValueError(f"nmi out of range: {self.value}")
        if self.name == "modularity" and not -1.0 - 1e-9 <= self.value <= 1.0 + 1e-9:
            raise ValueError(f"modularity out of range: {self.value}")


def modularity(g: Graph, p: Partition) -> float:
    """Weighted Newman-Girvan modularity.

    Q = sum_c [ w_c / m  -  (d_c / 2m)^2 ] with w_c the intra-community
    weight counted once, d_c the total degree of community c, and 2m the
    graph's total weight. A graph without edges yields 0 by convention.
    """
    if len(p) != g.node_count:
        raise ValueError(
            f"partition covers {len(p)} nodes but graph has {g.node_count}"
        )
    two_m = g.total_weight
    if two_m == 0.0:
        return 0.0
    labels = p.labels
    intra2 = [0.0] * p.community_count  # intra weight counted twice
    deg_sum = [0.0] * p.community_count
    for i in range(g.node_count):
        ci = labels[i]
        for j, w in g.adjacency[i]:
            if labels[j] == ci:
                intra2[ci] += w
        deg_sum[ci] += degree(g, i)
    q = 0.0
    for c in range(p.community_count):
        q += intra2[c] / two_m - (deg_sum[c] / two_m) ** 2
    return q


def _entropy(counts: list[int], n: int) -> float:
    h = 0.0
    for c in counts:
        if c > 0:
            pr = c / n
            h -= pr * math.log(pr)
    return h


def nmi(a: Partition, b: Partition) -> float:
    """Normalized mutual information, 2 I(A;B) / (H(A) + H(B)).

    Natural-log entropies over the joint label contingency table. If both
    partitions are trivial (single community) the value is 1; if exactly
    one is trivial it is 0.
    """
    if len(a) != len(b):
        raise ValueError(f"partitions cover {len(a)} vs {len(b)} nodes")
    n = len(a)
    if n == 0:
        raise ValueError("empty partitions")
    if a.labels == b.labels:
        # canonical labels make equal clusterings bitwise equal; I == H then,
        # so return exactly 1 instead of paying float round-off
        return 1.0

    joint: dict[tuple[int, int], int] = {}
    for la, lb in zip(a.labels, b.labels):
        joint[(la, lb)] = joint.get((la, lb), 0) + 1
    counts_a = list(a.sizes())
    counts_b = list(b.sizes())
    h_a = _entropy(counts_a, n)
    h_b = _entropy(counts_b, n)
    if h_a == 0.0 and h_b == 0.0:
        return 1.0
    if h_a == 0.0 or h_b == 0.0:
        return 0.0
    info = 0.0
    for (la, lb), c in joint.items():
        info += (c / n) * math.log(c * n / (counts_a[la] * counts_b[lb]))
    return 2.0 * info / (h_a + h_b)


def _set_partitions(n: int):
    """All set partitions of range(n) as canonical label lists."""
    labels = [0] * n

    def rec(i: int, used: int):
        if i == n:
            yield labels.copy()
            return
        for lab in range(used + 1):
            labels[i] = lab
            yield from rec(i + 1, used + 1 if lab == used else used)

    yield from rec(1, 1) if n > 0 else iter(())


def brute_force_best_modularity(g: Graph, max_nodes: int = 10) -> tuple[Partition, float]:
    """Exhaustive best-modularity partition, for use as a test oracle.

    Enumerates every set partition (Bell-number many), so the graph is
    capped at ``max_nodes`` nodes.
    """
    n = g.node_count
    if n > max_nodes:
        raise ValueError(f"graph too large for exhaustive search: {n} > {max_nodes}")
    if n == 0:
        raise ValueError("empty graph")
    edges = list(g.edges())
    degrees = [degree(g, i) for i in range(n)]
    two_m = g.total_weight
    if two_m == 0.0:
        return Partition.from_labels([0] * n), 0.0

    best_labels = [0] * n
    best_q = -math.inf
    for labels in _set_partitions(n):
        n_comm = max(labels) + 1
        intra = [0.0] * n_comm
        dsum = [0.0] * n_comm
        for u, v, w in edges:
            if labels[u] == labels[v]:
                intra[labels[u]] += w
        for i, lab in enumerate(labels):
            dsum[lab] += degrees[i]
        q = sum(2.0 * intra[c] / two_m - (dsum[c] / two_m) ** 2 for c in range(n_comm))
        if q > best_q:
            best_q = q
            best_labels = labels
    return Partition.from_labels(best_labels), best_q
