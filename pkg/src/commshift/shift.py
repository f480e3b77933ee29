"""Shift-style clustering: the KNN similarity-sum variant and the classic
distance-matrix medoid shift it revises.

The KNN variant works directly on a graph's similarity structure: every
node starts as a medoid and repeatedly shifts to the member of its
neighborhood (itself plus its k nearest neighbors) with the largest
similarity sum. The shift target map is static, so the medoid set is just
iterated to a fixed set; cluster labels follow the shift chains to their
roots.

Classic medoid shift instead takes a dense symmetric distance matrix and a
kernel, and moves each point to the data point minimizing the kernel-
weighted sum of distances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import Graph
from .partition import Partition
from .paths import dijkstra_distances, edge_lengths
from .similarity import KnnTable, SimilarityMatrix


@dataclass(frozen=True)
class ShiftState:
    """Converged shift mapping.

    ``next_medoid[i]`` is the (static) shift target of node i; ``centers``
    are the fixed points; ``iteration_count`` is the number of medoid-set
    updates until the set stabilized. ``map_ops`` and ``iteration_ops``
    count candidate evaluations and per-iteration set work, for complexity
    checks.
    """

    next_medoid: tuple[int, ...]
    iteration_count: int
    centers: tuple[int, ...]
    map_ops: int
    iteration_ops: tuple[int, ...]


def _chase_roots(next_map, n: int) -> list[int]:
    """Root of each node's shift chain; cycles resolve to their min-id member."""
    roots = [-1] * n
    for start in range(n):
        x = start
        path: list[int] = []
        on_path: dict[int, int] = {}
        while True:
            if roots[x] != -1:
                root = roots[x]
                break
            nxt = next_map[x]
            if nxt == x:
                root = x
                break
            if x in on_path:
                root = min(path[on_path[x]:])
                break
            on_path[x] = len(path)
            path.append(x)
            x = nxt
        for node in path:
            roots[node] = root
        roots[start] = root
    return roots


def rms_cluster(sim: SimilarityMatrix, knn: KnnTable) -> tuple[ShiftState, Partition]:
    """Cluster by shifting every node to the highest-similarity-sum member
    of its KNN neighborhood.

    The shift target of node i is the member of {i} ∪ nn[i] with the
    largest similarity sum; ties break to the smallest node id. Under this
    rule (dl, -id) strictly increases along every non-trivial shift, so
    chains are acyclic and the medoid set stabilizes within |V| updates.
    Isolated nodes become singleton communities.
    """
    n = knn.node_count
    if sim.node_count != n:
        raise ValueError("similarity matrix and knn table disagree on node count")
    dl = knn.dl

    next_medoid = [0] * n
    map_ops = 0
    for i in range(n):
        best = i
        best_dl = dl[i]
        map_ops += 1
        for cand in knn.nn[i]:
            map_ops += 1
            if dl[cand] > best_dl or (dl[cand] == best_dl and cand < best):
                best = cand
                best_dl = dl[cand]
        next_medoid[i] = best

    medoids = set(range(n))
    iteration_ops: list[int] = []
    iterations = 0
    while True:
        iterations += 1
        if iterations > n + 1:  # unreachable by the strict-increase argument
            raise RuntimeError("medoid set failed to stabilize within the hard cap")
        image = {next_medoid[i] for i in medoids}
        iteration_ops.append(len(medoids))
        if image == medoids:
            break
        medoids = image

    state = ShiftState(
        next_medoid=tuple(next_medoid),
        iteration_count=iterations,
        centers=tuple(sorted(medoids)),
        map_ops=map_ops,
        iteration_ops=tuple(iteration_ops),
    )
    labels = _chase_roots(next_medoid, n)
    return state, Partition.from_labels(labels)


def exp_kernel(d):
    """Default shift kernel, exp(-d/2)."""
    return np.exp(-np.asarray(d, dtype=float) / 2.0)


def validate_distance_matrix(d) -> np.ndarray:
    """Check a dense distance matrix: square, symmetric, zero diagonal,
    no negative entries. Returns a float ndarray."""
    m = np.asarray(d, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {m.shape}")
    if not np.array_equal(m, m.T):
        raise ValueError("distance matrix must be symmetric")
    if np.any(np.diagonal(m) != 0.0):
        raise ValueError("distance matrix diagonal must be zero")
    if np.any(m < 0.0):
        raise ValueError("distance matrix entries must be non-negative")
    return m


def shift_targets(d, phi: Callable | None = None) -> np.ndarray:
    """Next-point map of classic medoid shift.

    For each point i the target is argmin_j sum_k D(j,k) * phi(D(i,k)),
    ties resolved to the smallest j.
    """
    m = validate_distance_matrix(d)
    kernel = exp_kernel if phi is None else phi
    try:
        weights = np.asarray(kernel(m), dtype=float)
        if weights.shape != m.shape:
            raise TypeError
    except TypeError:  # scalar-only kernels
        weights = np.vectorize(kernel)(m).astype(float)
    scores = weights @ m  # scores[i, j] = sum_k phi(D(i,k)) D(k,j); D symmetric
    return scores.argmin(axis=1)  # argmin takes the first (smallest) index on ties


def medoid_shift(d, phi: Callable | None = None) -> Partition:
    """Cluster a distance matrix by iterating the medoid shift map to its
    roots and grouping points by root."""
    targets = shift_targets(d, phi)
    roots = _chase_roots(targets.tolist(), len(targets))
    return Partition.from_labels(roots)


def graph_to_distance(g: Graph) -> np.ndarray:
    """All-pairs shortest-path distances with edge length 1/weight.

    Disconnected pairs get a finite sentinel of twice the largest finite
    distance (1.0 if the graph has no finite off-diagonal distance at all),
    so the result is a valid dense distance matrix.
    """
    n = g.node_count
    lengths = edge_lengths(g)
    dist = np.zeros((n, n))
    for s in range(n):
        dist[s] = dijkstra_distances(lengths, s)
    unreachable = np.isinf(dist)
    if unreachable.any():
        finite = dist[~unreachable]
        max_finite = float(finite.max()) if finite.size else 0.0
        sentinel = 2.0 * max_finite if max_finite > 0.0 else 1.0
        dist[unreachable] = sentinel
    np.fill_diagonal(dist, 0.0)
    # per-source float summation orders can differ by ulps; force exact symmetry
    return np.minimum(dist, dist.T)
