"""Classical community-detection baselines.

All four methods are deterministic for a fixed seed: random choices go
through explicitly seeded generators and every tie has a documented
deterministic rule.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .graph import Graph, degree
from .metrics import modularity
from .partition import Partition
from .paths import dijkstra_shortest_path_dag, edge_lengths


# ---------------------------------------------------------------------------
# Louvain
# ---------------------------------------------------------------------------

def louvain(g: Graph, resolution: float = 1.0, seed: int = 0) -> Partition:
    """Two-phase modularity optimization.

    Local node moves maximize the modularity gain (the resolution factor
    multiplies the null-model term); the graph is then aggregated by
    community and the process repeats until no move improves modularity.
    Node visit order is shuffled by the seed at every level.
    """
    if g.node_count == 0:
        raise ValueError("empty graph")
    if resolution <= 0:
        raise ValueError(f"resolution must be positive, got {resolution}")
    rng = random.Random(seed)
    two_m = g.total_weight
    if two_m == 0.0:
        return Partition.singletons(g.node_count)

    # working multigraph: symmetric adjacency dicts plus self-loop degree share
    adj: list[dict[int, float]] = [dict(row) for row in g.adjacency]
    self_deg = [0.0] * g.node_count  # self-loop contribution to a node's degree
    membership = list(range(g.node_count))  # original node -> current community

    while True:
        n = len(adj)
        deg_tot = [sum(row.values()) + self_deg[i] for i, row in enumerate(adj)]
        node_com = list(range(n))
        com_tot = deg_tot.copy()
        order = list(range(n))
        rng.shuffle(order)

        moved_any = False
        improved = True
        while improved:
            improved = False
            for i in order:
                ci = node_com[i]
                ki = deg_tot[i]
                com_tot[ci] -= ki
                link: dict[int, float] = {}
                for j, w in adj[i].items():
                    link[node_com[j]] = link.get(node_com[j], 0.0) + w
                best_com = ci
                best_gain = link.get(ci, 0.0) - resolution * ki * com_tot[ci] / two_m
                for com in sorted(link):
                    if com == ci:
                        continue
                    gain = link[com] - resolution * ki * com_tot[com] / two_m
                    if gain > best_gain + 1e-12:
                        best_gain = gain
                        best_com = com
                com_tot[best_com] += ki
                node_com[i] = best_com
                if best_com != ci:
                    improved = True
                    moved_any = True

        if not moved_any:
            break

        # aggregate communities into a coarser multigraph
        remap: dict[int, int] = {}
        for i in range(n):
            remap.setdefault(node_com[i], len(remap))
        n_new = len(remap)
        new_adj: list[dict[int, float]] = [{} for _ in range(n_new)]
        new_self = [0.0] * n_new
        for i in range(n):
            ci = remap[node_com[i]]
            new_self[ci] += self_deg[i]
            for j, w in adj[i].items():
                cj = remap[node_com[j]]
                if ci == cj:
                    new_self[ci] += w  # both endpoints counted over i and j
                else:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
        for node in range(g.node_count):
            membership[node] = remap[node_com[membership[node]]]
        adj = new_adj
        self_deg = new_self

    return Partition.from_labels(membership)


# ---------------------------------------------------------------------------
# Label propagation
# ---------------------------------------------------------------------------

def label_propagation(
    g: Graph, seed: int = 0, max_sweeps: int = 100
) -> tuple[Partition, bool]:
    """Asynchronous label propagation.

    Nodes start with unique labels and repeatedly adopt the label carrying
    the maximum total incident edge weight among their neighbors; a node
    whose current label is already maximal keeps it, other ties are broken
    uniformly at random by the seed. Returns the partition and a flag that
    is False only when the sweep cap was hit before stabilizing.
    """
    if g.node_count == 0:
        raise ValueError("empty graph")
    if max_sweeps < 1:
        raise ValueError(f"max_sweeps must be >= 1, got {max_sweeps}")
    rng = random.Random(seed)
    labels = list(range(g.node_count))
    converged = False
    for _ in range(max_sweeps):
        order = list(range(g.node_count))
        rng.shuffle(order)
        changed = False
        for i in order:
            if not g.adjacency[i]:
                continue
            weight_by_label: dict[int, float] = {}
            for j, w in g.adjacency[i]:
                lab = labels[j]
                weight_by_label[lab] = weight_by_label.get(lab, 0.0) + w
            top = max(weight_by_label.values())
            winners = sorted(lab for lab, w in weight_by_label.items() if w == top)
            if labels[i] in winners:
                continue
            labels[i] = winners[rng.randrange(len(winners))]
            changed = True
        if not changed:
            converged = True
            break
    return Partition.from_labels(labels), converged


# ---------------------------------------------------------------------------
# Girvan-Newman
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DendrogramStep:
    removed_edge: tuple[int, int]
    partition: Partition
    modularity: float


@dataclass(frozen=True)
class Dendrogram:
    steps: tuple[DendrogramStep, ...]


def edge_betweenness(g: Graph, use_weights: bool = True) -> dict[tuple[int, int], float]:
    """Shortest-path edge betweenness over unordered node pairs.

    Paths use length 1/weight (or unit lengths when ``use_weights`` is
    False); pairs joined by several equal-length shortest paths split
    their contribution fractionally (Brandes accumulation).
    """
    lengths = edge_lengths(g, use_weights)
    return _edge_betweenness_rows(lengths)


def _edge_betweenness_rows(
    lengths: list[list[tuple[int, float]]]
) -> dict[tuple[int, int], float]:
    n = len(lengths)
    scores: dict[tuple[int, int], float] = {}
    for u, row in enumerate(lengths):
        for v, _ in row:
            if u < v:
                scores[(u, v)] = 0.0
    for s in range(n):
        order, _, sigma, preds = dijkstra_shortest_path_dag(lengths, s)
        delta = [0.0] * n
        for w in reversed(order):
            for v in preds[w]:
                contrib = sigma[v] / sigma[w] * (1.0 + delta[w])
                key = (v, w) if v < w else (w, v)
                scores[key] += contrib
                delta[v] += contrib
    for key in scores:
        scores[key] /= 2.0  # each unordered pair was counted from both endpoints
    return scores


def _components(lengths: list[list[tuple[int, float]]]) -> Partition:
    n = len(lengths)
    labels = [-1] * n
    current = 0
    for s in range(n):
        if labels[s] != -1:
            continue
        stack = [s]
        labels[s] = current
        while stack:
            u = stack.pop()
            for v, _ in lengths[u]:
                if labels[v] == -1:
                    labels[v] = current
                    stack.append(v)
        current += 1
    return Partition(labels=tuple(labels), community_count=current)


def girvan_newman(g: Graph, target: int | None = None) -> tuple[Dendrogram, Partition]:
    """Divisive clustering by repeated removal of the max-betweenness edge.

    Each removal snapshots the connected components and their modularity
    against the original graph. The returned partition is the best-Q
    snapshot, or the first snapshot reaching ``target`` communities when a
    target is given. Betweenness ties break on the lexicographically
    smallest (min endpoint, max endpoint) edge.
    """
    if g.node_count == 0:
        raise ValueError("empty graph")
    if target is not None and not 1 <= target <= g.node_count:
        raise ValueError(f"target must be in [1, {g.node_count}], got {target}")

    lengths = [list(row) for row in edge_lengths(g)]
    steps: list[DendrogramStep] = []
    remaining = sum(len(row) for row in lengths) // 2
    while remaining > 0:
        scores = _edge_betweenness_rows(lengths)
        best_edge = min(scores, key=lambda e: (-scores[e], e))
        u, v = best_edge
        lengths[u] = [(j, l) for j, l in lengths[u] if j != v]
        lengths[v] = [(j, l) for j, l in lengths[v] if j != u]
        remaining -= 1
        part = _components(lengths)
        steps.append(DendrogramStep(best_edge, part, modularity(g, part)))

    dendrogram = Dendrogram(steps=tuple(steps))
    if not steps:
        return dendrogram, _components(lengths)
    if target is not None:
        for step in steps:
            if step.partition.community_count >= target:
                return dendrogram, step.partition
        return dendrogram, steps[-1].partition
    best = max(steps, key=lambda s: s.modularity)  # earliest snapshot wins ties
    return dendrogram, best.partition


# ---------------------------------------------------------------------------
# Spectral clustering (normalized cut)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralEmbedding:
    """Smallest eigenpairs of L_sym restricted to nodes with edges."""

    nodes: tuple[int, ...]
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    embedding: np.ndarray  # row-normalized eigenvectors


def normalized_laplacian(g: Graph, nodes: list[int]) -> np.ndarray:
    """L_sym = I - D^{-1/2} A D^{-1/2} over the given (positive-degree) nodes."""
    index = {node: pos for pos, node in enumerate(nodes)}
    n = len(nodes)
    lap = np.eye(n)
    dinv_sqrt = np.array([1.0 / math.sqrt(degree(g, node)) for node in nodes])
    for pos, node in enumerate(nodes):
        for j, w in g.adjacency[node]:
            lap[pos, index[j]] -= w * dinv_sqrt[pos] * dinv_sqrt[index[j]]
    return lap


def spectral_embedding(g: Graph, num_vectors: int) -> SpectralEmbedding:
    """Row-normalized embedding from the smallest eigenvectors of L_sym."""
    nodes = [i for i in range(g.node_count) if g.adjacency[i]]
    lap = normalized_laplacian(g, nodes)
    eigenvalues, eigenvectors = np.linalg.eigh(lap)
    eigenvalues = eigenvalues[:num_vectors]
    eigenvectors = eigenvectors[:, :num_vectors]
    norms = np.linalg.norm(eigenvectors, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return SpectralEmbedding(
        nodes=tuple(nodes),
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        embedding=eigenvectors / norms,
    )


def _kmeans(points: np.ndarray, k: int, rng: np.random.Generator,
            restarts: int = 10, max_iter: int = 100) -> np.ndarray:
    """Lloyd's k-means, best of ``restarts`` by within-cluster sum of squares.

    Empty clusters are repaired by re-seeding the centroid at the point
    farthest from its currently assigned centroid.
    """
    n = len(points)
    best_assign = None
    best_wcss = math.inf
    for _ in range(restarts):
        centers = points[rng.choice(n, size=k, replace=False)].copy()
        assign = None
        for _ in range(max_iter):
            dist2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            new_assign = dist2.argmin(axis=1)
            for c in range(k):
                if not np.any(new_assign == c):
                    farthest = int(dist2[np.arange(n), new_assign].argmax())
                    centers[c] = points[farthest]
                    dist2[:, c] = ((points - centers[c]) ** 2).sum(axis=1)
                    new_assign = dist2.argmin(axis=1)
            if assign is not None and np.array_equal(new_assign, assign):
                break
            assign = new_assign
            for c in range(k):
                members = points[assign == c]
                if len(members):
                    centers[c] = members.mean(axis=0)
        wcss = float(((points - centers[assign]) ** 2).sum())
        if wcss < best_wcss:
            best_wcss = wcss
            best_assign = assign
    return best_assign


def spectral_ncut(g: Graph, num_clusters: int, seed: int = 0) -> Partition:
    """Normalized-cut spectral clustering.

    Degree-zero nodes are split off as singleton clusters first (their
    D^{-1/2} entry would be undefined), reducing the k-means cluster count
    accordingly; the rest are clustered by k-means on the row-normalized
    smallest eigenvectors of L_sym.
    """
    if not 2 <= num_clusters <= g.node_count:
        raise ValueError(
            f"num_clusters must be in [2, {g.node_count}], got {num_clusters}"
        )
    isolated = [i for i in range(g.node_count) if not g.adjacency[i]]
    labels = [-1] * g.node_count
    for lab, node in enumerate(isolated):
        labels[node] = lab
    k_eff = max(1, num_clusters - len(isolated))
    emb = spectral_embedding(g, k_eff)
    if emb.nodes:
        if k_eff >= len(emb.nodes):
            assign = np.arange(len(emb.nodes))
        else:
            rng = np.random.default_rng(seed)
            assign = _kmeans(emb.embedding, k_eff, rng)
        offset = len(isolated)
        for pos, node in enumerate(emb.nodes):
            labels[node] = offset + int(assign[pos])
    return Partition.from_labels(labels)
