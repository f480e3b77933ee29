"""Dijkstra shortest paths over inverse-weight edge lengths.

Edge weights express connection strength, so path lengths use 1/w: a
heavier edge is a shorter hop. Shared by the betweenness code and the
graph-to-distance adapter.
"""

from __future__ import annotations

import heapq
import math

from .graph import Graph


def edge_lengths(g: Graph, use_weights: bool = True) -> list[list[tuple[int, float]]]:
    """Adjacency rows as (neighbor, length) with length = 1/weight."""
    if use_weights:
        return [[(j, 1.0 / w) for j, w in row] for row in g.adjacency]
    return [[(j, 1.0) for j, _ in row] for row in g.adjacency]


def dijkstra_distances(lengths: list[list[tuple[int, float]]], source: int) -> list[float]:
    """Single-source distances; unreachable nodes get math.inf."""
    n = len(lengths)
    dist = [math.inf] * n
    dist[source] = 0.0
    done = [False] * n
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, length in lengths[u]:
            nd = d + length
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def dijkstra_shortest_path_dag(
    lengths: list[list[tuple[int, float]]], source: int
) -> tuple[list[int], list[float], list[float], list[list[int]]]:
    """Single-source shortest-path DAG for Brandes-style accumulation.

    Returns (settle order, distances, path counts, predecessor lists).
    Equal-length alternatives are detected by exact float comparison, the
    usual convention for weighted betweenness.
    """
    n = len(lengths)
    dist = [math.inf] * n
    sigma = [0.0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    dist[source] = 0.0
    sigma[source] = 1.0
    done = [False] * n
    order: list[int] = []
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        order.append(u)
        for v, length in lengths[u]:
            nd = d + length
            if nd < dist[v]:
                dist[v] = nd
                sigma[v] = sigma[u]
                preds[v] = [u]
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and not done[v]:
                sigma[v] += sigma[u]
                preds[v].append(u)
    return order, dist, sigma, preds
