"""Undirected weighted graph built from raw edge records.

Nodes are referenced internally by dense integer ids assigned in order of
first appearance; the original string names are kept for output. The graph
is immutable after construction and safe to share across algorithm runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphBuildError


@dataclass(frozen=True)
class EdgeRecord:
    """One raw edge as read from an input file (possibly directed)."""

    source: str
    target: str
    weight: float = 1.0


@dataclass(frozen=True)
class Graph:
    """Simple undirected weighted graph.

    Attributes
    ----------
    node_names : original identifiers, index = internal id
    adjacency : per-node tuple of (neighbor id, weight), sorted by neighbor id
    total_weight : sum of all adjacency weights (each edge counted twice)
    """

    node_names: tuple[str, ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...]
    total_weight: float

    @property
    def node_count(self) -> int:
        return len(self.node_names)

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    def edges(self) -> Iterable[tuple[int, int, float]]:
        """Yield each undirected edge once as (u, v, w) with u < v."""
        for u, row in enumerate(self.adjacency):
            for v, w in row:
                if u < v:
                    yield u, v, w

    def is_weighted(self) -> bool:
        """True if any edge weight differs from 1."""
        return any(w != 1.0 for row in self.adjacency for _, w in row)


def _coerce_record(item: object, index: int) -> EdgeRecord:
    if isinstance(item, EdgeRecord):
        return item
    if isinstance(item, (tuple, list)) and len(item) in (2, 3):
        s, t = item[0], item[1]
        w = item[2] if len(item) == 3 else 1.0
        return EdgeRecord(str(s), str(t), float(w))
    raise GraphBuildError(f"record {index}: cannot interpret {item!r} as an edge record")


def build_graph(records: Iterable[object], directed_input: bool = False) -> Graph:
    """Assemble an undirected simple graph from edge records.

    Directed inputs are aggregated: weight(i, j) = sum of weights of all
    directed edges i->j and j->i. Undirected parallel edges are likewise
    summed. Self-loops are dropped. Node ids follow first appearance.

    Raises GraphBuildError for an empty record set, a non-positive or
    non-finite weight, or a malformed id, naming the offending record.
    """
    ids: dict[str, int] = {}
    weights: dict[tuple[int, int], float] = {}

    n_records = 0
    for index, item in enumerate(records):
        rec = _coerce_record(item, index)
        n_records += 1
        for name in (rec.source, rec.target):
            if not isinstance(name, str) or not name.strip():
                raise GraphBuildError(f"record {index}: malformed node id {name!r}")
        w = float(rec.weight)
        if not 0.0 < w < float("inf"):
            raise GraphBuildError(
                f"record {index} ({rec.source!r} -> {rec.target!r}): "
                f"weight must be positive and finite, got {rec.weight!r}"
            )
        u = ids.setdefault(rec.source, len(ids))
        v = ids.setdefault(rec.target, len(ids))
        if u == v:
            continue  # self-loops dropped at build time
        key = (u, v) if u < v else (v, u)
        weights[key] = weights.get(key, 0.0) + w

    if n_records == 0:
        raise GraphBuildError("empty record set")

    neighbors: list[list[tuple[int, float]]] = [[] for _ in range(len(ids))]
    for (u, v), w in weights.items():
        neighbors[u].append((v, w))
        neighbors[v].append((u, w))

    adjacency = tuple(tuple(sorted(row)) for row in neighbors)
    total = sum(w for row in adjacency for _, w in row)
    return Graph(node_names=tuple(ids), adjacency=adjacency, total_weight=total)


def _check_node(g: Graph, i: int) -> None:
    if not 0 <= i < g.node_count:
        raise IndexError(f"node id {i} out of range for graph with {g.node_count} nodes")


def degree(g: Graph, i: int) -> float:
    """Weighted degree: sum of incident edge weights."""
    _check_node(g, i)
    return sum(w for _, w in g.adjacency[i])


def neighbors(g: Graph, i: int) -> Sequence[tuple[int, float]]:
    """Neighbors of i as (node id, weight) pairs, ascending by id."""
    _check_node(g, i)
    return g.adjacency[i]
