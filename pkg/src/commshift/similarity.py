"""Node-pair similarity and K-nearest-neighbor tables.

Two similarity modes are supported for adjacent node pairs:

* ``"weight"`` -- the edge weight itself is the similarity (weighted graphs);
* ``"common-neighbors"`` -- the number of shared neighbors, excluding the
  two endpoints themselves (unweighted graphs).

Similarity is only evaluated for adjacent pairs, and zero-valued pairs are
not stored, which keeps the matrix sparse.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .graph import Graph

WEIGHT_MODE = "weight"
COMMON_NEIGHBOR_MODE = "common-neighbors"
_MODES = (WEIGHT_MODE, COMMON_NEIGHBOR_MODE)


@dataclass(frozen=True)
class SimilarityMatrix:
    """Sparse symmetric similarity, one sorted row of (partner, value) per node."""

    mode: str
    rows: tuple[tuple[tuple[int, float], ...], ...]

    @property
    def node_count(self) -> int:
        return len(self.rows)

    def partners(self, i: int) -> tuple[tuple[int, float], ...]:
        return self.rows[i]

    def value(self, i: int, j: int) -> float:
        """Similarity of a pair; 0.0 when the pair is not stored."""
        row = self.rows[i]
        pos = bisect_left(row, (j, float("-inf")))
        if pos < len(row) and row[pos][0] == j:
            return row[pos][1]
        return 0.0


@dataclass(frozen=True)
class KnnTable:
    """Per-node k-nearest-neighbor lists and similarity sums.

    ``nn[i]`` holds at most k partner ids ordered by (similarity desc,
    id asc); ``dl[i]`` is the sum of similarities to those partners.
    """

    k: int
    nn: tuple[tuple[int, ...], ...]
    dl: tuple[float, ...]

    @property
    def node_count(self) -> int:
        return len(self.nn)


def build_similarity(g: Graph, mode: str) -> SimilarityMatrix:
    """Compute the similarity matrix of a graph in the given mode."""
    if mode not in _MODES:
        raise ValueError(f"unknown similarity mode {mode!r}; expected one of {_MODES}")

    rows: list[tuple[tuple[int, float], ...]] = []
    if mode == WEIGHT_MODE:
        rows = [row for row in g.adjacency]
    else:
        # N(i) never contains i itself (no self-loops), so the intersection
        # of two neighbor sets automatically excludes both endpoints.
        neighbor_sets = [frozenset(j for j, _ in row) for row in g.adjacency]
        for i in range(g.node_count):
            entries = []
            for j, _ in g.adjacency[i]:
                common = len(neighbor_sets[i] & neighbor_sets[j])
                if common > 0:
                    entries.append((j, float(common)))
            rows.append(tuple(entries))
    return SimilarityMatrix(mode=mode, rows=tuple(rows))


def resolve_mode(g: Graph, mode: str = "auto") -> str:
    """Map "auto" to weight mode for weighted graphs, else common neighbors."""
    if mode == "auto":
        return WEIGHT_MODE if g.is_weighted() else COMMON_NEIGHBOR_MODE
    if mode not in _MODES:
        raise ValueError(f"unknown similarity mode {mode!r}")
    return mode


def build_knn(sim: SimilarityMatrix, k: int) -> KnnTable:
    """Select the top-k partners per node and their similarity sums.

    Ties in similarity are broken by ascending partner id. Nodes with no
    positive-similarity partner get an empty list and a zero sum.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    nn: list[tuple[int, ...]] = []
    dl: list[float] = []
    for row in sim.rows:
        ranked = sorted(row, key=lambda e: (-e[1], e[0]))[:k]
        nn.append(tuple(j for j, _ in ranked))
        dl.append(sum(v for _, v in ranked))
    return KnnTable(k=k, nn=tuple(nn), dl=tuple(dl))
