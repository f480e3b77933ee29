"""Input coercion helpers for the estimator layer.

They let the estimators accept either the package's own Graph objects or
plain ecosystem types. The dispatch rule is explicit: 2-D array objects
(anything with a ``.shape``) are read as square adjacency matrices, Python
sequences are read as edge records.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, build_graph


def adjacency_to_graph(arr) -> Graph:
    """Build a Graph from a square symmetric adjacency matrix.

    Non-zero entries become weighted edges; the diagonal is ignored; node
    names are the stringified row indices, so internal ids match matrix
    indices.
    """
    m = np.asarray(arr, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {m.shape}")
    if not np.allclose(m, m.T):
        raise ValueError("adjacency matrix must be symmetric")
    n = m.shape[0]
    # leading self-loop records register every index, keeping isolated nodes
    records = [(str(i), str(i), 1.0) for i in range(n)]
    records += [
        (str(i), str(j), float(m[i, j]))
        for i in range(n)
        for j in range(i + 1, n)
        if m[i, j] != 0.0
    ]
    return build_graph(records)


def as_graph(X) -> Graph:
    """Coerce estimator input to a Graph.

    Accepts a Graph, a 2-D square symmetric adjacency array, or a sequence
    of (source, target[, weight]) edge tuples / EdgeRecords.
    """
    if isinstance(X, Graph):
        return X
    if hasattr(X, "shape") and getattr(X, "ndim", 0) == 2:
        return adjacency_to_graph(X)
    if isinstance(X, (list, tuple)):
        return build_graph(X)
    raise TypeError(
        f"cannot interpret {type(X).__name__} as a graph; pass a Graph, a "
        "square adjacency array, or a sequence of edge tuples"
    )
