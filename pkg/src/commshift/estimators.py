"""Scikit-learn style estimator wrappers around the clustering functions.

Each estimator follows the usual conventions: hyperparameters are stored
verbatim in ``__init__`` (so ``get_params``/``set_params``/``clone`` work),
all validation happens in ``fit``, and fitted state lives in trailing-
underscore attributes. ``fit`` accepts a Graph, a square symmetric
adjacency array, or a sequence of edge tuples; ``MedoidShift`` also
accepts a dense distance matrix directly.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from . import baselines, shift
from .graph import Graph
from .metrics import modularity
from .partition import Partition
from .similarity import build_knn, build_similarity, resolve_mode
from .validation import as_graph


class _GraphClusterer(BaseEstimator, ClusterMixin):
    """Shared plumbing: input coercion and fitted-partition bookkeeping."""

    def _finish(self, g: Graph, partition: Partition):
        self.graph_ = g
        self.partition_ = partition
        self.labels_ = np.asarray(partition.labels, dtype=int)
        self.n_communities_ = partition.community_count
        return self

    def score(self, X=None, y=None) -> float:
        """Modularity of the fitted partition."""
        return modularity(self.graph_, self.partition_)


class RevisedMedoidShift(_GraphClusterer):
    """KNN medoid-shift community detection.

    Parameters
    ----------
    k : neighborhood size for the KNN table.
    similarity : "auto" picks edge weights on weighted graphs and common
        neighbor counts on unweighted ones; "weight" or "common-neighbors"
        force a mode.
    """

    def __init__(self, k: int = 5, similarity: str = "auto"):
        self.k = k
        self.similarity = similarity

    def fit(self, X, y=None):
        g = as_graph(X)
        mode = resolve_mode(g, self.similarity)
        sim = build_similarity(g, mode)
        knn = build_knn(sim, self.k)
        state, partition = shift.rms_cluster(sim, knn)
        self.similarity_mode_ = mode
        self.shift_state_ = state
        self.centers_ = state.centers
        self.n_iter_ = state.iteration_count
        return self._finish(g, partition)


class MedoidShift(BaseEstimator, ClusterMixin):
    """Classic medoid shift on a dense distance matrix.

    ``fit`` accepts a distance matrix directly when ``metric="precomputed"``
    (the default); otherwise the input is coerced to a graph and distances
    are inverse-weight shortest paths. The kernel defaults to exp(-d/2).
    """

    def __init__(self, kernel=None, metric: str = "precomputed"):
        self.kernel = kernel
        self.metric = metric

    def fit(self, X, y=None):
        if self.metric == "precomputed" and hasattr(X, "shape"):
            d = shift.validate_distance_matrix(X)
        else:
            d = shift.graph_to_distance(as_graph(X))
        self.distances_ = d
        self.targets_ = shift.shift_targets(d, self.kernel)
        partition = shift.medoid_shift(d, self.kernel)
        self.partition_ = partition
        self.labels_ = np.asarray(partition.labels, dtype=int)
        self.n_communities_ = partition.community_count
        return self


class Louvain(_GraphClusterer):
    """Louvain modularity optimization."""

    def __init__(self, resolution: float = 1.0, seed: int = 0):
        self.resolution = resolution
        self.seed = seed

    def fit(self, X, y=None):
        g = as_graph(X)
        return self._finish(g, baselines.louvain(g, self.resolution, self.seed))


class LabelPropagation(_GraphClusterer):
    """Asynchronous weighted label propagation."""

    def __init__(self, seed: int = 0, max_sweeps: int = 100):
        self.seed = seed
        self.max_sweeps = max_sweeps

    def fit(self, X, y=None):
        g = as_graph(X)
        partition, converged = baselines.label_propagation(g, self.seed, self.max_sweeps)
        self.converged_ = converged
        return self._finish(g, partition)


class GirvanNewman(_GraphClusterer):
    """Divisive clustering by edge-betweenness removal."""

    def __init__(self, target: int | None = None):
        self.target = target

    def fit(self, X, y=None):
        g = as_graph(X)
        dendrogram, partition = baselines.girvan_newman(g, self.target)
        self.dendrogram_ = dendrogram
        return self._finish(g, partition)


class SpectralNCut(_GraphClusterer):
    """Normalized-cut spectral clustering with k-means on the embedding."""

    def __init__(self, num_clusters: int = 2, seed: int = 0):
        self.num_clusters = num_clusters
        self.seed = seed

    def fit(self, X, y=None):
        g = as_graph(X)
        return self._finish(g, baselines.spectral_ncut(g, self.num_clusters, self.seed))
