from __future__ import annotations

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_is_fitted

from commshift import (
    GirvanNewman,
    LabelPropagation,
    Louvain,
    MedoidShift,
    RevisedMedoidShift,
    SpectralNCut,
    build_graph,
)
from commshift.validation import adjacency_to_graph, as_graph

ALL_ESTIMATORS = [
    RevisedMedoidShift(k=2),
    Louvain(seed=0),
    LabelPropagation(seed=0),
    GirvanNewman(),
    SpectralNCut(num_clusters=2, seed=0),
]


@pytest.fixture
def toy_adjacency():
    # two triangles
    a = np.zeros((6, 6))
    for u, v in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]:
        a[u, v] = a[v, u] = 1.0
    return a


class TestValidation:
    def test_adjacency_round_trip(self, toy_adjacency):
        g = adjacency_to_graph(toy_adjacency)
        assert g.node_count == 6
        assert g.edge_count == 6
        assert g.node_names == tuple(str(i) for i in range(6))

    def test_isolated_rows_kept(self):
        a = np.zeros((3, 3))
        a[0, 1] = a[1, 0] = 1.0
        g = adjacency_to_graph(a)
        assert g.node_count == 3

    def test_asymmetric_rejected(self):
        a = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="symmetric"):
            adjacency_to_graph(a)

    def test_edge_tuples(self):
        g = as_graph([("a", "b"), ("b", "c")])
        assert g.node_count == 3

    def test_graph_passthrough(self, triangle):
        assert as_graph(triangle) is triangle

    def test_unsupported_type(self):
        with pytest.raises(TypeError, match="cannot interpret"):
            as_graph("not a graph")


class TestEstimatorContract:
    @pytest.mark.parametrize("est", ALL_ESTIMATORS, ids=lambda e: type(e).__name__)
    def test_fit_sets_labels(self, est, toy_adjacency):
        model = clone(est).fit(toy_adjacency)
        assert model.labels_.shape == (6,)
        assert model.n_communities_ == len(set(model.labels_.tolist()))

    @pytest.mark.parametrize("est", ALL_ESTIMATORS, ids=lambda e: type(e).__name__)
    def test_fit_predict_matches_labels(self, est, toy_adjacency):
        model = clone(est)
        labels = model.fit_predict(toy_adjacency)
        assert np.array_equal(labels, model.labels_)

    @pytest.mark.parametrize("est", ALL_ESTIMATORS, ids=lambda e: type(e).__name__)
    def test_get_params_round_trip(self, est):
        params = est.get_params()
        rebuilt = type(est)(**params)
        assert rebuilt.get_params() == params

    @pytest.mark.parametrize("est", ALL_ESTIMATORS, ids=lambda e: type(e).__name__)
    def test_unfitted_raises(self, est):
        with pytest.raises(NotFittedError):
            check_is_fitted(clone(est))

    def test_set_params(self):
        model = RevisedMedoidShift(k=2).set_params(k=7)
        assert model.k == 7


class TestRevisedMedoidShiftEstimator:
    def test_two_triangles(self, toy_adjacency):
        model = RevisedMedoidShift(k=2).fit(toy_adjacency)
        assert model.n_communities_ == 2
        assert model.similarity_mode_ == "common-neighbors"
        assert model.centers_ == (0, 3)
        assert model.n_iter_ <= 6

    def test_weighted_graph_uses_weights(self):
        g = build_graph([("a", "b", 5.0), ("b", "c", 1.0)])
        model = RevisedMedoidShift(k=2).fit(g)
        assert model.similarity_mode_ == "weight"

    def test_score_is_modularity(self, toy_adjacency):
        model = RevisedMedoidShift(k=2).fit(toy_adjacency)
        assert model.score() == pytest.approx(0.5, abs=1e-12)


class TestMedoidShiftEstimator:
    def test_precomputed_distances(self):
        pos = [0.0, 0.1, 0.25, 50.0, 50.1, 50.25]
        d = np.array([[abs(a - b) for b in pos] for a in pos])
        model = MedoidShift().fit(d)
        assert model.n_communities_ == 2
        assert model.targets_.tolist() == [1, 1, 1, 4, 4, 4]

    def test_graph_metric(self, two_triangles):
        model = MedoidShift(metric="graph").fit(two_triangles)
        assert model.labels_.shape == (6,)
        assert model.distances_.shape == (6, 6)


class TestBaselineEstimators:
    def test_louvain_two_triangle_score(self, toy_adjacency):
        model = Louvain(seed=1).fit(toy_adjacency)
        assert model.n_communities_ == 2
        assert model.score() == pytest.approx(0.5, abs=1e-12)

    def test_label_propagation_reports_convergence(self, toy_adjacency):
        model = LabelPropagation(seed=2).fit(toy_adjacency)
        assert model.converged_ is True

    def test_girvan_newman_exposes_dendrogram(self, toy_adjacency):
        model = GirvanNewman().fit(toy_adjacency)
        assert len(model.dendrogram_.steps) == 6

    def test_spectral_recovers_components(self, toy_adjacency):
        model = SpectralNCut(num_clusters=2, seed=0).fit(toy_adjacency)
        assert model.n_communities_ == 2
