"""Community detection by medoid-shift clustering, with classical baselines,
evaluation metrics, dataset loaders, and a benchmark harness."""

from .baselines import (
    Dendrogram,
    DendrogramStep,
    edge_betweenness,
    girvan_newman,
    label_propagation,
    louvain,
    spectral_ncut,
)
from .errors import (
    CommshiftError,
    ConfigError,
    DatasetError,
    ExperimentError,
    GraphBuildError,
)
from .estimators import (
    GirvanNewman,
    LabelPropagation,
    Louvain,
    MedoidShift,
    RevisedMedoidShift,
    SpectralNCut,
)
from .graph import EdgeRecord, Graph, build_graph, degree, neighbors
from .metrics import MetricValue, brute_force_best_modularity, modularity, nmi
from .partition import Partition
from .shift import (
    ShiftState,
    exp_kernel,
    graph_to_distance,
    medoid_shift,
    rms_cluster,
    shift_targets,
)
from .similarity import KnnTable, SimilarityMatrix, build_knn, build_similarity

__version__ = "0.1.0"

__all__ = [
    "CommshiftError",
    "ConfigError",
    "DatasetError",
    "Dendrogram",
    "DendrogramStep",
    "EdgeRecord",
    "ExperimentError",
    "GirvanNewman",
    "Graph",
    "GraphBuildError",
    "KnnTable",
    "LabelPropagation",
    "Louvain",
    "MedoidShift",
    "MetricValue",
    "Partition",
    "RevisedMedoidShift",
    "ShiftState",
    "SimilarityMatrix",
    "SpectralNCut",
    "brute_force_best_modularity",
    "build_graph",
    "build_knn",
    "build_similarity",
    "degree",
    "edge_betweenness",
    "exp_kernel",
    "girvan_newman",
    "graph_to_distance",
    "label_propagation",
    "louvain",
    "medoid_shift",
    "modularity",
    "neighbors",
    "nmi",
    "rms_cluster",
    "shift_targets",
    "spectral_ncut",
    "__version__",
]
