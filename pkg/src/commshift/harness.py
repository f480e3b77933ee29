"""Benchmark harness: run method x dataset grids and collect metric tables.

An experiment names a dataset (resolved through the manifest), a method,
its parameters, and the metrics to compute. Parameter sweeps produce one
result per point plus "best" and "mean" summary records; the best record
is chosen by NMI on datasets with ground truth and by modularity
otherwise, ties going to the smallest parameter point.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from . import baselines, shift
from .errors import ConfigError, ExperimentError
from .graph import Graph
from .io import DatasetManifest, GroundTruth, align_ground_truth, load_dataset
from .metrics import MetricValue, modularity, nmi
from .partition import Partition
from .similarity import build_knn, build_similarity, resolve_mode

METHODS = (
    "rms",
    "medoid-shift",
    "louvain",
    "label-propagation",
    "girvan-newman",
    "spectral",
)
STOCHASTIC_METHODS = ("louvain", "label-propagation", "spectral")
DEFAULT_SEEDS = tuple(range(10))
METRIC_NAMES = ("modularity", "nmi")


@dataclass(frozen=True)
class ExperimentSpec:
    """One dataset x method x parameters request."""

    dataset: str
    method: str
    params: dict = field(default_factory=dict)
    metrics: tuple[str, ...] = ("modularity",)

    def validate(self) -> None:
        if self.method not in METHODS:
            raise ConfigError(
                f"unknown method {self.method!r}; expected one of {METHODS}"
            )
        for m in self.metrics:
            if m not in METRIC_NAMES:
                raise ConfigError(f"unknown metric {m!r}; expected {METRIC_NAMES}")
        if not self.metrics:
            raise ConfigError("no metrics requested")
        if self.method == "spectral" and "num_clusters" not in self.params:
            raise ConfigError("spectral requires a num_clusters parameter")


@dataclass(frozen=True)
class ExperimentResult:
    """Outcome of one parameter point (or a best/mean summary record)."""

    dataset: str
    method: str
    params: dict
    kind: str  # "point", "best", or "mean"
    community_count: int
    community_sizes: tuple[int, ...]
    metrics: tuple[MetricValue, ...]
    runtime_ms: float
    converged: bool | None = None

    def params_string(self) -> str:
        inner = ",".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        if self.kind == "point":
            return inner
        return f"{self.kind}({inner})"

    def metric(self, name: str) -> float:
        for mv in self.metrics:
            if mv.name == name:
                return mv.value
        raise KeyError(name)


def _run_method(g: Graph, method: str, point: dict) -> tuple[Partition, bool | None]:
    if method == "rms":
        mode = resolve_mode(g, point.get("similarity", "auto"))
        sim = build_similarity(g, mode)
        knn = build_knn(sim, int(point.get("k", 5)))
        _, part = shift.rms_cluster(sim, knn)
        return part, None
    if method == "medoid-shift":
        return shift.medoid_shift(shift.graph_to_distance(g)), None
    if method == "louvain":
        return baselines.louvain(
            g, float(point.get("resolution", 1.0)), int(point.get("seed", 0))
        ), None
    if method == "label-propagation":
        part, converged = baselines.label_propagation(
            g, int(point.get("seed", 0)), int(point.get("max_sweeps", 100))
        )
        return part, converged
    if method == "girvan-newman":
        target = point.get("target")
        _, part = baselines.girvan_newman(
            g, None if target is None else int(target)
        )
        return part, None
    if method == "spectral":
        return baselines.spectral_ncut(
            g, int(point["num_clusters"]), int(point.get("seed", 0))
        ), None
    raise ExperimentError(f"unknown method {method!r}")


def _score(
    g: Graph,
    part: Partition,
    metrics: tuple[str, ...],
    truth: GroundTruth | None,
    truth_ids: list[int] | None,
    truth_part: Partition | None,
) -> tuple[MetricValue, ...]:
    out = []
    for name in metrics:
        if name == "modularity":
            out.append(
                MetricValue(
                    "modularity",
                    modularity(g, part),
                    {"communities": part.community_count, "nodes": g.node_count},
                )
            )
        elif name == "nmi":
            if truth is None or truth_part is None or truth_ids is None:
                raise ExperimentError("nmi requested but the dataset has no ground truth")
            detected = Partition.from_labels(part.labels[i] for i in truth_ids)
            out.append(
                MetricValue(
                    "nmi",
                    nmi(detected, truth_part),
                    {
                        "communities": part.community_count,
                        "truth_communities": truth_part.community_count,
                        "coverage": truth.coverage,
                    },
                )
            )
        else:
            raise ExperimentError(f"unknown metric {name!r}")
    return tuple(out)


def _parse_range(value) -> list:
    """Expand "a..b" strings and comma lists into parameter value lists."""
    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, str):
        if ".." in value:
            lo, hi = value.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        if "," in value:
            return [v.strip() for v in value.split(",") if v.strip()]
    return [value]


def expand_points(spec: ExperimentSpec) -> list[dict]:
    """Parameter points of a spec: the sweep axis times the seed axis."""
    params = dict(spec.params)
    seeds: list = []
    if spec.method in STOCHASTIC_METHODS:
        if "seeds" in params:
            seeds = [int(s) for s in _parse_range(params.pop("seeds"))]
        elif "seed" in params:
            seeds = [int(params.pop("seed"))]
        else:
            seeds = list(DEFAULT_SEEDS)
        if not seeds:
            raise ConfigError("empty seed list")

    sweep_key = None
    sweep_values: list = [None]
    for key in ("k", "num_clusters", "resolution", "target", "max_sweeps"):
        if key in params:
            values = _parse_range(params[key])
            if not values:
                raise ConfigError(f"empty sweep range for {key!r}")
            if len(values) > 1:
                if sweep_key is not None:
                    raise ConfigError(
                        f"only one parameter may sweep; got both {sweep_key!r} "
                        f"and {key!r}"
                    )
                sweep_key = key
                sweep_values = values
    if sweep_key is not None:
        params.pop(sweep_key)

    points = []
    for value in sweep_values:
        base = dict(params)
        if sweep_key is not None:
            base[sweep_key] = value
        if seeds:
            for seed in seeds:
                point = dict(base)
                point["seed"] = seed
                points.append(point)
        else:
            points.append(base)
    return points


def _selection_metric(spec: ExperimentSpec, truth: GroundTruth | None) -> str:
    if truth is not None and "nmi" in spec.metrics:
        return "nmi"
    if "modularity" in spec.metrics:
        return "modularity"
    return spec.metrics[0]


def run_experiment(
    spec: ExperimentSpec,
    manifests: dict[str, DatasetManifest],
    base_dir=None,
    zero_runtimes: bool = False,
    allow_long_run: bool = False,
) -> list[ExperimentResult]:
    """Execute one spec: load its dataset, run every parameter point, score
    it, and append mean/best summary records for multi-point sweeps."""
    spec.validate()
    if spec.dataset not in manifests:
        raise ExperimentError(
            f"dataset {spec.dataset!r} not in manifest "
            f"(known: {sorted(manifests)})"
        )
    manifest = manifests[spec.dataset]
    if manifest.long_run and not allow_long_run:
        raise ExperimentError(
            f"dataset {spec.dataset!r} is marked long-run; pass allow_long_run "
            "(--long-run) to include it"
        )
    g, truth = load_dataset(manifest, base_dir)
    truth_ids = truth_part = None
    if truth is not None:
        truth_ids, truth_part = align_ground_truth(g, truth)

    points = expand_points(spec)
    results: list[ExperimentResult] = []
    for point in points:
        try:
            start = time.perf_counter()
            part, converged = _run_method(g, spec.method, point)
            elapsed_ms = (time.perf_counter() - start) * 1000.0
        except (ExperimentError, ConfigError):
            raise
        except Exception as exc:
            raise ExperimentError(
                f"{spec.method} failed on {spec.dataset} at {point}: {exc}"
            ) from exc
        results.append(
            ExperimentResult(
                dataset=spec.dataset,
                method=spec.method,
                params=point,
                kind="point",
                community_count=part.community_count,
                community_sizes=part.sizes(),
                metrics=_score(g, part, spec.metrics, truth, truth_ids, truth_part),
                runtime_ms=0.0 if zero_runtimes else elapsed_ms,
                converged=converged,
            )
        )

    if len(results) > 1:
        select_by = _selection_metric(spec, truth)
        results.append(_mean_record(results, spec))
        results.append(_best_record(results[:-1], select_by))
    return results


def _mean_record(points: list[ExperimentResult], spec: ExperimentSpec) -> ExperimentResult:
    metric_means = []
    for idx, mv in enumerate(points[0].metrics):
        mean = sum(r.metrics[idx].value for r in points) / len(points)
        metric_means.append(MetricValue(mv.name, mean, {"points": len(points)}))
    mean_runtime = sum(r.runtime_ms for r in points) / len(points)
    mean_comms = sum(r.community_count for r in points) / len(points)
    return ExperimentResult(
        dataset=spec.dataset,
        method=spec.method,
        params={"n": len(points)},
        kind="mean",
        community_count=int(round(mean_comms)),
        community_sizes=(),
        metrics=tuple(metric_means),
        runtime_ms=mean_runtime,
        converged=None,
    )


def _point_order_key(params: dict):
    """Order parameter points numerically where possible (tie-breaking)."""
    key = []
    for k in sorted(params):
        v = params[k]
        try:
            key.append((k, 0, float(v), ""))
        except (TypeError, ValueError):
            key.append((k, 1, 0.0, str(v)))
    return tuple(key)


def _best_record(points: list[ExperimentResult], select_by: str) -> ExperimentResult:
    best = min(
        points,
        key=lambda r: (-r.metric(select_by), _point_order_key(r.params)),
    )
    return ExperimentResult(
        dataset=best.dataset,
        method=best.method,
        params=dict(best.params),
        kind="best",
        community_count=best.community_count,
        community_sizes=best.community_sizes,
        metrics=tuple(
            MetricValue(mv.name, mv.value, dict(mv.metadata, selected_by=select_by))
            for mv in best.metrics
        ),
        runtime_ms=best.runtime_ms,
        converged=best.converged,
    )


# ---------------------------------------------------------------------------
# suite configs
# ---------------------------------------------------------------------------


def parse_suite_config(path) -> list[ExperimentSpec]:
    """Parse the suite's key-value config format.

    Each ``[experiment]`` section holds ``key = value`` lines; ``dataset``
    and ``method`` are required, ``metrics`` is a comma list, everything
    else is a method parameter. Errors carry line numbers.
    """
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"no such config file: {p}")
    sections: list[tuple[int, dict[str, str]]] = []
    current: dict[str, str] | None = None
    for lineno, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if line != "[experiment]":
                raise ConfigError(f"{p}:{lineno}: unknown section {line!r}")
            current = {}
            sections.append((lineno, current))
            continue
        if "=" not in line:
            raise ConfigError(f"{p}:{lineno}: expected 'key = value', got {line!r}")
        if current is None:
            raise ConfigError(f"{p}:{lineno}: key outside an [experiment] section")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"{p}:{lineno}: empty key or value")
        if key in current:
            raise ConfigError(f"{p}:{lineno}: duplicate key {key!r}")
        current[key] = value

    if not sections:
        raise ConfigError(f"{p}: no [experiment] sections found")

    specs = []
    for lineno, kv in sections:
        if "dataset" not in kv or "method" not in kv:
            raise ConfigError(
                f"{p}:{lineno}: experiment needs both 'dataset' and 'method'"
            )
        metrics = tuple(
            m.strip() for m in kv.pop("metrics", "modularity").split(",") if m.strip()
        )
        spec = ExperimentSpec(
            dataset=kv.pop("dataset"),
            method=kv.pop("method"),
            params=dict(kv),
            metrics=metrics,
        )
        try:
            spec.validate()
        except ConfigError as exc:
            raise ConfigError(f"{p}:{lineno}: {exc}") from exc
        specs.append(spec)
    return specs


def format_table(results: list[ExperimentResult]) -> str:
    """Fixed-width comparison table for terminal output."""
    headers = ("dataset", "method", "params", "metric", "value", "comms", "ms")
    rows = []
    for res in results:
        for mv in res.metrics:
            rows.append(
                (
                    res.dataset,
                    res.method,
                    res.params_string(),
                    mv.name,
                    f"{mv.value:.4f}",
                    str(res.community_count),
                    f"{res.runtime_ms:.1f}",
                )
            )
    widths = [
        max(len(headers[c]), max((len(r[c]) for r in rows), default=0))
        for c in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[c]) for c, h in enumerate(headers)),
        "  ".join("-" * widths[c] for c in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)))
    return "\n".join(lines)
