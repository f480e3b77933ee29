"""Dataset loaders, ground-truth handling, and result writers.

Supported inputs:

* whitespace-separated edge lists ("source target [weight]", ``#``/``%``
  comments);
* a GML subset (graph/node/edge blocks with id, label, value, weight keys);
* community files, either "node label" pairs or one community per line.

Outputs are deterministic CSV/JSON result tables.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DatasetError
from .graph import EdgeRecord, Graph, build_graph
from .partition import Partition

# ---------------------------------------------------------------------------
# ground truth
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroundTruth:
    """Known community labels keyed by node name."""

    labels: dict[str, str]
    coverage: float = 1.0

    def __len__(self) -> int:
        return len(self.labels)


def align_ground_truth(g: Graph, truth: GroundTruth) -> tuple[list[int], Partition]:
    """Node ids covered by the truth, and the truth partition over them.

    Raises DatasetError if the truth names nodes absent from the graph.
    """
    name_to_id = {name: i for i, name in enumerate(g.node_names)}
    unknown = sorted(set(truth.labels) - set(name_to_id))
    if unknown:
        raise DatasetError(f"ground truth names unknown nodes: {unknown[:10]}")
    ids = sorted(name_to_id[name] for name in truth.labels)
    labels = [truth.labels[g.node_names[i]] for i in ids]
    return ids, Partition.from_labels(labels)


# ---------------------------------------------------------------------------
# edge lists
# ---------------------------------------------------------------------------


def _edge_list_records(path: Path, weighted: bool) -> list[EdgeRecord]:
    records: list[EdgeRecord] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("%"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise DatasetError(
                    f"{path}:{lineno}: expected 'source target [weight]', got {line!r}"
                )
            weight = 1.0
            if len(parts) == 3 and weighted:
                try:
                    weight = float(parts[2])
                except ValueError:
                    raise DatasetError(
                        f"{path}:{lineno}: non-numeric weight {parts[2]!r}"
                    ) from None
                if not math.isfinite(weight) or weight <= 0:
                    raise DatasetError(
                        f"{path}:{lineno}: weight must be positive, got {parts[2]!r}"
                    )
            elif len(parts) == 3:
                try:
                    float(parts[2])
                except ValueError:
                    raise DatasetError(
                        f"{path}:{lineno}: non-numeric weight {parts[2]!r}"
                    ) from None
            records.append(EdgeRecord(parts[0], parts[1], weight))
    if not records:
        raise DatasetError(f"{path}: no edges found")
    return records


def load_edge_list(
    path,
    directed: bool = False,
    weighted: bool = True,
    isolated_nodes: Sequence[str] = (),
) -> Graph:
    """Load a whitespace-separated edge list.

    With ``weighted=False`` any third column is validated but ignored and
    all edges get weight 1. ``isolated_nodes`` appends extra nodes that
    appear in no edge (used to cover ground-truth-only nodes).
    """
    p = Path(path)
    if not p.exists():
        raise DatasetError(f"no such file: {p}")
    records = _edge_list_records(p, weighted)
    return _build_with_isolated(records, directed, isolated_nodes)


def _build_with_isolated(
    records: list[EdgeRecord], directed: bool, isolated_nodes: Sequence[str]
) -> Graph:
    mentioned = {r.source for r in records} | {r.target for r in records}
    extra = [n for n in isolated_nodes if n not in mentioned]
    # a self-loop record registers the node, then is dropped by build_graph
    records = records + [EdgeRecord(n, n, 1.0) for n in extra]
    return build_graph(records, directed_input=directed)


def write_edge_list(g: Graph, path) -> None:
    """Debug utility: dump a graph as "source target weight" lines.

    Isolated nodes are written as self-loop lines; the loader registers the
    name and drops the loop, so they survive a round trip.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, w in g.edges():
            fh.write(f"{g.node_names[u]} {g.node_names[v]} {w!r}\n")
        for i in range(g.node_count):
            if not g.adjacency[i]:
                fh.write(f"{g.node_names[i]} {g.node_names[i]} 1.0\n")


# ---------------------------------------------------------------------------
# GML subset
# ---------------------------------------------------------------------------


def _tokenize_gml(text: str, path) -> list[object]:
    tokens: list[object] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == '"':
            j = text.find('"', i + 1)
            if j == -1:
                raise DatasetError(f"{path}: unterminated string literal")
            tokens.append(("str", text[i + 1 : j]))
            i = j + 1
        elif ch in "[]":
            tokens.append((ch, ch))
            i += 1
        elif ch == "#":
            j = text.find("\n", i)
            i = n if j == -1 else j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "[]":
                j += 1
            tokens.append(("word", text[i:j]))
            i = j
    return tokens


def _parse_gml_block(tokens: list[object], pos: int, path) -> tuple[dict, int]:
    """Parse tokens after a '[' into {key: [values...]} until the matching ']'."""
    out: dict[str, list[object]] = {}
    while pos < len(tokens):
        kind, value = tokens[pos]
        if kind == "]":
            return out, pos + 1
        if kind != "word":
            raise DatasetError(f"{path}: expected a key, got {value!r}")
        key = value
        pos += 1
        if pos >= len(tokens):
            raise DatasetError(f"{path}: dangling key {key!r}")
        kind, value = tokens[pos]
        if kind == "[":
            sub, pos = _parse_gml_block(tokens, pos + 1, path)
            out.setdefault(key, []).append(sub)
        elif kind in ("word", "str"):
            out.setdefault(key, []).append(value)
            pos += 1
        else:
            raise DatasetError(f"{path}: unexpected token {value!r} after {key!r}")
    raise DatasetError(f"{path}: unbalanced brackets")


def load_gml(path) -> tuple[Graph, GroundTruth | None]:
    """Load the GML subset; node "value" attributes become ground truth.

    Ground truth is returned when at least one node carries a value, with
    coverage = labeled fraction.
    """
    p = Path(path)
    if not p.exists():
        raise DatasetError(f"no such file: {p}")
    tokens = _tokenize_gml(p.read_text(encoding="utf-8"), p)
    start = None
    for idx in range(len(tokens) - 1):
        if tokens[idx] == ("word", "graph") and tokens[idx + 1][0] == "[":
            start = idx + 2
            break
    if start is None:
        raise DatasetError(f"{p}: no graph block found")
    graph_block, end = _parse_gml_block(tokens, start, p)
    if any(kind == "]" for kind, _ in tokens[end:]):
        raise DatasetError(f"{p}: unbalanced brackets")

    directed = str(graph_block.get("directed", ["0"])[0]) == "1"
    nodes = graph_block.get("node", [])
    edges = graph_block.get("edge", [])
    if not nodes:
        raise DatasetError(f"{p}: graph block has no nodes")

    names: dict[str, str] = {}
    values: dict[str, str] = {}
    for node in nodes:
        if not isinstance(node, dict) or "id" not in node:
            raise DatasetError(f"{p}: node block without id")
        nid = str(node["id"][0])
        if nid in names:
            raise DatasetError(f"{p}: duplicate node id {nid}")
        label = str(node["label"][0]) if "label" in node else nid
        names[nid] = label
        if "value" in node:
            values[nid] = str(node["value"][0])
    if len(set(names.values())) != len(names):
        raise DatasetError(f"{p}: duplicate node labels")

    # self-loop records up front register every node in GML block order,
    # so internal ids follow the file even for isolated nodes
    records: list[EdgeRecord] = [EdgeRecord(n, n, 1.0) for n in names.values()]
    for edge in edges:
        if not isinstance(edge, dict) or "source" not in edge or "target" not in edge:
            raise DatasetError(f"{p}: edge block without source/target")
        s, t = str(edge["source"][0]), str(edge["target"][0])
        for endpoint in (s, t):
            if endpoint not in names:
                raise DatasetError(f"{p}: edge references unknown node id {endpoint}")
        try:
            w = float(edge["weight"][0]) if "weight" in edge else 1.0
        except (TypeError, ValueError):
            raise DatasetError(
                f"{p}: non-numeric weight on edge {s} -> {t}"
            ) from None
        records.append(EdgeRecord(names[s], names[t], w))
    graph = build_graph(records, directed_input=directed)

    truth = None
    if values:
        truth = GroundTruth(
            labels={names[nid]: lab for nid, lab in values.items()},
            coverage=len(values) / len(names),
        )
    return graph, truth


# ---------------------------------------------------------------------------
# ground-truth community files
# ---------------------------------------------------------------------------


def load_ground_truth(path) -> GroundTruth:
    """Load community labels, auto-detecting the format.

    If every data line has exactly two tokens the file is read as
    "node label" pairs; otherwise each line is one community whose tokens
    are its members. Overlapping membership is an error.
    """
    p = Path(path)
    if not p.exists():
        raise DatasetError(f"no such file: {p}")
    lines: list[tuple[int, list[str]]] = []
    with open(p, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("%"):
                continue
            lines.append((lineno, line.split()))
    if not lines:
        raise DatasetError(f"{p}: no ground-truth entries")

    labels: dict[str, str] = {}
    if all(len(parts) == 2 for _, parts in lines):
        for lineno, parts in lines:
            node, label = parts
            if node in labels and labels[node] != label:
                raise DatasetError(
                    f"{p}:{lineno}: node {node!r} appears in two communities"
                )
            labels[node] = label
    else:
        for community, (lineno, members) in enumerate(lines):
            for node in members:
                if node in labels:
                    raise DatasetError(
                        f"{p}:{lineno}: node {node!r} appears in two communities"
                    )
                labels[node] = str(community)
    return GroundTruth(labels=labels, coverage=1.0)


# ---------------------------------------------------------------------------
# dataset manifest
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DatasetManifest:
    """One benchmark dataset: where it lives and how to read it."""

    name: str
    path: str
    format: str  # "edgelist" | "gml"
    directed: bool = False
    weighted: bool = True
    ground_truth: str | None = None
    url: str | None = None
    sha256: str | None = None
    long_run: bool = False


def sha256_of(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def load_manifest(path) -> dict[str, DatasetManifest]:
    """Read a manifest JSON file into a name-keyed mapping."""
    p = Path(path)
    if not p.exists():
        raise DatasetError(f"no such manifest: {p}")
    try:
        payload = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{p}: invalid JSON: {exc}") from exc
    if isinstance(payload, list):
        entries = payload
    elif isinstance(payload, dict):
        entries = payload.get("datasets")
    else:
        entries = None
    if entries is None:
        raise DatasetError(f"{p}: expected a 'datasets' list")
    out: dict[str, DatasetManifest] = {}
    for entry in entries:
        try:
            m = DatasetManifest(**entry)
        except TypeError as exc:
            raise DatasetError(f"{p}: bad manifest entry {entry!r}: {exc}") from exc
        if m.name in out:
            raise DatasetError(f"{p}: duplicate dataset name {m.name!r}")
        out[m.name] = m
    return out


def load_dataset(
    manifest: DatasetManifest, base_dir=None
) -> tuple[Graph, GroundTruth | None]:
    """Load a manifest entry, verifying its checksum when pinned.

    Ground-truth-only nodes are added to the graph as isolated nodes so
    scoring covers the full node set.
    """
    base = Path(base_dir) if base_dir is not None else Path(".")
    path = Path(manifest.path)
    if not path.is_absolute():
        path = base / path
    if not path.exists():
        raise DatasetError(
            f"dataset {manifest.name!r} file missing: {path} "
            "(fetch it first; see the manifest's url)"
        )
    if manifest.sha256 is not None:
        actual = sha256_of(path)
        if actual != manifest.sha256:
            raise DatasetError(
                f"dataset {manifest.name!r}: checksum mismatch "
                f"(expected {manifest.sha256}, got {actual})"
            )

    truth: GroundTruth | None = None
    if manifest.format == "gml":
        graph, truth = load_gml(path)
    elif manifest.format == "edgelist":
        graph = load_edge_list(path, manifest.directed, manifest.weighted)
    else:
        raise DatasetError(
            f"dataset {manifest.name!r}: unknown format {manifest.format!r}"
        )

    if manifest.ground_truth is not None:
        gt_path = Path(manifest.ground_truth)
        if not gt_path.is_absolute():
            gt_path = base / gt_path
        truth = load_ground_truth(gt_path)
        known = set(graph.node_names)
        extra = sorted(set(truth.labels) - known)
        if extra and manifest.format == "edgelist":
            graph = load_edge_list(
                path, manifest.directed, manifest.weighted, isolated_nodes=extra
            )
        elif extra:
            raise DatasetError(
                f"dataset {manifest.name!r}: ground truth names unknown nodes {extra[:5]}"
            )
        coverage = sum(1 for n in graph.node_names if n in truth.labels) / graph.node_count
        truth = GroundTruth(labels=truth.labels, coverage=coverage)
    return graph, truth


# ---------------------------------------------------------------------------
# result writers
# ---------------------------------------------------------------------------

RESULT_COLUMNS = ("dataset", "method", "params", "metric", "value", "communities", "runtime_ms")


def result_rows(results: Iterable) -> list[dict]:
    """Flatten ExperimentResults into one row per metric, sorted."""
    rows = []
    for res in results:
        for metric in res.metrics:
            rows.append(
                {
                    "dataset": res.dataset,
                    "method": res.method,
                    "params": res.params_string(),
                    "metric": metric.name,
                    "value": metric.value,
                    "communities": res.community_count,
                    "runtime_ms": res.runtime_ms,
                }
            )
    rows.sort(key=lambda r: (r["dataset"], r["method"], r["params"], r["metric"]))
    return rows


def write_results(results: Sequence, fmt: str, path) -> None:
    """Write results as CSV or JSON with a deterministic row order."""
    results = list(results)
    if not results:
        raise ValueError("no results to write")
    rows = result_rows(results)
    p = Path(path)
    if fmt == "csv":
        with open(p, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=RESULT_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    elif fmt == "json":
        p.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    else:
        raise ValueError(f"unknown output format {fmt!r}; expected 'csv' or 'json'")
