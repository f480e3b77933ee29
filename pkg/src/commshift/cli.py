"""Command-line interface.

Subcommands:

* ``cluster`` -- one method on one graph file, printing metrics and
  optionally writing the per-node assignment;
* ``suite``  -- run a config file of experiments against a dataset
  manifest and write a result table;
* ``fetch``  -- download manifest datasets and (optionally) pin their
  checksums.
"""

from __future__ import annotations

import argparse
import gzip
import io as io_module
import json
import os
import sys
import time
import urllib.request
import zipfile
from pathlib import Path

from . import baselines, shift
from .errors import CommshiftError
from .graph import build_graph
from .harness import (
    ExperimentResult,
    format_table,
    parse_suite_config,
    run_experiment,
)
from .io import (
    align_ground_truth,
    load_edge_list,
    load_gml,
    load_ground_truth,
    load_manifest,
    sha256_of,
    write_results,
)
from .metrics import modularity, nmi
from .partition import Partition
from .similarity import build_knn, build_similarity, resolve_mode


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commshift",
        description="Community detection toolkit: shift clustering, baselines, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cluster = sub.add_parser("cluster", help="run one method on one graph file")
    cluster.add_argument("--input", required=True, help="graph file path")
    cluster.add_argument("--format", required=True, choices=("edgelist", "gml"))
    cluster.add_argument(
        "--method",
        required=True,
        choices=("rms", "medoid-shift", "louvain", "label-propagation",
                 "girvan-newman", "spectral"),
    )
    cluster.add_argument("--k", type=int, default=5, help="KNN size for rms")
    cluster.add_argument("--num-clusters", type=int, help="cluster count for spectral")
    cluster.add_argument("--seed", type=int, default=0)
    cluster.add_argument("--resolution", type=float, default=1.0, help="louvain resolution")
    cluster.add_argument("--target", type=int, help="community target for girvan-newman")
    cluster.add_argument("--max-sweeps", type=int, default=100)
    cluster.add_argument("--weighted", action="store_true",
                         help="read the third edge-list column as weights")
    cluster.add_argument("--directed", action="store_true",
                         help="aggregate directed edge records")
    cluster.add_argument("--unweighted-betweenness", action="store_true",
                         help="ignore weights in girvan-newman betweenness")
    cluster.add_argument("--ground-truth", help="community file (or GML with values)")
    cluster.add_argument("--output", help="write per-node 'name label' assignment here")
    cluster.add_argument("--output-format", choices=("csv", "json"), default="csv")
    cluster.add_argument("--metric", choices=("modularity", "nmi", "both"),
                         default="modularity")

    suite = sub.add_parser("suite", help="run an experiment suite from a config file")
    suite.add_argument("config", help="suite config file")
    suite.add_argument("--manifest", required=True, help="dataset manifest JSON")
    suite.add_argument("--data-dir", help="base directory for manifest paths "
                                          "(default: the manifest's directory)")
    suite.add_argument("--output", required=True, help="result file path")
    suite.add_argument("--output-format", choices=("csv", "json"), default="csv")
    suite.add_argument("--zero-runtimes", action="store_true",
                       help="write 0 runtimes for byte-reproducible output")
    suite.add_argument("--long-run", action="store_true",
                       help="allow datasets marked long_run in the manifest")

    fetch = sub.add_parser("fetch", help="download datasets listed in a manifest")
    fetch.add_argument("--manifest", required=True)
    fetch.add_argument("--data-dir", help="destination directory (default: manifest dir)")
    fetch.add_argument("--name", action="append", help="fetch only these datasets")
    fetch.add_argument("--pin", action="store_true",
                       help="write computed sha256 checksums back to the manifest")
    return parser


# ---------------------------------------------------------------------------
# cluster
# ---------------------------------------------------------------------------


def _load_truth_arg(path: str):
    if str(path).endswith(".gml"):
        _, truth = load_gml(path)
        if truth is None:
            raise CommshiftError(f"{path}: GML file has no node values to use as truth")
        return truth
    return load_ground_truth(path)


def _load_input(args) -> tuple:
    truth = _load_truth_arg(args.ground_truth) if args.ground_truth else None
    if args.format == "gml":
        graph, _ = load_gml(args.input)
        return graph, truth
    # truth-only nodes join the graph as isolated nodes so scoring is total
    extra = sorted(truth.labels) if truth is not None else ()
    graph = load_edge_list(
        args.input,
        directed=args.directed,
        weighted=args.weighted,
        isolated_nodes=extra,
    )
    return graph, truth


def _run_cluster(args, parser: argparse.ArgumentParser) -> int:
    wants_nmi = args.metric in ("nmi", "both")
    if wants_nmi and not args.ground_truth:
        parser.error("--metric nmi requires --ground-truth")
    if args.method == "spectral" and args.num_clusters is None:
        parser.error("--method spectral requires --num-clusters")

    graph, truth = _load_input(args)
    start = time.perf_counter()
    converged = None
    if args.method == "rms":
        mode = resolve_mode(graph, "auto")
        sim = build_similarity(graph, mode)
        knn = build_knn(sim, args.k)
        _, part = shift.rms_cluster(sim, knn)
    elif args.method == "medoid-shift":
        part = shift.medoid_shift(shift.graph_to_distance(graph))
    elif args.method == "louvain":
        part = baselines.louvain(graph, args.resolution, args.seed)
    elif args.method == "label-propagation":
        part, converged = baselines.label_propagation(graph, args.seed, args.max_sweeps)
    elif args.method == "girvan-newman":
        if args.unweighted_betweenness:
            # rebuild with unit weights so betweenness ignores them
            records = [
                (graph.node_names[u], graph.node_names[v], 1.0)
                for u, v, _ in graph.edges()
            ]
            unit = build_graph(records) if records else graph
            _, part = baselines.girvan_newman(unit, args.target)
        else:
            _, part = baselines.girvan_newman(graph, args.target)
    else:
        part = baselines.spectral_ncut(graph, args.num_clusters, args.seed)
    runtime_ms = (time.perf_counter() - start) * 1000.0

    print(f"nodes: {graph.node_count}  edges: {graph.edge_count}")
    print(f"communities: {part.community_count}")
    if args.metric in ("modularity", "both"):
        print(f"modularity: {modularity(graph, part):.6f}")
    if wants_nmi:
        ids, truth_part = align_ground_truth(graph, truth)
        detected = Partition.from_labels(part.labels[i] for i in ids)
        print(f"nmi: {nmi(detected, truth_part):.6f}")
    if converged is not None and not converged:
        print("warning: label propagation hit the sweep cap before stabilizing")
    print(f"runtime_ms: {runtime_ms:.2f}")

    if args.output:
        _write_assignment(graph, part, args.output, args.output_format)
        print(f"assignment written to {args.output}")
    return 0


def _write_assignment(graph, part: Partition, path, fmt: str) -> None:
    if fmt == "json":
        payload = {
            graph.node_names[i]: int(part.labels[i]) for i in range(graph.node_count)
        }
        Path(path).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    else:
        with open(path, "w", encoding="utf-8") as fh:
            for i in range(graph.node_count):
                fh.write(f"{graph.node_names[i]} {part.labels[i]}\n")


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------


def _data_dir_for(args, manifest_path: str) -> Path:
    """--data-dir flag, then COMMSHIFT_DATA_DIR, then the manifest's directory."""
    if getattr(args, "data_dir", None):
        return Path(args.data_dir)
    env = os.environ.get("COMMSHIFT_DATA_DIR")
    if env:
        return Path(env)
    return Path(manifest_path).parent


def _run_suite(args) -> int:
    specs = parse_suite_config(args.config)
    manifests = load_manifest(args.manifest)
    base_dir = _data_dir_for(args, args.manifest)

    all_results: list[ExperimentResult] = []
    failures: list[str] = []
    for index, spec in enumerate(specs):
        try:
            all_results.extend(
                run_experiment(
                    spec,
                    manifests,
                    base_dir=base_dir,
                    zero_runtimes=args.zero_runtimes,
                    allow_long_run=args.long_run,
                )
            )
        except CommshiftError as exc:
            failures.append(f"spec {index + 1} ({spec.dataset}/{spec.method}): {exc}")

    if all_results:
        write_results(all_results, args.output_format, args.output)
        print(format_table(all_results))
        print(f"\n{len(all_results)} result rows written to {args.output}")
    if failures:
        print(f"\n{len(failures)} spec(s) failed:", file=sys.stderr)
        for failure in failures:
            print(f"  - {failure}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# fetch
# ---------------------------------------------------------------------------


def _extract_payload(url: str, blob: bytes, dest: Path) -> bytes:
    if url.endswith(".zip"):
        with zipfile.ZipFile(io_module.BytesIO(blob)) as zf:
            members = [m for m in zf.namelist() if m.endswith(dest.suffix)]
            if not members:
                members = [m for m in zf.namelist() if not m.endswith("/")]
            if not members:
                raise CommshiftError(f"{url}: empty archive")
            return zf.read(members[0])
    if url.endswith(".gz"):
        return gzip.decompress(blob)
    return blob


def _run_fetch(args) -> int:
    manifest_path = Path(args.manifest)
    manifests = load_manifest(manifest_path)
    dest_dir = _data_dir_for(args, args.manifest)
    dest_dir.mkdir(parents=True, exist_ok=True)
    names = args.name or sorted(manifests)

    pinned: dict[str, str] = {}
    failures = []
    for name in names:
        if name not in manifests:
            failures.append(f"{name}: not in manifest")
            continue
        entry = manifests[name]
        dest = dest_dir / entry.path
        if dest.exists():
            print(f"{name}: already present at {dest}")
        elif entry.url is None:
            failures.append(f"{name}: no url pinned; obtain {entry.path} manually")
            continue
        else:
            try:
                print(f"{name}: downloading {entry.url}")
                with urllib.request.urlopen(entry.url, timeout=60) as resp:
                    blob = resp.read()
                dest.parent.mkdir(parents=True, exist_ok=True)
                dest.write_bytes(_extract_payload(entry.url, blob, dest))
            except Exception as exc:
                failures.append(f"{name}: download failed: {exc}")
                continue
        digest = sha256_of(dest)
        if entry.sha256 is not None and entry.sha256 != digest:
            failures.append(
                f"{name}: checksum mismatch (expected {entry.sha256}, got {digest})"
            )
        pinned[name] = digest
        print(f"{name}: sha256 {digest}")

    if args.pin and pinned:
        payload = json.loads(manifest_path.read_text(encoding="utf-8"))
        for entry in payload.get("datasets", []):
            if entry.get("name") in pinned:
                entry["sha256"] = pinned[entry["name"]]
        manifest_path.write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )
        print(f"checksums pinned in {manifest_path}")

    for failure in failures:
        print(f"error: {failure}", file=sys.stderr)
    return 1 if failures else 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "cluster":
            return _run_cluster(args, parser)
        if args.command == "suite":
            return _run_suite(args)
        if args.command == "fetch":
            return _run_fetch(args)
    except CommshiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
