from __future__ import annotations

import os
from pathlib import Path

import numpy as np
import pytest

from commshift import build_graph


def dataset_dir() -> Path:
    """Where fetched benchmark datasets live."""
    env = os.environ.get("COMMSHIFT_DATA_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "datasets"


@pytest.fixture
def triangle():
    return build_graph([("a", "b"), ("b", "c"), ("c", "a")])


@pytest.fixture
def barbell():
    """Two unit triangles joined by one bridge edge."""
    return build_graph(
        [
            ("0", "1"), ("1", "2"), ("2", "0"),
            ("3", "4"), ("4", "5"), ("5", "3"),
            ("2", "3"),
        ]
    )


@pytest.fixture
def two_triangles():
    return build_graph(
        [("0", "1"), ("1", "2"), ("2", "0"), ("3", "4"), ("4", "5"), ("5", "3")]
    )


@pytest.fixture
def path3():
    return build_graph([("a", "b"), ("b", "c")])


def random_graph(rng: np.random.Generator, n: int | None = None, max_n: int = 8,
                 p: float | None = None, weighted: bool = False,
                 ensure_edge: bool = True):
    """Seeded G(n, p)-style test graph over string node names 0..n-1."""
    if n is None:
        n = int(rng.integers(2, max_n + 1))
    if p is None:
        p = float(rng.uniform(0.2, 0.8))
    records = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                w = float(rng.uniform(0.5, 3.0)) if weighted else 1.0
                records.append((str(i), str(j), w))
    if not records and ensure_edge and n >= 2:
        records.append(("0", "1", 1.0))
    # self-loop records register isolated nodes and are dropped by the builder
    records += [(str(i), str(i), 1.0) for i in range(n)]
    return build_graph(records)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


def lesmis_graph():
    """Les Miserables co-occurrence graph built from networkx's copy."""
    nx = pytest.importorskip("networkx")
    nxg = nx.les_miserables_graph()
    records = [(u, v, float(d.get("weight", 1.0))) for u, v, d in nxg.edges(data=True)]
    return build_graph(records)
