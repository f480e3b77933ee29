"""Canonical node-to-community assignment."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Partition:
    """Total assignment of nodes to communities.

    Labels are canonical: communities are numbered 0..community_count-1 in
    order of first appearance along the node id axis.
    """

    labels: tuple[int, ...]
    community_count: int

    @classmethod
    def from_labels(cls, labels: Iterable[object]) -> "Partition":
        """Canonicalize an arbitrary label sequence (ints, strings, ...)."""
        seen: dict[object, int] = {}
        canonical = tuple(seen.setdefault(lab, len(seen)) for lab in labels)
        return cls(labels=canonical, community_count=len(seen))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(labels=tuple(range(n)), community_count=n)

    def __len__(self) -> int:
        return len(self.labels)

    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.community_count
        for lab in self.labels:
            counts[lab] += 1
        return tuple(counts)

    def communities(self) -> tuple[tuple[int, ...], ...]:
        """Member node ids per community, ascending within each."""
        groups: list[list[int]] = [[] for _ in range(self.community_count)]
        for node, lab in enumerate(self.labels):
            groups[lab].append(node)
        return tuple(tuple(g) for g in groups)

    def as_sets(self) -> set[frozenset[int]]:
        """Label-free view, convenient for comparing partitions."""
        return {frozenset(c) for c in self.communities()}
