"""Shortest-path metric of a graph: BFS distances, diameter, balls.

Distances are exact hop counts kept as integers; unreachable pairs carry
the explicit ``UNREACHABLE`` sentinel.  All-pairs matrices come from one
BFS per source (the graphs are sparse), run through the kernel backend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graphs import Graph

__all__ = [
    "UNREACHABLE",
    "DistanceMatrix",
    "DisconnectedGraphError",
    "bfs_distances",
    "all_pairs_distances",
    "diameter",
    "ball_size",
    "is_connected",
]

UNREACHABLE = np.int32(-1)


class DisconnectedGraphError(ValueError):
    """Raised where a finite metric is required but the graph is disconnected."""


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs hop distances of a graph; dist[a, b] = UNREACHABLE if no path."""

    dist: np.ndarray  # (m, m) int32

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=np.int32)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        object.__setattr__(self, "dist", d)
        d.setflags(write=False)

    @property
    def m(self) -> int:
        return self.dist.shape[0]

    @property
    def all_finite(self) -> bool:
        return bool(np.all(self.dist >= 0))

    def diameter(self) -> int:
        if not self.all_finite:
            raise DisconnectedGraphError("diameter undefined: unreachable pairs")
        return int(self.dist.max())

    def validate(self):
        """Assert symmetry, zero diagonal and the triangle inequality."""
        d = self.dist
        if not np.array_equal(d, d.T):
            raise AssertionError("distance matrix not symmetric")
        if np.any(np.diag(d) != 0):
            raise AssertionError("distance matrix diagonal not zero")
        big = np.where(d >= 0, d.astype(np.int64), np.int64(1) << 40)
        through = (big[:, :, None] + big[None, :, :]).min(axis=1)
        if np.any(big > through):
            raise AssertionError("triangle inequality violated")

    def to_tsv(self) -> str:
        return "\n".join("\t".join(str(int(x)) for x in row) for row in self.dist) + "\n"


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Exact hop distances from ``source``; UNREACHABLE marks no path."""
    if not 0 <= source < g.n:
        raise ValueError("source vertex out of range")
    return kernels.bfs_int32(g.indptr, g.indices, g.n, int(source))


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(kernels.all_pairs_int32(g.indptr, g.indices, g.n))


def diameter(g: Graph) -> int:
    """Largest pairwise distance; raises DisconnectedGraphError if unreachable."""
    return all_pairs_distances(g).diameter()


def ball_size(g: Graph, v: int, k: int) -> int:
    """|{u : dist(v, u) <= k}|; for d-regular graphs at most (d^(k+1)-1)/(d-1)."""
    dist = bfs_distances(g, v)
    return int(np.count_nonzero((dist >= 0) & (dist <= k)))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return kernels.reach_count(g.indptr, g.indices, g.n, 0) == g.n
