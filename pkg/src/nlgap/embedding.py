"""Randomized embedding of a finite metric into Euclidean space.

Coordinates are distances to random point subsets, one block of ``q``
repetitions per scale t = 1..floor(log2 m) with inclusion probability
2^-t, giving K = T*q dimensions.  Every coordinate map is 1-Lipschitz, so
||g(x) - g(y)|| <= sqrt(K) * d(x, y) holds exactly; the contraction side
is measured, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gamma import VertexMap
from .metric import DistanceMatrix

__all__ = [
    "Embedding",
    "DistortionReport",
    "default_reps",
    "bourgain_embed",
    "distortion",
    "compose_map",
]


@dataclass(frozen=True, eq=False)
class Embedding:
    """Point coordinates (one row per metric point) plus generation parameters."""

    points: np.ndarray  # (m, K) float64
    num_scales: int
    reps: int
    scale: float = 1.0
    seed: int | None = None

    def __post_init__(self):
        self.points.setflags(write=False)
        if self.points.ndim != 2:
            raise ValueError("points must be an (m, K) array")
        if self.num_scales * self.reps != self.dimension:
            raise ValueError("dimension must equal num_scales * reps")

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def to_text(self) -> str:
        return "\n".join("\t".join(f"{x:.17g}" for x in row)
                         for row in self.points) + "\n"


def default_reps(m: int) -> int:
    """ceil(4*log2 m) repetitions per scale, so K grows like log^2 m."""
    return math.ceil(4 * math.log2(m))


def bourgain_embed(dist_x: DistanceMatrix, rng, q: int | None = None,
                   *, seed: int | None = None) -> Embedding:
    """Embed an m-point metric into R^(T*q), T = floor(log2 m).

    Coordinate (t, j) of x is d(x, A_{t,j}) for a random subset A_{t,j}
    containing each point independently with probability 2^-t; an empty
    draw contributes a zero coordinate (still 1-Lipschitz).  Columns are
    laid out in (t, j)-lexicographic order, so a fixed rng state
    reproduces the embedding exactly.  No normalization is applied; the
    ``scale`` field records the factor 1.0.
    """
    m = dist_x.m
    if m < 2:
        raise ValueError("embedding needs at least two points")
    if not dist_x.all_finite:
        raise ValueError("embedding needs a finite (connected) metric")
    if q is None:
        q = default_reps(m)
    if q < 1:
        raise ValueError("need at least one repetition per scale")
    num_scales = int(math.floor(math.log2(m)))
    dist = dist_x.dist.astype(np.float64)
    cols = []
    for t in range(1, num_scales + 1):
        p = 2.0 ** -t
        for _ in range(q):
            members = rng.random(m) < p
            if members.any():
                cols.append(dist[:, members].min(axis=1))
            else:
                cols.append(np.zeros(m))
    points = np.column_stack(cols)
    return Embedding(points=points, num_scales=num_scales, reps=q, seed=seed)


@dataclass(frozen=True)
class DistortionReport:
    """max_expansion * max_contraction over all distinct pairs.

    ``max_contraction`` is inf when some distinct pair collapses to the
    same embedded point; collapsed pairs are counted, not raised.
    """

    max_expansion: float
    max_contraction: float
    distortion: float
    collapsed_pairs: int


def distortion(dist_x: DistanceMatrix, emb: Embedding) -> DistortionReport:
    if emb.m != dist_x.m:
        raise ValueError("embedding and metric have different point counts")
    m = dist_x.m
    if m < 2:
        return DistortionReport(1.0, 1.0, 1.0, 0)
    p = emb.points
    iu, ju = np.triu_indices(m, k=1)
    diff = p[iu] - p[ju]
    norms = np.sqrt(np.sum(diff * diff, axis=1))
    dists = dist_x.dist[iu, ju].astype(np.float64)
    if np.any(dists < 0):
        raise ValueError("metric has unreachable pairs")
    expansion = float((norms / dists).max())
    collapsed = int(np.count_nonzero(norms == 0.0))
    if collapsed:
        contraction = math.inf
    else:
        contraction = float((dists / norms).max())
    return DistortionReport(max_expansion=expansion, max_contraction=contraction,
                            distortion=expansion * contraction,
                            collapsed_pairs=collapsed)


def compose_map(f: VertexMap, emb: Embedding) -> np.ndarray:
    """F = g o f: one embedded point per vertex of G, as an (n, K) array."""
    if f.m != emb.m:
        raise ValueError("vertex map range does not match embedding points")
    return emb.points[f.values]
