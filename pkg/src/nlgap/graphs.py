"""Graphs, uniform random d-regular sampling, edge switching, persistence.

Vertices are dense 0-indexed integers.  ``Multigraph`` is the raw projection
of a half-edge matching (loops and parallel edges allowed); ``Graph`` is a
validated simple graph stored as CSR adjacency with sorted neighbor lists.
Both are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels

__all__ = [
    "Multigraph",
    "Graph",
    "HalfEdgeMatching",
    "SamplingError",
    "SwitchRejected",
    "EdgeListParseError",
    "sample_matching",
    "sample_configuration",
    "is_simple",
    "sample_simple_regular",
    "switch_edges",
    "edges_between",
    "read_edge_list",
    "write_edge_list",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "petersen_graph",
]


class SamplingError(RuntimeError):
    """Rejection sampling exhausted its attempt budget."""

    def __init__(self, message, attempts):
        super().__init__(message)
        self.attempts = attempts


class SwitchRejected(ValueError):
    """An edge switch violated its preconditions; the caller may retry."""


class EdgeListParseError(ValueError):
    """Malformed edge-list text; ``line`` is the 1-based offending line."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _freeze(a):
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class HalfEdgeMatching:
    """Perfect matching on the n*d half-edges u_{i,j} (id = i*d + j)."""

    n: int
    d: int
    pairs: np.ndarray  # (n*d/2, 2) int32 half-edge ids
    seed: int | None = None

    def __post_init__(self):
        nd = self.n * self.d
        flat = np.sort(self.pairs.ravel())
        if flat.size != nd or not np.array_equal(flat, np.arange(nd)):
            raise ValueError("pairs must cover every half-edge exactly once")
        _freeze(self.pairs)

    def to_multigraph(self):
        return Multigraph(self.n, (self.pairs // self.d).astype(np.int32))


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Vertex count plus an edge multiset; loops and parallel edges allowed."""

    n: int
    edges: np.ndarray  # (E, 2) int32 unordered endpoint pairs

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=np.int32).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= self.n):
            raise ValueError("edge endpoint out of range")
        object.__setattr__(self, "edges", _freeze(e))

    @property
    def degrees(self):
        """Per-vertex degree; a loop contributes 2."""
        return np.bincount(self.edges.ravel(), minlength=self.n)

    @property
    def degree_sum(self):
        return 2 * len(self.edges)


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph in CSR form (sorted neighbor lists).

    ``d`` is the regularity degree, set automatically when all degrees agree
    (and the graph is nonempty); ``vol`` is the degree sum, n*d for
    d-regular graphs.
    """

    n: int
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)
    d: int | None = None

    def __post_init__(self):
        _freeze(self.indptr)
        _freeze(self.indices)

    @classmethod
    def from_edges(cls, n, edges):
        """Build and validate a simple graph from an iterable of (u, v) pairs."""
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64).reshape(-1, 2)
        if n < 1:
            raise ValueError("need at least one vertex")
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("loops are not allowed in a simple graph")
            key = np.minimum(e[:, 0], e[:, 1]) * n + np.maximum(e[:, 0], e[:, 1])
            if np.unique(key).size != key.size:
                raise ValueError("parallel edges are not allowed in a simple graph")
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order].astype(np.int32)
        deg = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int32)
        np.cumsum(deg, out=indptr[1:])
        d = None
        if n > 0 and deg.size and np.all(deg == deg[0]) and deg[0] > 0:
            d = int(deg[0])
        return cls(n=n, indptr=indptr, indices=indices, d=d)

    @property
    def degrees(self):
        return np.diff(self.indptr)

    @property
    def vol(self):
        """Degree sum (twice the edge count)."""
        return int(self.indices.size)

    @property
    def num_edges(self):
        return self.indices.size // 2

    @property
    def edges(self):
        """Canonical (E, 2) int32 edge array, u < v, lexicographically sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int32), self.degrees)
        mask = src < self.indices
        return _freeze(np.column_stack([src[mask], self.indices[mask]]))

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u, v):
        row = self.neighbors(u)
        k = np.searchsorted(row, v)
        return bool(k < row.size and row[k] == v)


def sample_matching(n, d, rng, *, seed=None):
    """Uniform perfect matching on the n*d half-edges.

    A uniform permutation paired off consecutively realizes the sequential
    scheme (pair the first free half-edge with a uniform choice among the
    rest, repeat), so the draw is uniform over all (nd-1)!! matchings.
    """
    _check_parity(n, d)
    perm = rng.permutation(n * d).astype(np.int32)
    return HalfEdgeMatching(n=n, d=d, pairs=perm.reshape(-1, 2), seed=seed)


def sample_configuration(n, d, rng, *, seed=None):
    """Configuration-model multigraph: projected uniform half-edge matching."""
    return sample_matching(n, d, rng, seed=seed).to_multigraph()


def _check_parity(n, d):
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d = {n * d} is odd: no d-regular graph exists")


def is_simple(g: Multigraph) -> bool:
    """True iff the multigraph has no loops and no parallel edges."""
    return kernels.simple_violation(g.edges[:, 0], g.edges[:, 1], g.n) == 0


def sample_simple_regular(n, d, rng, max_attempts=10_000):
    """Uniform simple d-regular graph by rejection; returns (graph, attempts).

    Conditioning the configuration model on simplicity is uniform over
    simple d-regular graphs; the acceptance rate tends to e^{-(d*d-1)/4},
    so rejection is practical only while d stays small.  d = n-1 has a
    unique simple graph (the complete one) and a vanishing acceptance
    rate, so it is returned directly.
    """
    _check_parity(n, d)
    if d >= n:
        raise ValueError("d must be smaller than n for a simple graph")
    if d == n - 1:
        return complete_graph(n), 1
    for attempt in range(1, max_attempts + 1):
        mg = sample_configuration(n, d, rng)
        if is_simple(mg):
            return Graph.from_edges(n, mg.edges), attempt
    raise SamplingError(
        f"no simple graph in {max_attempts} attempts (n={n}, d={d}); "
        "acceptance decays like e^(-(d*d-1)/4)", max_attempts)


def switch_edges(g: Graph, e1, e2, pairing=0) -> Graph:
    """Replace edges {u,v}, {x,y} by {u,x}, {v,y} (pairing=1: {u,y}, {v,x}).

    All four endpoints must be distinct, both edges present, and neither
    replacement edge may already exist; degrees are preserved exactly.
    Raises SwitchRejected otherwise (the caller may retry with another pair).
    """
    u, v = int(e1[0]), int(e1[1])
    x, y = int(e2[0]), int(e2[1])
    if pairing not in (0, 1):
        raise ValueError("pairing must be 0 or 1")
    if pairing == 1:
        x, y = y, x
    if len({u, v, x, y}) != 4:
        raise SwitchRejected("switch endpoints must be four distinct vertices")
    if not (g.has_edge(u, v) and g.has_edge(x, y)):
        raise SwitchRejected("both edges to switch must be present")
    if g.has_edge(u, x) or g.has_edge(v, y):
        raise SwitchRejected("replacement edge already present")
    e = g.edges
    key = np.minimum(e[:, 0], e[:, 1]).astype(np.int64) * g.n + np.maximum(e[:, 0], e[:, 1])
    drop = {min(u, v) * g.n + max(u, v), min(x, y) * g.n + max(x, y)}
    keep = ~np.isin(key, list(drop))
    new_edges = np.vstack([e[keep], [[u, x], [v, y]]])
    return Graph.from_edges(g.n, new_edges)


def edges_between(g: Graph, s, t) -> int:
    """Number of edges with one endpoint in S and the other in T (disjoint)."""
    s_mask = np.zeros(g.n, dtype=bool)
    t_mask = np.zeros(g.n, dtype=bool)
    s_mask[np.asarray(list(s), dtype=np.int64)] = True
    t_mask[np.asarray(list(t), dtype=np.int64)] = True
    if np.any(s_mask & t_mask):
        raise ValueError("S and T must be disjoint")
    e = g.edges
    if e.size == 0:
        return 0
    eu, ev = e[:, 0], e[:, 1]
    return int(np.count_nonzero((s_mask[eu] & t_mask[ev]) | (t_mask[eu] & s_mask[ev])))


def read_edge_list(text: str) -> Graph:
    """Parse the canonical edge-list format: "n e" header, then "u v" lines.

    Requires 0 <= u < v < n; loops, duplicates, malformed lines and index
    overruns raise EdgeListParseError with the offending line number.
    """
    lines = text.splitlines()
    if not lines:
        raise EdgeListParseError("empty input", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise EdgeListParseError("header must be 'n e'", 1)
    try:
        n, ne = int(head[0]), int(head[1])
    except ValueError:
        raise EdgeListParseError("header must contain two integers", 1) from None
    if n < 1 or ne < 0:
        raise EdgeListParseError("need n >= 1 and e >= 0", 1)
    body = [ln for ln in lines[1:]]
    if len(body) != ne:
        raise EdgeListParseError(f"expected {ne} edge lines, found {len(body)}",
                                 min(len(lines) + 1, ne + 2))
    edges = np.empty((ne, 2), dtype=np.int64)
    seen = set()
    for i, ln in enumerate(body):
        lineno = i + 2
        parts = ln.split()
        if len(parts) != 2:
            raise EdgeListParseError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError("edge endpoints must be integers", lineno) from None
        if u == v:
            raise EdgeListParseError("loop edge not allowed", lineno)
        if not (0 <= u < v < n):
            raise EdgeListParseError(f"need 0 <= u < v < n, got {u} {v}", lineno)
        if (u, v) in seen:
            raise EdgeListParseError(f"duplicate edge {u} {v}", lineno)
        seen.add((u, v))
        edges[i] = (u, v)
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    """Canonical text form: header, then edges sorted lexicographically."""
    e = g.edges
    out = [f"{g.n} {len(e)}"]
    out.extend(f"{u} {v}" for u, v in e)
    return "\n".join(out) + "\n"


def complete_graph(n) -> Graph:
    iu = np.triu_indices(n, k=1)
    return Graph.from_edges(n, np.column_stack(iu))


def cycle_graph(n) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    v = np.arange(n)
    return Graph.from_edges(n, np.column_stack([v, (v + 1) % n]))


def path_graph(n) -> Graph:
    v = np.arange(n - 1)
    return Graph.from_edges(n, np.column_stack([v, v + 1]))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
