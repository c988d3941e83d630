"""The nonlinear spectral gap functional and its adversarial estimation.

For a d-regular graph G, a host metric d_H and f: V(G) -> V(H),

    gamma(G, d_H, f) = (d/n) * pair_sum / edge_sum,

where pair_sum ranges over ORDERED vertex pairs and edge_sum over DIRECTED
edges of G (each undirected edge twice).  Under these conventions the
real-line specialization satisfies gamma * lambda_1 = 1 exactly, and every
nondegenerate value is >= 1/4.  Graph-metric sums are computed in exact
integer arithmetic; only the final ratio is floating point.

``gamma_sup_estimate`` searches sup_f gamma(G, d_H, f) by restarted hill
climbing over single-vertex image reassignments with O(n + m) incremental
updates per move (the hot path lives in the kernel backend), plus an
exact Gray-code enumeration mode for brute-force scale instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graphs import Graph
from .metric import DisconnectedGraphError, DistanceMatrix

__all__ = [
    "VertexMap",
    "PartitionStats",
    "GammaReport",
    "NearPairReport",
    "SearchStrategy",
    "ClimbTrace",
    "SearchResult",
    "partition_stats",
    "in_function_class",
    "gamma_value",
    "gamma_vector",
    "gamma_real",
    "near_pair_report",
    "random_map",
    "balanced_map",
    "gamma_sup_estimate",
]


@dataclass(frozen=True, eq=False)
class VertexMap:
    """f: V(G) -> V(H) stored as an image index per vertex."""

    values: np.ndarray  # int32, length n, entries in [0, m)
    m: int

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.int32)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("values must be a nonempty 1-d array")
        if self.m < 1 or v.min() < 0 or v.max() >= self.m:
            raise ValueError("image index out of range")
        object.__setattr__(self, "values", v)
        v.setflags(write=False)

    @property
    def n(self) -> int:
        return self.values.size

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(str(int(x)) for x in self.values)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "VertexMap":
        lines = text.splitlines()
        if not lines:
            raise ValueError("empty vertex-map text")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError("vertex-map header must be 'n m'")
        n, m = int(head[0]), int(head[1])
        body = lines[1:]
        if len(body) != n:
            raise ValueError(f"expected {n} image lines, found {len(body)}")
        return cls(np.array([int(x) for x in body], dtype=np.int32), m)


@dataclass(frozen=True, eq=False)
class PartitionStats:
    """Sizes s_i of the preimage partition induced by a vertex map."""

    sizes: np.ndarray  # int64, length m
    max_size: int
    _values: np.ndarray = field(repr=False)

    def preimage(self, i: int) -> np.ndarray:
        return np.flatnonzero(self._values == i)


@dataclass(frozen=True)
class GammaReport:
    """Raw pair/edge sums and the gamma ratio for one (G, d_H, f) triple.

    When edge_sum = 0 the ratio is a 0/0; it is reported as degenerate with
    gamma = None, never as 0 or infinity.
    """

    pair_sum: int | float
    edge_sum: int | float
    gamma: float | None
    degenerate: bool


@dataclass(frozen=True)
class NearPairReport:
    """Counts around the near-pair set {(u, v) : d_H(f(u), f(v)) <= alpha*D}.

    ``near_pair_count`` ranges over ordered vertex pairs (diagonal included);
    ``crossing_edge_count`` counts directed edges of G landing in the set,
    compared against the threshold beta*d*n.
    """

    alpha: float
    diameter: int
    near_pair_count: int
    crossing_edge_count: int
    edge_threshold: float
    within_threshold: bool


def partition_stats(f: VertexMap) -> PartitionStats:
    sizes = np.bincount(f.values, minlength=f.m).astype(np.int64)
    return PartitionStats(sizes=sizes, max_size=int(sizes.max()), _values=f.values)


def in_function_class(f: VertexMap, delta: float) -> bool:
    """True iff every preimage has size at most n/delta."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return partition_stats(f).max_size <= f.n / delta


def _require_regular(g: Graph):
    if g.d is None:
        raise ValueError("gamma is defined here for regular graphs only")


def _check_overflow(n, d, d2_max):
    # exact int64 fraction comparisons need pair_sum * edge_sum < 2^62
    if (n * n * d2_max) * (n * d * d2_max) >= 2**62:
        raise ValueError("instance too large for exact int64 gamma arithmetic")


def _squared_dists(dist_h: DistanceMatrix) -> np.ndarray:
    d = dist_h.dist.astype(np.int64)
    return d * d


def _gamma_sums(g: Graph, d2: np.ndarray, values: np.ndarray) -> tuple[int, int]:
    """Exact (ordered-pair sum, directed-edge sum) of squared host distances."""
    sizes = np.bincount(values, minlength=d2.shape[0]).astype(np.int64)
    pair = int(sizes @ d2 @ sizes)
    e = g.edges
    edge = 2 * int(d2[values[e[:, 0]], values[e[:, 1]]].sum()) if e.size else 0
    return pair, edge


def _report_from_sums(g: Graph, pair, edge) -> GammaReport:
    if edge == 0:
        return GammaReport(pair_sum=pair, edge_sum=edge, gamma=None, degenerate=True)
    return GammaReport(pair_sum=pair, edge_sum=edge,
                       gamma=(g.d * pair) / (g.n * edge), degenerate=False)


def gamma_value(g: Graph, dist_h: DistanceMatrix, f: VertexMap) -> GammaReport:
    """gamma(G, d_H, f) with exact integer pair/edge sums."""
    _require_regular(g)
    if f.n != g.n:
        raise ValueError("vertex map length must equal |V(G)|")
    if f.m != dist_h.m:
        raise ValueError("vertex map range must match the host metric")
    used = np.unique(f.values)
    if np.any(dist_h.dist[np.ix_(used, used)] < 0):
        raise DisconnectedGraphError("f hits host points at infinite distance")
    d2 = _squared_dists(dist_h)
    _check_overflow(g.n, g.d, int(d2.max()) if d2.size else 0)
    pair, edge = _gamma_sums(g, d2, f.values)
    return _report_from_sums(g, pair, edge)


def gamma_vector(g: Graph, points) -> GammaReport:
    """gamma of G mapped into Euclidean space: points is an (n, k) array."""
    _require_regular(g)
    p = np.asarray(points, dtype=np.float64)
    if p.ndim == 1:
        p = p[:, None]
    if p.shape[0] != g.n:
        raise ValueError("expected one point per vertex")
    q = p - p.mean(axis=0)
    col = q.sum(axis=0)
    pair = 2.0 * g.n * float(np.sum(q * q)) - 2.0 * float(col @ col)
    e = g.edges
    diff = q[e[:, 0]] - q[e[:, 1]]
    edge = 2.0 * float(np.sum(diff * diff))
    if edge == 0.0:
        return GammaReport(pair_sum=pair, edge_sum=edge, gamma=None, degenerate=True)
    return GammaReport(pair_sum=pair, edge_sum=edge,
                       gamma=(g.d * pair) / (g.n * edge), degenerate=False)


def gamma_real(g: Graph, values) -> GammaReport:
    """Real-line specialization; equals 1/lambda_1 on the lambda_1 eigenvector."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError("expected one real value per vertex")
    return gamma_vector(g, v[:, None])


def near_pair_report(g: Graph, dist_h: DistanceMatrix, f: VertexMap,
                     alpha: float, beta: float) -> NearPairReport:
    """Counts of image-close pairs and of G-edges among them (threshold beta*d*n)."""
    _require_regular(g)
    if not 0 < alpha <= 1:
        raise ValueError("alpha must be in (0, 1]")
    if beta <= 0:
        raise ValueError("beta must be positive")
    if f.n != g.n or f.m != dist_h.m:
        raise ValueError("vertex map does not match graph/host")
    diam = dist_h.diameter()  # raises DisconnectedGraphError when infinite
    near = dist_h.dist <= alpha * diam
    sizes = np.bincount(f.values, minlength=f.m).astype(np.int64)
    near_pairs = int(sizes @ near.astype(np.int64) @ sizes)
    e = g.edges
    crossing = 2 * int(np.count_nonzero(near[f.values[e[:, 0]], f.values[e[:, 1]]])) \
        if e.size else 0
    threshold = beta * g.d * g.n
    return NearPairReport(alpha=float(alpha), diameter=diam,
                          near_pair_count=near_pairs,
                          crossing_edge_count=crossing,
                          edge_threshold=threshold,
                          within_threshold=crossing <= threshold)


# ---------------------------------------------------------------------------
# sup_f gamma(G, d_H, f) estimation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchStrategy:
    """Budget for the adversarial search.

    ``restarts`` hill climbs (the first seeded from the best of ``samples``
    random maps, the rest from fresh random maps), each limited to
    ``move_budget`` accepted moves.  ``delta`` restricts the search to the
    function class F(delta): class sizes never exceed n/delta (random seeds
    are then balanced-shuffled so they start inside the class).
    ``exhaustive=True`` ignores the budgets and enumerates all m^n maps by a
    Gray-code walk of single-vertex moves; this is brute-force scale only.
    """

    restarts: int = 4
    samples: int = 64
    move_budget: int = 100_000
    delta: float | None = None
    exhaustive: bool = False


@dataclass
class ClimbTrace:
    seed_gamma: float | None
    gammas: list[float]


@dataclass
class SearchResult:
    best_map: VertexMap
    report: GammaReport
    nondegenerate_found: bool
    samples_evaluated: int
    sample_best_gamma: float | None
    climbs: list[ClimbTrace]
    moves_total: int
    degenerate_samples: int = 0


def random_map(n: int, m: int, rng) -> VertexMap:
    return VertexMap(rng.integers(0, m, size=n, dtype=np.int32), m)


def balanced_map(n: int, m: int, rng=None) -> VertexMap:
    """Round-robin image assignment (sizes differ by at most 1), shuffled if rng given."""
    vals = (np.arange(n, dtype=np.int32) % m).astype(np.int32)
    if rng is not None:
        rng.shuffle(vals)
    return VertexMap(vals, m)


class _SearchState:
    """Mutable climb state with O(n + m) incremental move updates.

    Cached quantities: class sizes s, w = d2 @ s, exact pair/edge sums.
    A move v: a -> c changes pair_sum by 2*(w[c] - w[a] - d2[a, c]) and
    edge_sum by 2 * sum_{u ~ v} (d2[c, f(u)] - d2[a, f(u)]).
    """

    def __init__(self, g: Graph, d2: np.ndarray, values: np.ndarray, cap: int):
        self.g = g
        self.d2 = np.ascontiguousarray(d2, dtype=np.int64)
        self.f = np.ascontiguousarray(values, dtype=np.int32).copy()
        self.m = d2.shape[0]
        self.cap = cap
        self.sizes = np.bincount(self.f, minlength=self.m).astype(np.int64)
        self.w = self.d2 @ self.sizes
        pair, edge = _gamma_sums(g, self.d2, self.f)
        self.pair = pair
        self.edge = edge

    def gamma(self):
        if self.edge == 0:
            return None
        return (self.g.d * self.pair) / (self.g.n * self.edge)

    def sweep(self):
        return kernels.sweep_best_move(self.g.indptr, self.g.indices, self.f,
                                       self.sizes, self.w, self.d2,
                                       self.pair, self.edge, self.cap)

    def eval_move(self, v: int, c: int):
        """(new_pair, new_edge) after moving vertex v to image c; O(deg + 1)."""
        a = int(self.f[v])
        num = self.pair + 2 * int(self.w[c] - self.w[a] - self.d2[a, c])
        nbr = self.f[self.g.neighbors(v)]
        den = self.edge + 2 * int((self.d2[c, nbr] - self.d2[a, nbr]).sum())
        return num, den

    def apply(self, v: int, c: int, num: int, den: int):
        a = int(self.f[v])
        self.f[v] = c
        self.sizes[a] -= 1
        self.sizes[c] += 1
        self.w += self.d2[:, c] - self.d2[:, a]
        self.pair = num
        self.edge = den


def _better(num, den, best_num, best_den):
    """Exact fraction comparison num/den > best_num/best_den (dens > 0)."""
    return num * best_den > best_num * den


def _climb(state: _SearchState, budget: int) -> ClimbTrace:
    trace = ClimbTrace(seed_gamma=state.gamma(), gammas=[])
    moves = 0
    while moves < budget:
        mv = state.sweep()
        if mv is None:
            break
        state.apply(*mv)
        moves += 1
        trace.gammas.append(state.gamma())
    return trace


def _exhaustive_max(g: Graph, d2: np.ndarray, cap: int):
    """Exact max over all m^n maps via a base-m Gray-code walk.

    Consecutive maps differ in a single vertex image, so the walk reuses the
    incremental move update.  Returns (values, pair, edge) of the best
    in-class nondegenerate map, or None if every map is degenerate.
    """
    n, m = g.n, d2.shape[0]
    if m**n > 4_000_000:
        raise ValueError("exhaustive enumeration beyond brute-force scale")
    state = _SearchState(g, d2, np.zeros(n, dtype=np.int32), cap=-1)
    over = 0 if cap < 0 else int(np.count_nonzero(state.sizes > cap))
    best = None

    def consider():
        nonlocal best
        if over or state.edge <= 0:
            return
        if best is None or _better(state.pair, state.edge, best[1], best[2]):
            best = (state.f.copy(), state.pair, state.edge)

    consider()
    dirs = np.ones(n, dtype=np.int64)
    while True:
        i = 0
        while i < n:
            nxt = int(state.f[i]) + int(dirs[i])
            if 0 <= nxt < m:
                break
            dirs[i] = -dirs[i]
            i += 1
        if i == n:
            break
        a, c = int(state.f[i]), nxt
        num, den = state.eval_move(i, c)
        if cap >= 0:
            if state.sizes[c] == cap:  # crosses the cap on this move
                over += 1
            if state.sizes[a] == cap + 1:  # drops back to the cap
                over -= 1
        state.apply(i, c, num, den)
        consider()
    return best


def gamma_sup_estimate(g: Graph, dist_h: DistanceMatrix,
                       strategy: SearchStrategy, rng) -> SearchResult:
    """Estimate sup_f gamma(G, d_H, f); the result is a lower bound on the sup.

    Within a climb the gamma trace is strictly increasing; ties between
    equally good moves break to the lowest vertex then lowest image index,
    so a fixed seed reproduces the search exactly.
    """
    _require_regular(g)
    if not dist_h.all_finite:
        raise DisconnectedGraphError("host metric has unreachable pairs")
    if not strategy.exhaustive and strategy.restarts <= 0 and strategy.samples <= 0:
        raise ValueError("empty search strategy")
    n, m = g.n, dist_h.m
    d2 = _squared_dists(dist_h)
    _check_overflow(n, g.d, int(d2.max()) if d2.size else 0)

    cap = -1
    if strategy.delta is not None:
        if strategy.delta <= 0:
            raise ValueError("delta must be positive")
        cap = math.floor(n / strategy.delta)
        if cap < math.ceil(n / m):
            raise ValueError(f"F(delta) is empty: size cap {cap} below ceil(n/m)")

    def finish(values, nondegenerate, samples_eval, sample_best, climbs, moves,
               degenerate_samples=0):
        vm = VertexMap(values, m)
        pair, edge = _gamma_sums(g, d2, vm.values)
        return SearchResult(best_map=vm, report=_report_from_sums(g, pair, edge),
                            nondegenerate_found=nondegenerate,
                            samples_evaluated=samples_eval,
                            sample_best_gamma=sample_best,
                            climbs=climbs, moves_total=moves,
                            degenerate_samples=degenerate_samples)

    if m == 1:
        # every map is constant, hence degenerate: report, don't search
        return finish(np.zeros(n, dtype=np.int32), False, 0, None, [], 0)

    if strategy.exhaustive:
        best = _exhaustive_max(g, d2, cap)
        if best is None:
            return finish(np.zeros(n, dtype=np.int32), False, 0, None, [], 0)
        return finish(best[0], True, 0, None, [], 0)

    def draw():
        if strategy.delta is None:
            return random_map(n, m, rng).values
        return balanced_map(n, m, rng).values

    best = None  # (values, pair, edge)

    def offer(values, pair, edge):
        nonlocal best
        if edge > 0 and (best is None or _better(pair, edge, best[1], best[2])):
            best = (values.copy(), pair, edge)

    sample_best = None  # same shape, used to seed the first climb
    degenerate_samples = 0
    for _ in range(max(0, strategy.samples)):
        values = draw()
        pair, edge = _gamma_sums(g, d2, values)
        if edge == 0:
            degenerate_samples += 1
        offer(values, pair, edge)
        if edge > 0 and (sample_best is None
                         or _better(pair, edge, sample_best[1], sample_best[2])):
            sample_best = (values.copy(), pair, edge)

    sample_best_gamma = None
    if sample_best is not None:
        sample_best_gamma = (g.d * sample_best[1]) / (n * sample_best[2])

    climbs = []
    moves_total = 0
    for r in range(max(0, strategy.restarts)):
        if r == 0 and sample_best is not None:
            seed_values = sample_best[0]
        else:
            seed_values = draw()
        state = _SearchState(g, d2, seed_values, cap)
        trace = _climb(state, strategy.move_budget)
        climbs.append(trace)
        moves_total += len(trace.gammas)
        offer(state.f, state.pair, state.edge)

    if best is None:
        return finish(draw(), False, max(0, strategy.samples),
                      sample_best_gamma, climbs, moves_total, degenerate_samples)
    return finish(best[0], True, max(0, strategy.samples),
                  sample_best_gamma, climbs, moves_total, degenerate_samples)
