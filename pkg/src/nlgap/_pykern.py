"""Pure-Python kernel lane (numpy + scipy.sparse.csgraph).

Implements the same functions as the compiled extension ``_ckern`` with
bit-identical results; selection happens in :mod:`nlgap.kernels`.  Graphs
arrive as CSR adjacency (``indptr``/``indices``, both int32, every
undirected edge stored in both directions).
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.csgraph as csgraph


def _csr(indptr, indices, n):
    data = np.ones(len(indices), dtype=np.int8)
    return sp.csr_matrix((data, indices, indptr), shape=(n, n))


def _as_int32_dist(dist):
    out = np.where(np.isinf(dist), -1, dist).astype(np.int32)
    return out


def bfs_int32(indptr, indices, n, source):
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = csgraph.dijkstra(_csr(indptr, indices, n), directed=False,
                            unweighted=True, indices=source)
    return _as_int32_dist(dist)


def all_pairs_int32(indptr, indices, n):
    """All-pairs hop distances as an (n, n) int32 matrix, -1 = unreachable."""
    dist = csgraph.dijkstra(_csr(indptr, indices, n), directed=False,
                            unweighted=True)
    return _as_int32_dist(dist)


def reach_count(indptr, indices, n, source):
    """Number of vertices reachable from ``source`` (including itself)."""
    order = csgraph.breadth_first_order(_csr(indptr, indices, n), source,
                                        directed=False,
                                        return_predecessors=False)
    return int(order.size)


def simple_violation(u, v, n):
    """Classify an edge multiset: 0 = simple, 1 = has a loop, 2 = parallel edge."""
    u = np.asarray(u)
    v = np.asarray(v)
    if np.any(u == v):
        return 1
    key = np.minimum(u, v).astype(np.int64) * n + np.maximum(u, v)
    key = np.sort(key)
    if key.size > 1 and np.any(key[1:] == key[:-1]):
        return 2
    return 0


def sweep_best_move(indptr, indices, f, sizes, w, d2, pair_sum, edge_sum, cap):
    """Best single-vertex image reassignment for the gamma hill climb.

    State arrays (see nlgap.gamma for the update rules): ``f`` int32 image
    per vertex, ``sizes`` int64 image-class sizes, ``w = d2 @ sizes``,
    ``d2`` the symmetric int64 matrix of squared host distances, and the
    current integer pair/edge sums.  ``cap`` < 0 disables the class-size cap.

    Returns ``(vertex, new_image, new_pair_sum, new_edge_sum)`` for the move
    that maximizes the resulting gamma ratio, or None when no move strictly
    improves it.  Fraction comparisons are exact (int64 cross products);
    ties resolve to the lowest vertex index, then lowest image index.
    """
    n = len(f)
    m = len(sizes)
    arange_n = np.arange(n)
    a = np.asarray(f, dtype=np.intp)

    # new pair sums: pair + 2*(w[c] - w[a] - d2[a, c])
    num = pair_sum + 2 * (w[None, :] - w[a][:, None] - d2[a, :])

    # new edge sums via per-vertex neighbor-image distance totals
    deg = np.diff(indptr)
    rows = np.repeat(arange_n, deg)
    counts = np.zeros((n, m), dtype=np.int64)
    np.add.at(counts, (rows, f[indices]), 1)
    t = counts @ d2
    den = edge_sum + 2 * (t - t[arange_n, a][:, None])

    valid = np.ones((n, m), dtype=bool)
    if cap >= 0:
        valid &= sizes[None, :] + 1 <= cap
    valid[arange_n, a] = False
    valid &= den > 0
    if edge_sum > 0:
        improving = valid & (num * edge_sum > pair_sum * den)
    else:
        improving = valid & (num > 0)
    if not improving.any():
        return None

    # float ranking, then an exact integer scan over the near-max window
    ratio = np.where(improving, num / den, -np.inf)
    rmax = ratio.max()
    window = improving & (ratio >= rmax - max(abs(rmax), 1.0) * 1e-12)
    best = None
    for vv, cc in np.argwhere(window):  # argwhere is (v, c)-ordered
        cand_num = int(num[vv, cc])
        cand_den = int(den[vv, cc])
        if best is None or cand_num * best[3] > best[2] * cand_den:
            best = (int(vv), int(cc), cand_num, cand_den)
    return best
