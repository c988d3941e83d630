# cython: language_level=3
"""Compiled kernel lane: BFS, simplicity screening, hill-climb move sweep.

Mirrors nlgap._pykern exactly (same signatures, bit-identical results);
nlgap.kernels picks whichever lane is available.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def bfs_int32(const cnp.int32_t[::1] indptr, const cnp.int32_t[::1] indices, int n, int source):
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    _bfs_fill(indptr, indices, dist, queue, source)
    return dist_arr


cdef int _bfs_fill(const cnp.int32_t[::1] indptr, const cnp.int32_t[::1] indices,
                   cnp.int32_t[::1] dist, cnp.int32_t[::1] queue,
                   int source) nogil:
    cdef int head = 0, tail = 0
    cdef int u, v
    cdef cnp.int32_t du
    cdef int k
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = du + 1
                queue[tail] = v
                tail += 1
    return tail


def all_pairs_int32(const cnp.int32_t[::1] indptr, const cnp.int32_t[::1] indices, int n):
    """All-pairs hop distances as an (n, n) int32 matrix, -1 = unreachable."""
    dist_arr = np.full((n, n), -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[:, ::1] dist = dist_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef int s
    with nogil:
        for s in range(n):
            _bfs_fill(indptr, indices, dist[s], queue, s)
    return dist_arr


def reach_count(const cnp.int32_t[::1] indptr, const cnp.int32_t[::1] indices, int n, int source):
    """Number of vertices reachable from ``source`` (including itself)."""
    dist_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef int tail
    tail = _bfs_fill(indptr, indices, dist, queue, source)
    return tail


def simple_violation(u_arr, v_arr, int n):
    """Classify an edge multiset: 0 = simple, 1 = has a loop, 2 = parallel edge."""
    u32 = np.ascontiguousarray(u_arr, dtype=np.int32)
    v32 = np.ascontiguousarray(v_arr, dtype=np.int32)
    cdef const cnp.int32_t[::1] u = u32
    cdef const cnp.int32_t[::1] v = v32
    cdef Py_ssize_t ne = u.shape[0]
    if ne == 0:
        return 0
    cdef Py_ssize_t cap = 4
    while cap < 2 * ne:
        cap <<= 1
    table_arr = np.full(cap, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] table = table_arr
    cdef Py_ssize_t i, slot
    cdef cnp.int64_t key
    cdef cnp.uint64_t mask = cap - 1
    cdef cnp.uint64_t mult = 0x9E3779B97F4A7C15ULL
    cdef int a, b, tmp
    with nogil:
        for i in range(ne):  # loops take precedence over parallels
            if u[i] == v[i]:
                with gil:
                    return 1
        for i in range(ne):
            a = u[i]
            b = v[i]
            if a > b:
                tmp = a
                a = b
                b = tmp
            key = (<cnp.int64_t> a) * n + b
            slot = <Py_ssize_t> (((<cnp.uint64_t> key) * mult) & mask)
            while True:
                if table[slot] == key:
                    with gil:
                        return 2
                if table[slot] < 0:
                    table[slot] = key
                    break
                slot = <Py_ssize_t> ((<cnp.uint64_t> slot + 1) & mask)
    return 0


def sweep_best_move(const cnp.int32_t[::1] indptr, const cnp.int32_t[::1] indices,
                    const cnp.int32_t[::1] f, const cnp.int64_t[::1] sizes,
                    const cnp.int64_t[::1] w, const cnp.int64_t[:, ::1] d2,
                    long long pair_sum, long long edge_sum, long long cap):
    """Best single-vertex image reassignment for the gamma hill climb.

    Same contract as nlgap._pykern.sweep_best_move: exact integer fraction
    comparisons, ties to the lowest (vertex, image).  ``d2`` must be
    symmetric (squared distances of a metric are).
    """
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t m = sizes.shape[0]
    t_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] t = t_arr
    cdef Py_ssize_t v, c, k
    cdef int a, fu
    cdef long long num, den, wa
    cdef long long best_num = 0, best_den = 0
    cdef Py_ssize_t best_v = -1, best_c = -1
    cdef bint have_best = 0, take

    with nogil:
        for v in range(n):
            a = f[v]
            wa = w[a]
            for c in range(m):
                t[c] = 0
            for k in range(indptr[v], indptr[v + 1]):
                fu = f[indices[k]]
                # d2 is symmetric; row access keeps this cache friendly
                for c in range(m):
                    t[c] += d2[fu, c]
            for c in range(m):
                if c == a:
                    continue
                if cap >= 0 and sizes[c] + 1 > cap:
                    continue
                den = edge_sum + 2 * (t[c] - t[a])
                if den <= 0:
                    continue
                num = pair_sum + 2 * (w[c] - wa - d2[a, c])
                if edge_sum > 0:
                    if num * edge_sum <= pair_sum * den:
                        continue
                elif num <= 0:
                    continue
                if have_best:
                    take = num * best_den > best_num * den
                else:
                    take = 1
                if take:
                    best_num = num
                    best_den = den
                    best_v = v
                    best_c = c
                    have_best = 1
    if not have_best:
        return None
    return (int(best_v), int(best_c), int(best_num), int(best_den))
