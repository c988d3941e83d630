"""Shared fixtures and independent oracle implementations.

The oracles here deliberately avoid the library's kernels: BFS uses a
plain deque walk over adjacency lists, gamma sums are explicit double
loops.  Tests compare library output against these.
"""

from collections import deque

import numpy as np
import pytest

from nlgap import Graph


def adjacency_lists(g: Graph):
    return [list(g.indices[g.indptr[v]:g.indptr[v + 1]]) for v in range(g.n)]


def oracle_bfs(adj, source):
    """Deque BFS over adjacency lists; -1 for unreachable."""
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def oracle_gamma_sums(g: Graph, dist, fvals):
    """(ordered-pair sum, directed-edge sum) by explicit loops."""
    n = g.n
    pair = 0
    for u in range(n):
        for v in range(n):
            pair += int(dist[fvals[u]][fvals[v]]) ** 2
    edge = 0
    adj = adjacency_lists(g)
    for u in range(n):
        for v in adj[u]:
            edge += int(dist[fvals[u]][fvals[v]]) ** 2
    return pair, edge


def oracle_edges_between(g: Graph, s, t):
    s, t = set(s), set(t)
    count = 0
    for u, v in g.edges:
        if (u in s and v in t) or (u in t and v in s):
            count += 1
    return count


PETERSEN_ADJ = {
    0: [1, 4, 5], 1: [0, 2, 6], 2: [1, 3, 7], 3: [2, 4, 8], 4: [0, 3, 9],
    5: [0, 7, 8], 6: [1, 8, 9], 7: [2, 5, 9], 8: [3, 5, 6], 9: [4, 6, 7],
}


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
