#!/usr/bin/env python3
"""Benchmark the compiled kernel lane against the numpy/scipy fallback.

Times the two hot kernels (all-pairs BFS, hill-climb move sweep) plus the
rejection sampler's simplicity screen on desk-scale inputs, and prints a
speedup table.  Run from anywhere:

    python bench/bench_backends.py [--n 2000] [--repeats 3]
"""

import argparse
import time

import numpy as np

import nlgap._pykern as pykern
from nlgap import all_pairs_distances, sample_configuration, sample_simple_regular
from nlgap.gamma import _SearchState, _squared_dists

try:
    import nlgap._ckern as ckern
except ImportError:
    ckern = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--m", type=int, default=50)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if ckern is None:
        print("compiled lane not available; nothing to compare")
        return

    rng = np.random.default_rng(0)
    g, _ = sample_simple_regular(args.n, 3, rng)
    h, _ = sample_simple_regular(args.m, 3, rng)
    dist_h = all_pairs_distances(h)
    d2 = _squared_dists(dist_h)
    f = rng.integers(0, args.m, size=args.n, dtype=np.int32)
    state = _SearchState(g, d2, f, cap=-1)
    stubs = [sample_configuration(args.n, 3, rng).edges for _ in range(20)]

    rows = []

    def bench(label, call_c, call_py):
        tc = timeit(call_c, args.repeats)
        tp = timeit(call_py, args.repeats)
        rows.append((label, tc, tp, tp / tc))

    bench(f"all_pairs_bfs(n={args.n})",
          lambda: ckern.all_pairs_int32(g.indptr, g.indices, g.n),
          lambda: pykern.all_pairs_int32(g.indptr, g.indices, g.n))
    bench(f"sweep_best_move(n={args.n}, m={args.m})",
          lambda: ckern.sweep_best_move(g.indptr, g.indices, state.f, state.sizes,
                                        state.w, state.d2, state.pair, state.edge, -1),
          lambda: pykern.sweep_best_move(g.indptr, g.indices, state.f, state.sizes,
                                         state.w, state.d2, state.pair, state.edge, -1))
    bench(f"simple_violation(20 draws, n={args.n})",
          lambda: [ckern.simple_violation(e[:, 0], e[:, 1], args.n) for e in stubs],
          lambda: [pykern.simple_violation(e[:, 0], e[:, 1], args.n) for e in stubs])

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'compiled':>10}  {'pure':>10}  {'speedup':>8}")
    for label, tc, tp, ratio in rows:
        print(f"{label:<{width}}  {tc * 1e3:>8.2f}ms  {tp * 1e3:>8.2f}ms  {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
