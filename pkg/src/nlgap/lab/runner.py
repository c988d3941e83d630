"""Deterministic seeding and the worker pool.

The seed-splitting rule is fixed: trial k of an experiment with master seed
s draws from ``SeedSequence(entropy=s, spawn_key=(k,))``.  Auxiliary
streams inside one experiment use disjoint spawn keys.  Results are
reduced in trial-index order, so the output is identical for any worker
count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

__all__ = ["trial_seed_sequence", "trial_rng", "seed_label", "run_indexed"]

AUX_STREAM = 1 << 31  # spawn-key offset for non-trial streams


def trial_seed_sequence(master_seed: int, index: int, *extra: int):
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(index, *extra))


def trial_rng(master_seed: int, index: int, *extra: int):
    return np.random.default_rng(trial_seed_sequence(master_seed, index, *extra))


def seed_label(master_seed: int, index: int) -> int:
    """Stable integer recorded alongside each trial for provenance."""
    return int(trial_seed_sequence(master_seed, index).generate_state(1)[0])


def run_indexed(fn, payload, count: int, workers: int) -> list:
    """Evaluate fn(payload, i) for i in range(count), ordered by i."""
    if workers <= 1 or count <= 1:
        return [fn(payload, i) for i in range(count)]
    args = [(payload, i) for i in range(count)]
    chunk = max(1, count // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_call, [fn] * count, args, chunksize=chunk))


def _call(fn, args):
    return fn(*args)
