"""Kernel backend selection.

The compiled extension (``nlgap._ckern``, Cython) is preferred; the pure
lane (``nlgap._pykern``, numpy/scipy) is used when the extension is absent.
Set ``NLGAP_BACKEND=python`` or ``NLGAP_BACKEND=c`` to force a lane.  Both
lanes return bit-identical results; ``bench/bench_backends.py`` compares
their speed.
"""

from __future__ import annotations

import os

_choice = os.environ.get("NLGAP_BACKEND", "").strip().lower()
if _choice not in ("", "c", "python"):
    raise ImportError(f"NLGAP_BACKEND must be 'c' or 'python', got {_choice!r}")

_impl = None
if _choice in ("", "c"):
    try:
        from . import _ckern as _impl

        BACKEND = "c"
    except ImportError:
        if _choice == "c":
            raise
if _impl is None:
    from . import _pykern as _impl

    BACKEND = "python"

all_pairs_int32 = _impl.all_pairs_int32
bfs_int32 = _impl.bfs_int32
reach_count = _impl.reach_count
simple_violation = _impl.simple_violation
sweep_best_move = _impl.sweep_best_move
