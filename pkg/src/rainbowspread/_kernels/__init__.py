"""Kernel selection: compiled extension when available, else pure Python.

Set RAINBOWSPREAD_PURE=1 to force the fallback (used by the benchmark and
the kernel-equivalence tests).
"""

import os

import numpy as np

if os.environ.get("RAINBOWSPREAD_PURE") == "1":
    from . import pyfallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pyfallback as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
rainbow_hit_time = _impl.rainbow_hit_time
cover_hit_time = _impl.cover_hit_time
first_rainbow_edge = _impl.first_rainbow_edge


def flatten_edges(edges):
    """Pack an edge list into (flat vertex array, offsets) for the kernels."""
    offsets = np.zeros(len(edges) + 1, dtype=np.int64)
    for i, e in enumerate(edges):
        offsets[i + 1] = offsets[i] + len(e)
    flat = np.empty(offsets[-1], dtype=np.int64)
    k = 0
    for e in edges:
        for v in e:
            flat[k] = v
            k += 1
    return flat, offsets
