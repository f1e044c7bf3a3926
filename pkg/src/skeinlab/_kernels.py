"""Brute-force full-state enumeration kernels.

This is the package's hot numeric loop: filtering all 2^m full states of
a curve against the per-piece bad-arc constraint. The default build uses
a numba-compiled kernel; setting SKEINLAB_NO_NUMBA=1 (or a missing numba)
selects a chunked pure-numpy path computing the same thing.
benchmarks/bench_states.py compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_CHUNK = 1 << 18

USE_NUMBA = os.environ.get("SKEINLAB_NO_NUMBA", "") != "1"
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if USE_NUMBA:

    @njit(cache=True)
    def _masks_numba(n_points, pa, pb):  # pragma: no cover - compiled
        total = np.int64(1) << n_points
        out = np.empty(total, np.int64)
        cnt = 0
        for mask in range(total):
            ok = True
            for t in range(pa.shape[0]):
                if (mask >> pa[t]) & 1 == 1 and (mask >> pb[t]) & 1 == 0:
                    ok = False
                    break
            if ok:
                out[cnt] = mask
                cnt += 1
        return out[:cnt]


def _masks_numpy(n_points, pa, pb):
    total = 1 << n_points
    parts = []
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        ok = np.ones(masks.shape, dtype=bool)
        for t in range(pa.shape[0]):
            bad = (((masks >> pa[t]) & 1) == 1) & (((masks >> pb[t]) & 1) == 0)
            ok &= ~bad
        parts.append(masks[ok])
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)


def admissible_masks(n_points: int, pieces_a, pieces_b):
    """All bitmasks (bit=1 means state +) passing every piece constraint."""
    pa = np.asarray(pieces_a, dtype=np.int64)
    pb = np.asarray(pieces_b, dtype=np.int64)
    if n_points > 25:
        raise ValueError("brute-force enumeration capped at 25 points")
    if USE_NUMBA:
        return _masks_numba(np.int64(n_points), pa, pb)
    return _masks_numpy(n_points, pa, pb)


def support_from_masks(masks, point_edge, n_edges):
    """Aggregate admissible masks into {k-vector: state count}.

    k(e) = (#plus - #minus) over the points of edge e.
    """
    masks = np.asarray(masks, dtype=np.int64)
    if masks.size == 0:
        return {}
    kvecs = np.zeros((masks.size, n_edges), dtype=np.int64)
    for pid, e in enumerate(point_edge):
        kvecs[:, e] += ((masks >> pid) & 1) * 2 - 1
    uniq, counts = np.unique(kvecs, axis=0, return_counts=True)
    return {
        tuple(int(x) for x in row): int(c) for row, c in zip(uniq, counts)
    }
