"""Benchmark: numba kernel vs pure-numpy fallback on state enumeration.

The hot loop filters all 2^m full states of a curve against the bad-arc
constraints. Run with default settings for the numba path; set
SKEINLAB_NO_NUMBA=1 to benchmark the numpy path. This script runs both in
one process by reloading the kernel module with the flag flipped.

Usage: python3 benchmarks/bench_states.py [p q]
"""

import importlib
import os
import sys
import time

import numpy as np


def build_problem(p, q):
    from skeinlab.curves import torus_table

    curve = torus_table().curve(p, q)
    geo = curve.geometry()
    pa = np.asarray([x[0] for x in geo.pieces], dtype=np.int64)
    pb = np.asarray([x[1] for x in geo.pieces], dtype=np.int64)
    return curve, geo, pa, pb


def time_path(no_numba, n_points, pa, pb, repeats=3):
    os.environ["SKEINLAB_NO_NUMBA"] = "1" if no_numba else ""
    import skeinlab._kernels as kernels

    importlib.reload(kernels)
    assert kernels.USE_NUMBA == (not no_numba)
    # warm-up (includes JIT compilation for the numba path)
    masks = kernels.admissible_masks(n_points, pa, pb)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        masks = kernels.admissible_masks(n_points, pa, pb)
        best = min(best, time.perf_counter() - t0)
    return best, masks


def main():
    p, q = (int(a) for a in sys.argv[1:3]) if len(sys.argv) >= 3 else (5, 4)
    curve, geo, pa, pb = build_problem(p, q)
    m = geo.n_points
    print(f"curve ({p},{q}) on Delta_1: m = {m} points, {len(pa)} pieces, 2^{m} states")

    t_numba, masks_numba = time_path(False, m, pa, pb)
    t_numpy, masks_numpy = time_path(True, m, pa, pb)
    assert np.array_equal(np.sort(masks_numba), np.sort(masks_numpy)), "paths disagree"
    print(f"admissible states: {masks_numba.size}")
    print(f"numba : {t_numba*1e3:9.2f} ms")
    print(f"numpy : {t_numpy*1e3:9.2f} ms")
    print(f"speedup (numpy/numba): {t_numpy/t_numba:.2f}x")


if __name__ == "__main__":
    main()
