#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the pure-Python (numpy) fallback.

Times the two hot loops behind lattice enumeration and monomial scoring on
workloads shaped like the acceptance experiments (dilated triangles up to
m = 400, exponent sets up to ~320k points).

Run:  python benchmarks/bench_kernels.py
"""
import time

import numpy as np

from cone_hull import _kernels_py

try:
    from cone_hull import _kernels as compiled
except ImportError:
    compiled = None


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_lattice_points(m):
    # lattice points of m * ch{(0,0),(1,0),(1,1/2)}: 2y <= x, y >= 0, x <= m
    ineq = np.array([[-1, 2], [0, -1], [1, 0]], dtype=np.int64)
    rhs = np.array([0, 0, m], dtype=np.int64)
    eq = np.empty((0, 2), dtype=np.int64)
    lo = np.zeros(2, dtype=np.int64)
    hi = np.array([m, m // 2 + 1], dtype=np.int64)
    rows = []
    t_py, out_py = time_call(_kernels_py.lattice_points_in_box, ineq, rhs, eq, lo, hi)
    rows.append(("python", t_py, len(out_py)))
    if compiled is not None:
        t_c, out_c = time_call(compiled.lattice_points_in_box, ineq, rhs, eq, lo, hi)
        assert np.array_equal(out_py, out_c)
        rows.append(("compiled", t_c, len(out_c)))
    return rows


def bench_scores(k):
    rng = np.random.default_rng(0)
    exps = rng.integers(0, 400, size=(k, 2)).astype(np.int64)
    x = rng.normal(size=2)
    a = rng.normal(size=(3, 2))
    rows = []
    t_py, s_py = time_call(_kernels_py.monomial_scores, exps, x, a)
    rows.append(("python", t_py, len(s_py)))
    if compiled is not None:
        t_c, s_c = time_call(compiled.monomial_scores, exps, x, a)
        assert np.allclose(s_py, s_c)
        rows.append(("compiled", t_c, len(s_c)))
    return rows


def main():
    if compiled is None:
        print("compiled kernels not available; timing the fallback only\n")
    print(f"{'workload':<34} {'impl':<9} {'best (ms)':>10} {'items':>9}")
    print("-" * 66)
    for m in (100, 200, 400):
        for impl, t, count in bench_lattice_points(m):
            print(f"{'lattice points, m=' + str(m):<34} {impl:<9} {t * 1e3:>10.3f} {count:>9}")
    for k in (40_000, 160_000, 320_000):
        for impl, t, count in bench_scores(k):
            print(f"{'monomial scores, k=' + str(k):<34} {impl:<9} {t * 1e3:>10.3f} {count:>9}")


if __name__ == "__main__":
    main()
