#!/usr/bin/env python3
"""Compare the compiled float kernels against the pure Python fallback.

Times the three hot paths the oracle and the float isolation lean on:
excess-demand evaluation over a price grid, sparse polynomial evaluation
over a grid, and scalar bisection refinement.

    python benchmarks/bench_kernels.py [--repeats 7] [--points 4096]
"""

import argparse
import random
import time

import numpy as np

from haraeq import _kernels_py
from haraeq.sampling import random_economy

try:
    from haraeq import _kernels as compiled
except ImportError:
    compiled = None


def best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--points", type=int, default=4096)
    args = ap.parse_args()

    rng = random.Random(2024)
    econ = random_economy(rng, 6, 2.2)
    e, f, s = econ.float_arrays()
    a, b, eps = float(econ.hara.a), float(econ.hara.b), float(econ.hara.epsilon)
    grid = np.geomspace(1e-6, 1e6, args.points)

    exps = np.array([0, 2, 3, 5, 8, 11, 13], dtype=np.int64)
    coeffs = np.array([3.0, 1.7, -0.4, 0.9, -2.1, -0.03, -1.1])
    qs = np.geomspace(1e-4, 1e4, args.points)

    ys = _kernels_py.zx_grid(e, f, s, a, b, eps, grid)
    sgn = np.sign(ys)
    lo, hi = next((grid[i], grid[i + 1]) for i in range(len(grid) - 1)
                  if sgn[i] * sgn[i + 1] < 0)

    cases = [
        ("zx_grid", lambda k: k.zx_grid(e, f, s, a, b, eps, grid)),
        ("poly_eval_grid", lambda k: k.poly_eval_grid(exps, coeffs, qs)),
        ("zx_refine x100", lambda k: [
            k.zx_refine(e, f, s, a, b, eps, lo, hi, 1e-12, 200)
            for _ in range(100)]),
    ]

    print(f"{args.points}-point grids, best of {args.repeats} runs")
    print(f"{'kernel':<16} {'python':>12} {'cython':>12} {'speedup':>9}")
    for name, call in cases:
        t_py = best_of(args.repeats, call, _kernels_py)
        if compiled is None:
            print(f"{name:<16} {t_py * 1e3:>10.3f}ms {'n/a':>12} {'n/a':>9}")
            continue
        t_cy = best_of(args.repeats, call, compiled)
        print(f"{name:<16} {t_py * 1e3:>10.3f}ms {t_cy * 1e3:>10.3f}ms "
              f"{t_py / t_cy:>8.1f}x")
    if compiled is None:
        print("compiled extension unavailable; showing fallback only")


if __name__ == "__main__":
    main()
