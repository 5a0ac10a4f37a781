#!/usr/bin/env python3
"""Benchmark the compiled row-reduction kernel against the pure-Python twin.

The elimination kernel is the hot loop of every cohomology computation:
ranks and nullspaces of coboundary matrices all funnel through it.  Both
backends run the identical fraction-free algorithm, so outputs are
bit-for-bit equal; this script measures the speed difference on

  * random dense integer matrices, and
  * the real workload: coboundary matrices of small dialgebras.

Usage: python benchmarks/bench_linalg.py [--trials N]
"""

import argparse
import random
import time

from oridial import _kernels_py
from oridial import cohomology as coh
from oridial.dialgebra import from_associative

try:
    from oridial import _kernels

    BACKENDS = [("cython", _kernels), ("python", _kernels_py)]
except ImportError:
    print("compiled kernel not available; benchmarking the fallback only")
    BACKENDS = [("python", _kernels_py)]


def bench(label, rows_factory, trials):
    print(f"\n{label}")
    times = {}
    pivots_seen = None
    for name, kernel in BACKENDS:
        best = float("inf")
        for _ in range(trials):
            data = rows_factory()
            start = time.perf_counter()
            pivots = kernel.ff_row_echelon(data, len(data[0]))
            best = min(best, time.perf_counter() - start)
        times[name] = best
        if pivots_seen is None:
            pivots_seen = pivots
        else:
            assert pivots == pivots_seen, "backends disagree"
        print(f"  {name:>7}: {best * 1000:9.2f} ms   (rank {len(pivots)})")
    if len(times) == 2:
        print(f"  speedup: {times['python'] / times['cython']:.2f}x")


def random_matrix_factory(n, m, seed):
    def make():
        rng = random.Random(seed)
        return [[rng.randint(-50, 50) for _ in range(m)] for _ in range(n)]

    return make


def delta_matrix_factory(level, dim=3):
    if dim == 3:
        mult = [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
            [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
        ]
    else:
        mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    D = from_associative(mult)
    sm = coh.delta_entries(D, level)
    rows = [[0] * sm.cols for _ in range(sm.rows)]
    for (r, c), v in sm.entries.items():
        rows[r][c] = int(v)

    def make():
        return [list(r) for r in rows]

    return make


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=3)
    args = parser.parse_args()
    print(f"backends: {[name for name, _ in BACKENDS]}")
    bench("dense random 60x60, entries in [-50, 50]",
          random_matrix_factory(60, 60, 1), args.trials)
    bench("dense random 120x80", random_matrix_factory(120, 80, 2), args.trials)
    bench("tall random 400x100", random_matrix_factory(400, 100, 3), args.trials)
    bench("coboundary matrix of K[u]/(u^3), level 2 (405x54)",
          delta_matrix_factory(2), args.trials)
    bench("coboundary matrix of K[u]/(u^3), level 3 (3402x405)",
          delta_matrix_factory(3), max(1, args.trials // 3))


if __name__ == "__main__":
    main()
