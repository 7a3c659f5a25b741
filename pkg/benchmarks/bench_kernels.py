#!/usr/bin/env python3
"""Compare the compiled and pure-Python elimination kernels.

Workloads: dense random integer matrices, dense random mod-p matrices,
and real boundary matrices taken from a Hochschild complex (sparse,
small entries, the shape the kernels actually see).

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import statistics
import time

from raywitt import _echelon_py
from raywitt.algebra import GradedAlgebra
from raywitt.homology import HochschildComplex
from raywitt.monoid import MonoidIdeal, TruncatedMonoid, nonneg_orthant
from raywitt.rings import QQ

try:
    from raywitt import _echelon

    KERNELS = [("compiled", _echelon), ("pure", _echelon_py)]
except ImportError:
    print("compiled kernel not built; timing the pure kernel only")
    KERNELS = [("pure", _echelon_py)]


def boundary_workload():
    """All boundary matrices of an unnormalized complex, n <= 5."""
    ideal = MonoidIdeal(nonneg_orthant(2), ((1, 1),))
    t = TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=2, ideal=ideal)
    algebra = GradedAlgebra.monoid_algebra(t, QQ)
    cx = HochschildComplex(algebra, 5, normalized=False)
    matrices = []
    for n in range(1, 6):
        for eta in cx.degrees_at(n):
            m = [[int(v) for v in row] for row in cx.boundary(n, eta)]
            if m and m[0]:
                matrices.append(m)
    return matrices


def random_int_matrices(count, nrows, ncols, bound, seed):
    rng = random.Random(seed)
    return [
        [[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows)]
        for _ in range(count)
    ]


def timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return min(samples), statistics.mean(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    workloads = [
        ("hochschild boundaries (sparse +-1)", "int", boundary_workload()),
        ("random 60x80, entries <= 4", "int", random_int_matrices(10, 60, 80, 4, 1)),
        ("random 120x150, entries <= 2", "int", random_int_matrices(3, 120, 150, 2, 2)),
        ("random 200x200 mod 7", "mod", random_int_matrices(3, 200, 200, 6, 3)),
        ("random 400x400 mod 10007", "mod", random_int_matrices(1, 400, 400, 10006, 4)),
    ]

    print(f"{'workload':40s}  {'kernel':9s}  {'best':>9s}  {'mean':>9s}")
    baselines = {}
    for label, kind, matrices in workloads:
        for name, kernel in KERNELS:
            if kind == "int":
                run = lambda: [kernel.echelon_int(m) for m in matrices]
            else:
                run = lambda: [kernel.echelon_mod(m, 7 if "mod 7" in label else 10007) for m in matrices]
            best, mean = timed(run, args.repeat)
            note = ""
            if name == "compiled":
                baselines[label] = best
            elif label in baselines and best > 0:
                note = f"  ({best / baselines[label]:.1f}x slower)"
            print(f"{label:40s}  {name:9s}  {best * 1e3:8.1f}ms  {mean * 1e3:8.1f}ms{note}")


if __name__ == "__main__":
    main()
