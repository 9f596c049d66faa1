"""Benchmark the numba split kernel against the pure-numpy fallback.

Times the raw best-split scan at several node sizes and a full tree build
at a realistic scale (original + inverse instances, labels = row sums).
Run from the repository root:

    python3 benchmarks/bench_split.py [--instances 16000] [--repeats 5]

The production code picks the numba path automatically; the fallback is
what you get with INVERSEARCH_NO_NUMBA=1.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from inversearch import _kernels
from inversearch.transform import training_set_from_changes, ChangeSeries
from inversearch.tree import TreeParams, train_tree


def balanced_problem(rng, n_instances, h=5):
    half = rng.uniform(-0.05, 0.05, size=(n_instances // 2, h))
    X = np.empty((2 * (n_instances // 2), h))
    X[0::2] = half
    X[1::2] = -half
    y = np.cumsum(X, axis=1)[:, -1].copy()
    return np.ascontiguousarray(X), np.ascontiguousarray(y)


def time_call(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_scan(repeats):
    rng = np.random.default_rng(0)
    print(f"{'n':>8}  {'numpy (ms)':>12}  {'numba (ms)':>12}  {'speedup':>8}")
    for n in (16, 64, 256, 1024, 4096, 16384):
        X, y = balanced_problem(rng, n)
        t_np = time_call(_kernels.numpy_best_split_scan, X, y, repeats=repeats)
        if _kernels.USING_NUMBA:
            _kernels.numba_best_split_scan(X, y)  # compile outside the clock
            t_nb = time_call(_kernels.numba_best_split_scan, X, y, repeats=repeats)
            assert _kernels.numba_best_split_scan(X, y) == _kernels.numpy_best_split_scan(X, y)
            print(f"{n:>8}  {t_np * 1e3:>12.3f}  {t_nb * 1e3:>12.3f}  {t_np / t_nb:>7.1f}x")
        else:
            print(f"{n:>8}  {t_np * 1e3:>12.3f}  {'-':>12}  {'-':>8}")


def bench_tree_build(n_instruments, repeats):
    rng = np.random.default_rng(1)
    changes = {
        f"S{i:05d}": ChangeSeries(
            f"S{i:05d}", rng.uniform(-0.05, 0.05, size=5), np.ones(5, bool)
        )
        for i in range(n_instruments)
    }
    ts = training_set_from_changes(changes, 1, h=5)
    params = TreeParams()

    def build_once():
        return train_tree(ts, params)

    tree = build_once()  # warm (and compile, on the numba path)
    elapsed = time_call(build_once, repeats=repeats)
    path = "numba" if _kernels.USING_NUMBA else "numpy fallback"
    print(
        f"full tree build ({path}): {len(ts)} instances -> {len(tree)} nodes "
        f"in {elapsed:.3f}s"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=16000,
                        help="instances for the full-tree benchmark (half this many instruments)")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"active kernel path: {'numba' if _kernels.USING_NUMBA else 'numpy fallback'}")
    print("\nbest-split scan, one node:")
    bench_scan(args.repeats)
    print()
    bench_tree_build(args.instances // 2, max(2, args.repeats // 2))


if __name__ == "__main__":
    main()
