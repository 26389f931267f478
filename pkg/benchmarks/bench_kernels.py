#!/usr/bin/env python3
"""Time the counting kernels on the numba backend against the numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    PARETO_JUDGE_NO_NUMBA=1 python3 benchmarks/bench_kernels.py   # fallback only
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pareto_judge._kernels import backend_impls


def _time(fn, *args, repeats: int) -> float:
    fn(*args)  # warm-up; triggers JIT compilation on the numba backend
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--front-size", type=int, default=20)
    parser.add_argument("--points", type=int, default=2000)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    draws = rng.random((args.samples, 2))
    front = rng.random((args.front_size, 2))
    cloud = rng.random((args.points, 2))
    ref = np.asarray([0.5, 0.5])

    cases = [
        ("count_in_box_union", (draws, front)),
        ("nondominated_mask", (cloud,)),
        ("dominance_counts", (cloud, ref)),
    ]
    impls = backend_impls()
    print(f"{'kernel':<22} " + " ".join(f"{name + ' (ms)':>14}" for name in impls))
    timings: dict[str, dict[str, float]] = {}
    for kernel, call_args in cases:
        timings[kernel] = {
            name: _time(impls[name][kernel], *call_args, repeats=args.repeats) * 1e3
            for name in impls
        }
        row = " ".join(f"{timings[kernel][name]:>14.3f}" for name in impls)
        print(f"{kernel:<22} {row}")
    if "numba" in impls and "numpy" in impls:
        print()
        for kernel in timings:
            speedup = timings[kernel]["numpy"] / timings[kernel]["numba"]
            print(f"{kernel}: numba is {speedup:.1f}x the numpy fallback")


if __name__ == "__main__":
    main()
