#!/usr/bin/env python3
"""Benchmark the two GF(p) row-reduction kernels.

Row reduction over a prime field is the hot loop of the whole library
(every ideal image, membership test and subspace meet goes through it).
This script times the numba kernel against the vectorized numpy fallback on
random dense matrices; the fallback is what you get at runtime with
IDFILT_NO_NUMBA=1 or without numba installed.

Usage: python benchmarks/bench_rref.py [--sizes 200x120,600x286] [--p 2]
"""

import argparse
import time

import numpy as np

from idfilt import _kernels


def bench(fn, mat, p, repeats):
    best = float("inf")
    for _ in range(repeats):
        a = mat.copy()
        t0 = time.perf_counter()
        fn(a, p)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="200x120,600x286,1500x286,800x792")
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    sizes = [tuple(int(x) for x in s.split("x")) for s in args.sizes.split(",")]

    have_numba = _kernels.HAVE_NUMBA
    if have_numba:
        # trigger compilation outside the timed region
        warm = rng.integers(0, args.p, size=(8, 8), dtype=np.int64)
        _kernels._rref_numba(warm.copy(), args.p)
    else:
        print("numba unavailable or disabled; timing the numpy path only")

    print(f"p = {args.p}, repeats = {args.repeats} (best of)")
    header = f"{'rows x cols':>14} {'numpy':>12}" + (f" {'numba':>12} {'speedup':>9}"
                                                     if have_numba else "")
    print(header)
    for rows, cols in sizes:
        mat = rng.integers(0, args.p, size=(rows, cols), dtype=np.int64)
        t_np = bench(_kernels._rref_numpy, mat, args.p, args.repeats)
        line = f"{rows:>8} x {cols:<4} {t_np * 1e3:>10.2f}ms"
        if have_numba:
            t_nb = bench(_kernels._rref_numba, mat, args.p, args.repeats)
            line += f" {t_nb * 1e3:>10.2f}ms {t_np / t_nb:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
