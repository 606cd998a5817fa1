"""Benchmark the numba kernels against the pure-numpy fallbacks.

Usage:
    python3 benchmarks/bench_kernels.py [--steps N] [--repeat R]

The same comparison drives the HEISENGEO_NO_NUMBA env flag: whatever wins
here is what the flag selects between.
"""

import argparse
import time

import numpy as np

from heisengeo._kernels import (
    HAVE_NUMBA,
    _hamilton_path_numpy,
    _hamilton_path_numba,
    _rk4_curve_numpy,
    _rk4_curve_numba,
)


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not HAVE_NUMBA:
        print("numba unavailable or disabled; the 'numba' column is the plain loop")

    coeffs = np.array([0.1, 1.0, -0.5, 0.25])
    h = 1.0 / args.steps
    state0 = np.array([0.0, 0.0, 0.0, 0.7, -0.3, 1.4])

    # warmup (jit compilation)
    _rk4_curve_numba(coeffs, 0.0, 0.0, 0.0, 0.0, h, 100)
    _hamilton_path_numba(0.1, state0, h, 100)

    t_curve_nb = timeit(
        _rk4_curve_numba, coeffs, 0.0, 0.0, 0.0, 0.0, h, args.steps, repeat=args.repeat
    )
    t_curve_np = timeit(
        _rk4_curve_numpy, coeffs, 0.0, 0.0, 0.0, 0.0, h, args.steps, repeat=args.repeat
    )
    t_ham_nb = timeit(_hamilton_path_numba, 0.1, state0, h, args.steps, repeat=args.repeat)
    t_ham_np = timeit(_hamilton_path_numpy, 0.1, state0, h, args.steps, repeat=args.repeat)

    a = _rk4_curve_numba(coeffs, 0.0, 0.0, 0.0, 0.0, h, args.steps)
    b = _rk4_curve_numpy(coeffs, 0.0, 0.0, 0.0, 0.0, h, args.steps)
    drift = np.abs(a - b).max()

    print(f"steps per run: {args.steps:,}; best of {args.repeat}")
    print(f"{'kernel':<22}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    print(f"{'rk4_curve':<22}{t_curve_nb * 1e3:>10.2f}ms{t_curve_np * 1e3:>10.2f}ms{t_curve_np / t_curve_nb:>9.1f}x")
    print(f"{'hamilton_path':<22}{t_ham_nb * 1e3:>10.2f}ms{t_ham_np * 1e3:>10.2f}ms{t_ham_np / t_ham_nb:>9.1f}x")
    print(f"max |numba - numpy| on rk4_curve: {drift:.3e}")


if __name__ == "__main__":
    main()
