#!/usr/bin/env python3
"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--max-exp 11] [--repeat 3]

Each kernel is run once untimed first so JIT compilation is excluded.
"""

import argparse
import time

import numpy as np

from almostprime import _jit, _kernels, oracle
from almostprime.backend import sieve_primes


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def row(name, t_numba, t_numpy, same):
    speedup = t_numpy / t_numba if t_numba else float("inf")
    print(f"{name:<28} {t_numba * 1e3:>10.2f} {t_numpy * 1e3:>10.2f} {speedup:>8.1f}x  {'ok' if same else 'MISMATCH'}")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-exp", type=int, default=11, help="largest x = 10**max_exp for the pi table")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not _jit.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    _kernels.lucy_tables_numba(1000)
    base = sieve_primes(10**4).primes
    _kernels.mark_segment_numba(0, 100, base)
    oracle._spf_numba(np.zeros(100, dtype=np.int64))

    print(f"{'kernel':<28} {'numba ms':>10} {'numpy ms':>10} {'speedup':>9}")
    for e in range(6, args.max_exp + 1):
        x = 10**e
        t_a, a = best_of(lambda: _kernels.lucy_tables_numba(x), args.repeat)
        t_b, b = best_of(lambda: _kernels.lucy_tables_numpy(x), args.repeat)
        row(f"pi table x=1e{e}", t_a, t_b, np.array_equal(a[1], b[1]))

    lo, hi = 10**8, 10**8 + (1 << 18)
    t_a, a = best_of(lambda: _kernels.mark_segment_numba(lo, hi, base), args.repeat)
    t_b, b = best_of(lambda: _kernels.mark_segment_numpy(lo, hi, base), args.repeat)
    row("sieve segment 2^18 @1e8", t_a, t_b, np.array_equal(a, b))

    n = 10**7

    def spf(kernel):
        arr = np.zeros(n + 1, dtype=np.int64)
        kernel(arr)
        return arr

    t_a, a = best_of(lambda: spf(oracle._spf_numba), args.repeat)
    t_b, b = best_of(lambda: spf(oracle._spf_numpy), args.repeat)
    row("spf sieve n=1e7", t_a, t_b, np.array_equal(a, b))


if __name__ == "__main__":
    main()
