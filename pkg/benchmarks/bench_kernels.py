#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy fallback.

Times the three hot loops on representative workloads:
  * ql      -- implicit-shift QL eigenvalues of the order-n closed-form matrix
  * sturm   -- Sturm counts for a batch of shifts on the same matrix
  * verlet  -- velocity-Verlet stepping of the order-51 chain

Usage: python benchmarks/bench_kernels.py [--n 200] [--repeat 5]
"""

import argparse
import math
import time

import numpy as np

from perfectchain import chain, jacobi
from perfectchain._kernels import _fallback

try:
    from perfectchain._kernels import _native
except ImportError:
    _native = None


def best_of(repeat, fn, *args):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(n):
    m = jacobi.square_spectrum_matrix(n)
    shifts = np.linspace(-1.0, 2.0 * (n - 1) ** 2 + 1.0, 256)
    d = chain.design_chain(51, chain.default_m1(51), chain.default_omega(51))
    u = np.zeros(51)
    u[0] = 1.0
    v = np.zeros(51)
    steps = 20000
    return {
        "ql": lambda impl: impl.ql_eigenvalues(m.diag, m.offdiag),
        "sturm": lambda impl: impl.sturm_counts(
            m.diag, m.offdiag * m.offdiag, shifts, 1e-14
        ),
        "verlet": lambda impl: impl.verlet_steps(
            d.masses, d.springs, u.copy(), v.copy(), 1e-3, steps
        ),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200, help="matrix order")
    parser.add_argument("--repeat", type=int, default=5, help="best-of repeats")
    args = parser.parse_args()

    loads = workloads(args.n)
    print(f"kernel benchmarks (n={args.n}, best of {args.repeat})")
    header = f"{'kernel':<8} {'fallback':>12} {'native':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, load in loads.items():
        t_fb = best_of(args.repeat, load, _fallback)
        if _native is None:
            print(f"{name:<8} {t_fb * 1e3:>10.3f}ms {'n/a':>12} {'n/a':>9}")
            continue
        t_nat = best_of(args.repeat, load, _native)
        print(f"{name:<8} {t_fb * 1e3:>10.3f}ms {t_nat * 1e3:>10.3f}ms "
              f"{t_fb / t_nat:>8.1f}x")
    if _native is None:
        print("\nnative extension not built; install with a C compiler "
              "and Cython to compare.")


if __name__ == "__main__":
    main()
