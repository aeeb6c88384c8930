#!/usr/bin/env python3
"""Benchmark the two partial-sum kernels (compiled extension vs pure Python).

The alternating weighted power sum is the hot inner loop of the
finite-level fermionic integral: p^N Horner evaluations in modular
arithmetic.  Usage:

    python benchmarks/bench_fermionic.py [--p 3] [--K 12] [--repeat 3]
"""

import argparse
import time

from qeuler import _altsum_py, kernels


def time_kernel(fn, coeffs, q, modulus, count, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(coeffs, q, modulus, count)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=3)
    parser.add_argument("--K", type=int, default=12, help="precision digits (modulus = p^(K+4))")
    parser.add_argument("--degree", type=int, default=6)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    modulus = args.p ** (args.K + 4)
    q = 1 + args.p
    coeffs = list(range(1, args.degree + 2))

    if kernels.HAVE_COMPILED:
        from qeuler import _altsum_cy

        compiled = _altsum_cy.alt_weighted_power_sum
    else:
        compiled = None
        print("note: compiled extension not built; showing the pure kernel only")

    print(f"modulus = {args.p}^{args.K + 4}, degree {args.degree} integrand")
    header = f"{'count':>10} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    exps = range(5, 12) if args.p == 3 else range(3, 8)
    for e in exps:
        count = args.p**e
        t_py, r_py = time_kernel(
            _altsum_py.alt_weighted_power_sum, coeffs, q, modulus, count, args.repeat
        )
        if compiled is not None:
            t_cy, r_cy = time_kernel(compiled, coeffs, q, modulus, count, args.repeat)
            assert r_cy == r_py, "kernel twins disagree"
            print(f"{count:>10} {t_py * 1e3:>10.2f}ms {t_cy * 1e3:>10.2f}ms {t_py / t_cy:>8.1f}x")
        else:
            print(f"{count:>10} {t_py * 1e3:>10.2f}ms {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
