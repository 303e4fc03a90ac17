#!/usr/bin/env python3
"""Benchmark the pure-Python and compiled arithmetic kernels.

Times the two hot loops (element contraction, term convolution) and one
representative workload (operator brackets) on the dimension-6 jet
algebra.  Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time
from fractions import Fraction

from weilnear import _kernels_py

try:
    from weilnear import _ckernels
except ImportError:
    _ckernels = None

import weilnear as wn
from weilnear.sampling import rand_apoly, rand_diffop


def _rand_coords(rng, dim):
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                 for _ in range(dim))


def bench_ael(backend, alg, pairs, repeat):
    table = backend.build_table(alg.pair_rows)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a, b in pairs:
            backend.ael_mul(a, b, table, alg.dim)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_apoly(backend, alg, term_pairs, repeat):
    table = backend.build_table(alg.pair_rows)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for ta, tb in term_pairs:
            backend.apoly_mul_terms(ta, tb, table, alg.dim)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_brackets(alg, n, count, seed):
    """End-to-end: operator brackets through whichever backend is active."""
    rng = random.Random(seed)
    ops = [rand_diffop(rng, alg, n) for _ in range(count + 1)]
    t0 = time.perf_counter()
    for x, y in zip(ops, ops[1:]):
        wn.bracket(x, y)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--count", type=int, default=2000)
    args = parser.parse_args()

    alg = wn.jet_algebra(2, 2)
    rng = random.Random(17)
    pairs = [(_rand_coords(rng, alg.dim), _rand_coords(rng, alg.dim))
             for _ in range(args.count)]
    raw = []
    for _ in range(200):
        pa = rand_apoly(rng, alg, 2, max_degree=3, max_terms=4)
        pb = rand_apoly(rng, alg, 2, max_degree=3, max_terms=4)
        raw.append(({e: c.coords for e, c in pa.terms.items()},
                    {e: c.coords for e, c in pb.terms.items()}))

    backends = [("python", _kernels_py)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))

    print(f"active package backend: {wn.KERNEL_BACKEND}")
    print(f"algebra: dim {alg.dim} (second-order 2-jets)\n")
    print(f"{'kernel':22s} {'python':>10s} {'cython':>10s} {'speedup':>9s}")
    rows = [
        ("ael_mul x%d" % args.count, bench_ael),
        ("apoly_mul x200", bench_apoly),
    ]
    for label, fn in rows:
        data = pairs if fn is bench_ael else raw
        times = {name: fn(mod, alg, data, args.repeat) for name, mod in backends}
        py = times["python"]
        cy = times.get("cython")
        speedup = f"{py / cy:8.2f}x" if cy else "      n/a"
        cy_s = f"{cy:9.4f}s" if cy else "      n/a"
        print(f"{label:22s} {py:9.4f}s {cy_s} {speedup}")

    secs = bench_brackets(alg, 2, 300, seed=3)
    print(f"\n300 operator brackets through the active backend: {secs:.3f}s")


if __name__ == "__main__":
    main()
