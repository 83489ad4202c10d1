#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Run after installing the package:

    python benchmarks/bench_kernels.py

The same comparison can be forced end-to-end by running anything in the
package with BLOWUP_PURE_NUMPY=1.
"""

from __future__ import annotations

import random
import time

import numpy as np

from blowup.kernels import _numpy as knp

try:
    from blowup.kernels import _numba as knb
except ImportError:
    knb = None

from blowup.invariants import length_table, maximal_ideal_handle
from blowup.ideals import IdealHandle
from blowup.parse import parse_poly
from blowup.rings import RingSpec


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def random_rows(rng, n, d, hi):
    return np.asarray(
        sorted({tuple(rng.randint(0, hi) for _ in range(d)) for _ in range(n)}), dtype=np.int64
    )


def bench_kernel(name, make_args, sizes):
    print("\n%s" % name)
    print("  %10s %12s %12s %8s" % ("size", "numpy", "numba", "speedup"))
    for size in sizes:
        args = make_args(size)
        t_np = timeit(lambda: getattr(knp, name)(*args))
        if knb is not None:
            getattr(knb, name)(*args)  # warm the JIT cache
            t_nb = timeit(lambda: getattr(knb, name)(*args))
            ratio = t_np / t_nb if t_nb > 0 else float("inf")
            print("  %10d %10.2f ms %10.2f ms %7.1fx" % (size, t_np * 1e3, t_nb * 1e3, ratio))
        else:
            print("  %10d %10.2f ms %12s" % (size, t_np * 1e3, "n/a"))


def main():
    rng = random.Random(5)
    print("kernel backends: numpy%s" % (" + numba" if knb is not None else " only"))

    bench_kernel(
        "minimal_mask",
        lambda n: (random_rows(rng, n, 3, 40),),
        (500, 2000, 8000),
    )
    bench_kernel(
        "divides_any",
        lambda n: (random_rows(rng, 200, 3, 12), random_rows(rng, n, 3, 24)),
        (1000, 10000, 50000),
    )
    bench_kernel(
        "staircase_count_2d",
        lambda n: (
            np.vstack(
                [
                    np.asarray([[0, 50], [50, 0]], dtype=np.int64),
                    random_rows(rng, n, 2, 50),
                ]
            ),
        ),
        (1000, 20000, 100000),
    )

    # end-to-end: one bigraded length-table fill on the 3-variable family
    ring = RingSpec(("X", "Y", "Z"))
    gens = [
        "Y^3", "X^3*Y^2", "X*Y^2*Z", "Y^2*Z^3", "X^5*Y", "X*Y*Z^2",
        "Y*Z^5", "X^7", "X^2*Z", "X*Z^4", "Z^7",
    ]
    I = IdealHandle(ring, [parse_poly(t, ring) for t in gens])
    t0 = time.perf_counter()
    length_table(I, 4, 4, 5)
    print("\nlength_table(I, 4, 4, 5) on the 11-generator 3-variable ideal: %.2f s" % (time.perf_counter() - t0))
    t0 = time.perf_counter()
    length_table(maximal_ideal_handle(ring), 8, 8, 5)
    print("length_table(m, 8, 8, 5): %.2f s" % (time.perf_counter() - t0))
    print("\n(slab counting feeds raw product rows to the 2-d kernel, so the")
    print("staircase and divisibility kernels dominate the table fill)")


if __name__ == "__main__":
    main()
