"""Compare the numba and numpy paths of the minor-valuation kernel.

    python3 benchmarks/bench_kernels.py [--sizes 3 4 5] [--repeat 5]

Both paths run on the same random polynomial matrices; results must agree.
"""
import argparse
import time

import numpy as np

from almostnov import _kernels


def random_matrix(rng, n, degree):
    A = rng.integers(-3, 4, size=(n, n, degree + 1))
    A[rng.random((n, n)) < 0.3] = 0
    return A.astype(np.int64)


def timed(fn, A, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(A, 0)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--degree", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or ALMOSTNOV_NO_NUMBA set): numpy path only")
    else:
        _kernels._minor_valuations_jit(random_matrix(rng, 2, 1), 0)  # compile outside the timing

    print("%4s %12s %12s %8s" % ("n", "numpy [s]", "numba [s]", "speedup"))
    for n in args.sizes:
        A = random_matrix(rng, n, args.degree)
        t_np, ref = timed(_kernels.minor_valuations_numpy, A, args.repeat)
        if _kernels.HAVE_NUMBA:
            t_jit, got = timed(_kernels._minor_valuations_jit, A, args.repeat)
            assert np.array_equal(ref, got), (ref, got)
            print("%4d %12.5f %12.5f %8.1fx" % (n, t_np, t_jit, t_np / t_jit))
        else:
            print("%4d %12.5f %12s %8s" % (n, t_np, "-", "-"))


if __name__ == "__main__":
    main()
