"""Compare the compiled row-reduction kernel with the numpy fallback.

Run:  python3 benchmarks/bench_echelon.py [--sizes 200,500,1000] [--prime 32003]

Both backends are timed on identical pseudo-random matrices and their
pivot columns are checked for agreement, so this doubles as a backend
consistency test on large inputs.
"""

import argparse
import time

import numpy as np

from quadgor import linalg


def bench(size, p, density, rng, repeats=3):
    a = rng.integers(0, p, size=(size, size), dtype=np.int64)
    mask = rng.random(size=(size, size)) < density
    a = a * mask
    results = {}
    backends = [("numpy", linalg._echelon_numpy)]
    if linalg.HAVE_COMPILED_KERNEL:
        from quadgor._rrefcore import echelon

        backends.append(("compiled", echelon))
    pivots = {}
    for name, fn in backends:
        best = float("inf")
        for _ in range(repeats):
            work = a.copy()
            t0 = time.perf_counter()
            piv = fn(work, p, True)
            best = min(best, time.perf_counter() - t0)
        results[name] = best
        pivots[name] = list(piv)
    if len(pivots) == 2 and pivots["numpy"] != pivots["compiled"]:
        raise AssertionError(f"backend disagreement at size {size}")
    return results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="200,500,1000")
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"prime={args.prime} density={args.density} "
          f"compiled_kernel={linalg.HAVE_COMPILED_KERNEL}")
    print(f"{'size':>6} {'numpy (s)':>12} {'compiled (s)':>14} {'speedup':>9}")
    for size in (int(s) for s in args.sizes.split(",")):
        r = bench(size, args.prime, args.density, rng)
        numpy_t = r["numpy"]
        if "compiled" in r:
            print(f"{size:>6} {numpy_t:>12.4f} {r['compiled']:>14.4f} "
                  f"{numpy_t / r['compiled']:>8.1f}x")
        else:
            print(f"{size:>6} {numpy_t:>12.4f} {'-':>14} {'-':>9}")


if __name__ == "__main__":
    main()
