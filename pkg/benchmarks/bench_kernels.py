"""Time the numba kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [RING ...]
"""

import argparse
import time

import numpy as np

from blrings import _kernels
from blrings.ideals import enumerate_ideals
from blrings.ringspec import parse_ring

DEFAULT_RINGS = ["Z36", "Z8xZ9", "Z9xZ9", "nil2(3)", "Z2xZ2xZ2xZ2"]
SUBSET_CAP = 16


def best_of(fn, repeat):
    fn()  # warm-up, also triggers JIT compilation
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(R):
    members = enumerate_ideals(R).members
    out = {
        "principal_masks": lambda impl: impl.principal_masks(R.add, R.mul, R.zero),
        "op_masks": lambda impl: impl.op_masks(R.add, R.mul, R.zero, members),
    }
    if R.order <= SUBSET_CAP:
        out["subset_ideals"] = lambda impl: impl.subset_ideals(R.add, R.mul, R.zero)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("rings", nargs="*", default=DEFAULT_RINGS)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed, only the numpy backend is available")
    print(f"{'ring':<14}{'kernel':<17}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}")
    for spec in args.rings:
        R = parse_ring(spec)
        for name, call in cases(R).items():
            t_np = best_of(lambda: call(_kernels.numpy_impl), args.repeat)
            t_nb = best_of(lambda: call(_kernels.numba_impl), args.repeat)
            a, b = call(_kernels.numpy_impl), call(_kernels.numba_impl)
            if isinstance(a, tuple):
                same = all(np.array_equal(x, y) for x, y in zip(a, b))
            else:
                same = np.array_equal(np.sort(a, axis=0), np.sort(b, axis=0))
            flag = "" if same else "  MISMATCH"
            print(f"{spec:<14}{name:<17}{t_np * 1e3:>10.3f}{t_nb * 1e3:>10.3f}{t_np / t_nb:>8.1f}x{flag}")


if __name__ == "__main__":
    main()
