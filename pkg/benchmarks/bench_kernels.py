"""Compare the numba kernels with their pure-numpy twins.

    python benchmarks/bench_kernels.py [--quick] [--repeat N]

Every kernel is run on identical inputs under both backends; outputs are
checked for equality before any timing is reported. numba is warmed up
first so compilation time is excluded.
"""
import argparse
import sys
import timeit

import numpy as np

from ffdist.convolution import NTT_PRIMES, _bit_reverse, _twiddles
from ffdist.kernels import numba_kernels, numpy_kernels


def cases(quick: bool):
    rng = np.random.default_rng(0)
    p = 1009 if quick else 65537
    n = 256 if quick else 4096
    ntt_n = 1 << (10 if quick else 16)
    npts = 200 if quick else 2000

    shifts = np.flatnonzero(rng.random(p) < 0.05).astype(np.int64)
    bits = rng.random(p) < 0.05
    f = rng.integers(0, 100, n).astype(np.int64)
    g = rng.integers(0, 100, n).astype(np.int64)
    mod, root = NTT_PRIMES[0]
    a = rng.integers(0, mod, ntt_n).astype(np.int64)[_bit_reverse(ntt_n)]
    tw = _twiddles(ntt_n, mod, root, False)
    pts = rng.integers(0, 1009, (npts, 4)).astype(np.int64)

    yield f"cyclic_shift_or p={p}", lambda k: k.cyclic_shift_or(shifts, bits)
    yield f"cyclic_convolution n={n}", lambda k: k.cyclic_convolution(f, g)
    yield f"ntt_butterflies n={ntt_n}", lambda k: k.ntt_butterflies(a.copy(), tw, mod)
    yield f"pair_distance_mark n={npts} d=4", lambda k: k.pair_distance_mark(pts, 1009)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--quick", action="store_true", help="small inputs, for smoke testing")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    print(f"{'kernel':36s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, fn in cases(args.quick):
        ref, fast = fn(numpy_kernels), fn(numba_kernels)  # also warms the JIT
        if not np.array_equal(ref, fast):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_np = min(timeit.repeat(lambda: fn(numpy_kernels), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: fn(numba_kernels), number=1, repeat=args.repeat))
        print(f"{name:36s} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
