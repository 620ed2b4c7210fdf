"""Hot loops compiled with numba.

Every function here has a twin with the same signature in
:mod:`ffdist.kernels.numpy_kernels`; the two must agree bit for bit.
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def cyclic_shift_or(shifts, bits):
    """Return ``out`` with ``out[(s + t) % n] = True`` for every shift s and set bit t."""
    n = bits.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    support = np.flatnonzero(bits)
    for s in shifts:
        s = s % n
        for t in support:
            u = s + t
            out[u - n if u >= n else u] = True
    return out


@njit(cache=True, nogil=True)
def cyclic_convolution(f, g):
    """Naive cyclic convolution ``h[t] = sum_x f[x] * g[t - x]`` (indices mod n)."""
    n = f.shape[0]
    h = np.zeros(n, dtype=np.int64)
    for x in range(n):
        fx = f[x]
        if fx == 0:
            continue
        for y in range(n - x):
            h[x + y] += fx * g[y]
        for y in range(n - x, n):
            h[x + y - n] += fx * g[y]
    return h


@njit(cache=True, nogil=True)
def ntt_butterflies(a, twiddles, mod):
    # a is already in bit-reversed order; twiddles[i] = w**i for i < n/2,
    # w a primitive n-th root of unity mod `mod` (< 2**31).
    n = a.shape[0]
    length = 2
    while length <= n:
        half = length // 2
        step = n // length
        for start in range(0, n, length):
            for j in range(half):
                u = a[start + j]
                v = a[start + j + half] * twiddles[j * step] % mod
                x = u + v
                if x >= mod:
                    x -= mod
                y = u - v
                if y < 0:
                    y += mod
                a[start + j] = x
                a[start + j + half] = y
        length *= 2
    return a


@njit(cache=True, nogil=True)
def pair_distance_mark(points, p):
    """Mark every value ``sum_k (x_k - y_k)**2 mod p`` over ordered pairs of rows."""
    n, d = points.shape
    out = np.zeros(p, dtype=np.bool_)
    for i in range(n):
        out[0] = True
        for j in range(i + 1, n):
            s = 0
            for k in range(d):
                t = points[i, k] - points[j, k]
                s += t * t
            out[s % p] = True
    return out
