"""Pure-numpy versions of the hot loops (no compilation step)."""
import numpy as np


def cyclic_shift_or(shifts, bits):
    out = np.zeros(bits.shape[0], dtype=np.bool_)
    for s in np.asarray(shifts).tolist():
        out |= np.roll(bits, s)
    return out


def cyclic_convolution(f, g):
    n = f.shape[0]
    h = np.zeros(n, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    for x in np.flatnonzero(f).tolist():
        h += f[x] * np.roll(g, x)
    return h


def ntt_butterflies(a, twiddles, mod):
    n = a.shape[0]
    length = 2
    while length <= n:
        half = length // 2
        w = twiddles[:: n // length][:half]
        blocks = a.reshape(-1, length)
        u = blocks[:, :half].copy()
        v = blocks[:, half:] * w % mod
        blocks[:, :half] = (u + v) % mod
        blocks[:, half:] = (u - v) % mod
        length *= 2
    return a


def pair_distance_mark(points, p):
    n = points.shape[0]
    out = np.zeros(p, dtype=np.bool_)
    if n:
        out[0] = True
    for i in range(n - 1):
        diff = points[i + 1:] - points[i]
        out[(diff * diff).sum(axis=1) % p] = True
    return out
