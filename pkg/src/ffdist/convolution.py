"""Exact cyclic convolution of integer count vectors.

Small lengths use the direct double loop. Longer ones zero-pad to a power of
two, run a number-theoretic transform modulo three word-size primes, rebuild
the exact linear convolution by CRT and fold it back onto the cycle. Counts
are bounded by ``sum(f) * sum(g) < 2**63`` before anything runs, so the CRT
reconstruction (modulus ~2**86) is exact.
"""
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import CountOverflowError
from .prime_field import power_table

# (prime, primitive root); each prime has 2**23 | prime - 1
NTT_PRIMES = ((998244353, 3), (167772161, 3), (469762049, 3))
COUNT_LIMIT = 2**63
CROSSOVER = 256


def check_count_budget(f: np.ndarray, g: np.ndarray) -> None:
    if f.size and (f.min() < 0 or g.min() < 0):
        raise ValueError("count vectors must be nonnegative")
    bound = int(f.sum(dtype=object)) * int(g.sum(dtype=object))
    if bound >= COUNT_LIMIT:
        raise CountOverflowError(f"convolution mass {bound} exceeds the 64-bit count budget")


@lru_cache(maxsize=32)
def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


@lru_cache(maxsize=64)
def _twiddles(n: int, mod: int, root: int, inverse: bool) -> np.ndarray:
    w = pow(root, (mod - 1) // n, mod)
    if inverse:
        w = pow(w, mod - 2, mod)
    return power_table(w, max(n // 2, 1), mod)


def ntt(a: np.ndarray, mod: int, root: int, inverse: bool = False) -> np.ndarray:
    """Length-``2**k`` transform of ``a`` mod ``mod`` (returns a new array)."""
    n = a.shape[0]
    if n & (n - 1):
        raise ValueError("NTT length must be a power of two")
    out = np.ascontiguousarray((a % mod)[_bit_reverse(n)], dtype=np.int64)
    kernels.ntt_butterflies(out, _twiddles(n, mod, root, inverse), mod)
    if inverse:
        out = out * pow(n, mod - 2, mod) % mod
    return out


def _garner(r1, r2, r3):
    (m1, _), (m2, _), (m3, _) = NTT_PRIMES
    t2 = (r2 - r1) % m2 * pow(m1, -1, m2) % m2
    x12 = r1 + m1 * t2
    t3 = (r3 - x12 % m3) % m3 * pow(m1 * m2 % m3, -1, m3) % m3
    # true values are < 2**63, so uint64 wraparound yields them exactly
    out = x12.astype(np.uint64) + np.uint64(m1 * m2) * t3.astype(np.uint64)
    return out.astype(np.int64)


def ntt_cyclic_convolution(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    n = f.shape[0]
    size = 1
    while size < 2 * n - 1:
        size *= 2
    fp = np.zeros(size, dtype=np.int64)
    gp = np.zeros(size, dtype=np.int64)
    fp[:n] = f
    gp[:n] = g
    residues = []
    for mod, root in NTT_PRIMES:
        fa = ntt(fp, mod, root)
        ga = ntt(gp, mod, root)
        residues.append(ntt(fa * ga % mod, mod, root, inverse=True))
    linear = _garner(*residues)
    h = linear[:n].copy()
    h[: n - 1] += linear[n: 2 * n - 1]
    return h


def cyclic_convolution(f, g, method: str = "auto") -> np.ndarray:
    """Exact ``h[t] = sum_x f[x] g[t - x]`` over Z/n.

    ``method`` is ``"naive"``, ``"fast"`` or ``"auto"`` (fast from length
    :data:`CROSSOVER` up).
    """
    f = np.ascontiguousarray(f, dtype=np.int64)
    g = np.ascontiguousarray(g, dtype=np.int64)
    if f.shape != g.shape or f.ndim != 1:
        raise ValueError("operands must be 1-d arrays of equal length")
    check_count_budget(f, g)
    if method == "auto":
        method = "fast" if f.shape[0] >= CROSSOVER else "naive"
    if method == "naive":
        return kernels.cyclic_convolution(f, g)
    if method == "fast":
        return ntt_cyclic_convolution(f, g)
    raise ValueError(f"unknown method {method!r}")
