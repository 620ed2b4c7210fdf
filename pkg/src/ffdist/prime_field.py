"""Exact arithmetic in F_p and F_{p^2} backed by dense lookup tables.

Elements of F_p are the integers ``0..p-1``. An element ``a + b*w`` of
F_{p^2} = F_p[w]/(w^2 - n) is stored as the single index ``a + b*p`` so that
subsets of either field can be carried as flat boolean arrays.

All operations accept Python ints or integer numpy arrays and reduce into the
canonical range.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import FieldError

MAX_MODULUS = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def power_table(base: int, count: int, mod: int) -> np.ndarray:
    """``[base**0, base**1, ..., base**(count-1)] mod mod`` (mod < 2**31)."""
    out = np.ones(max(count, 1), dtype=np.int64)
    m = 1
    step = base % mod
    while m < count:
        k = min(m, count - m)
        out[m:m + k] = out[:k] * step % mod
        step = step * step % mod
        m += k
    return out[:count]


def _scalar(v):
    return int(v) if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class FieldCtx:
    """The prime field F_p with inverse, square, Legendre and discrete-log tables."""

    p: int
    inv_table: np.ndarray = field(init=False, repr=False, compare=False)
    sqr_table: np.ndarray = field(init=False, repr=False, compare=False)
    legendre_table: np.ndarray = field(init=False, repr=False, compare=False)
    generator: int = field(init=False, repr=False, compare=False)
    exp_table: np.ndarray = field(init=False, repr=False, compare=False)
    log_table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = self.p
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
            raise FieldError(f"modulus must be an integer, got {p!r}")
        if p < 3 or p > MAX_MODULUS or not is_prime(int(p)):
            raise FieldError(f"modulus must be an odd prime in [3, {MAX_MODULUS}], got {p}")
        p = int(p)
        object.__setattr__(self, "p", p)

        xs = np.arange(p, dtype=np.int64)
        sqr = xs * xs % p
        legendre = np.full(p, -1, dtype=np.int8)
        legendre[sqr] = 1
        legendre[0] = 0

        g = _find_generator(p)
        exp = power_table(g, p - 1, p)
        log = np.full(p, -1, dtype=np.int64)
        log[exp] = np.arange(p - 1, dtype=np.int64)
        inv = np.zeros(p, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (p - 1)]

        for name, arr in [("sqr_table", sqr), ("legendre_table", legendre),
                          ("exp_table", exp), ("log_table", log), ("inv_table", inv)]:
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "generator", g)

    @property
    def size(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.p - 1

    def check(self, x):
        a = np.asarray(x)
        if a.size and (a.min() < 0 or a.max() >= self.p):
            raise FieldError(f"element(s) outside [0, {self.p})")
        return x

    def add(self, x, y):
        return _scalar((np.asarray(x, dtype=np.int64) + y) % self.p)

    def sub(self, x, y):
        return _scalar((np.asarray(x, dtype=np.int64) - y) % self.p)

    def neg(self, x):
        return _scalar(-np.asarray(x, dtype=np.int64) % self.p)

    def mul(self, x, y):
        return _scalar(np.asarray(x, dtype=np.int64) * y % self.p)

    def sqr(self, x):
        return _scalar(self.sqr_table[np.asarray(x, dtype=np.int64) % self.p])

    def inv(self, x):
        a = np.asarray(x, dtype=np.int64) % self.p
        if np.any(a == 0):
            raise FieldError("inverse of zero")
        return _scalar(self.inv_table[a])

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(x), -e, self.p)
        return pow(int(x), e, self.p)

    def elements(self) -> np.ndarray:
        return np.arange(self.p, dtype=np.int64)

    def format(self, x: int) -> str:
        return str(int(x))


def _find_generator(p: int) -> int:
    factors = prime_factors(p - 1)
    for g in range(2 if p > 2 else 1, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    return 1  # p == 2 only; unreachable for odd p


@lru_cache(maxsize=64)
def get_field(p: int) -> FieldCtx:
    """Cached :class:`FieldCtx` for ``p``."""
    return FieldCtx(p)


def find_nonresidue(ctx: FieldCtx) -> int:
    """Smallest positive quadratic nonresidue mod p."""
    return int(np.argmax(ctx.legendre_table == -1))


def sqrt_of_minus_one(ctx: FieldCtx) -> int | None:
    """Smaller square root of -1 mod p, or ``None`` when p = 3 mod 4."""
    if ctx.p % 4 != 1:
        return None
    roots = np.flatnonzero(ctx.sqr_table == ctx.p - 1)
    return int(roots[0])


def is_square(x, ctx) -> bool:
    """Whether ``x`` is 0 or a square in the field, by Euler's criterion."""
    x = int(x)
    ctx.check(x)
    if x == 0:
        return True
    euler = ctx.pow(x, (ctx.size - 1) // 2) == 1
    if isinstance(ctx, FieldCtx) and euler != (ctx.legendre_table[x] == 1):
        raise AssertionError(f"Euler criterion disagrees with square table at {x} mod {ctx.p}")
    return euler


@dataclass(frozen=True)
class ExtFieldCtx:
    """F_{p^2} as F_p[w]/(w^2 - n), n the smallest nonresidue mod p.

    The element ``a + b*w`` has index ``a + b*p``.
    """

    p: int
    base: FieldCtx = field(init=False, repr=False, compare=False)
    n: int = field(init=False, compare=False)
    generator: int = field(init=False, repr=False, compare=False)
    exp_table: np.ndarray = field(init=False, repr=False, compare=False)
    log_table: np.ndarray = field(init=False, repr=False, compare=False)
    inv_table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        base = get_field(self.p)
        q = base.p * base.p
        if q > MAX_MODULUS:
            raise FieldError(f"p^2 = {q} exceeds the field size cap {MAX_MODULUS}")
        object.__setattr__(self, "p", base.p)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "n", find_nonresidue(base))

        g = self._find_generator()
        exp = np.ones(q - 1, dtype=np.int64)
        m, gm = 1, g
        while m < q - 1:
            k = min(m, q - 1 - m)
            exp[m:m + k] = self.mul(exp[:k], gm)
            gm = self.mul(gm, gm)
            m += k
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        if np.count_nonzero(log >= 0) != q - 1:
            raise AssertionError("generator does not span F_q^*")
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (q - 1)]
        for name, arr in [("exp_table", exp), ("log_table", log), ("inv_table", inv)]:
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "generator", g)

    def _find_generator(self) -> int:
        q = self.q
        factors = prime_factors(q - 1)
        for g in range(2, q):
            if all(self.pow(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise AssertionError("no generator found")

    @property
    def q(self) -> int:
        return self.p * self.p

    @property
    def size(self) -> int:
        return self.q

    @property
    def order(self) -> int:
        return self.q - 1

    def encode(self, a, b):
        return _scalar(np.asarray(a, dtype=np.int64) % self.p + (np.asarray(b, dtype=np.int64) % self.p) * self.p)

    def decode(self, x):
        x = np.asarray(x, dtype=np.int64)
        return _scalar(x % self.p), _scalar(x // self.p)

    def check(self, x):
        a = np.asarray(x)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise FieldError(f"element(s) outside [0, {self.q})")
        return x

    def add(self, x, y):
        (a, b), (c, d) = self.decode(x), self.decode(y)
        return self.encode(np.add(a, c), np.add(b, d))

    def sub(self, x, y):
        (a, b), (c, d) = self.decode(x), self.decode(y)
        return self.encode(np.subtract(a, c), np.subtract(b, d))

    def neg(self, x):
        a, b = self.decode(x)
        return self.encode(np.negative(a), np.negative(b))

    def mul(self, x, y):
        # (a + bw)(c + dw) = (ac + n bd) + (ad + bc) w
        p = self.p
        (a, b), (c, d) = self.decode(x), self.decode(y)
        re = (np.multiply(a, c) + self.n * (np.multiply(b, d) % p)) % p
        im = (np.multiply(a, d) + np.multiply(b, c)) % p
        return self.encode(re, im)

    def sqr(self, x):
        return self.mul(x, x)

    def inv(self, x):
        a = np.asarray(x, dtype=np.int64)
        if np.any(a == 0):
            raise FieldError("inverse of zero")
        return _scalar(self.inv_table[a])

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        result, base = 1, int(x)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def format(self, x: int) -> str:
        a, b = self.decode(int(x))
        return f"{a}+{b}*w"


@lru_cache(maxsize=16)
def get_ext_field(p: int) -> ExtFieldCtx:
    return ExtFieldCtx(p)
