"""Subsets of F_p / F_{p^2} as boolean arrays, plus exact counting convolutions.

Sums over F_p are cyclic shifts of the index space. Products and quotients go
through the discrete logarithm: nonzero elements map to Z/(q-1) where the
multiplicative structure becomes additive, and the same shift-or kernel runs
there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import kernels
from .convolution import check_count_budget, cyclic_convolution
from .errors import ContextMismatchError, FieldError
from .prime_field import ExtFieldCtx, FieldCtx


@dataclass(frozen=True, eq=False)
class FSet:
    """A subset of a field, stored as a boolean array indexed by element."""

    ctx: FieldCtx | ExtFieldCtx
    bits: np.ndarray = field(repr=False)
    card: int = field(init=False)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.bool_)
        if bits.shape != (self.ctx.size,):
            raise ValueError(f"bit array of shape {bits.shape} does not match field of size {self.ctx.size}")
        bits = bits.copy()
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "card", int(np.count_nonzero(bits)))

    @classmethod
    def from_elements(cls, ctx, elements: Iterable[int]) -> FSet:
        idx = np.asarray(list(elements) if not isinstance(elements, np.ndarray) else elements, dtype=np.int64)
        ctx.check(idx)
        bits = np.zeros(ctx.size, dtype=np.bool_)
        bits[idx] = True
        return cls(ctx, bits)

    @classmethod
    def empty(cls, ctx) -> FSet:
        return cls(ctx, np.zeros(ctx.size, dtype=np.bool_))

    @classmethod
    def full(cls, ctx) -> FSet:
        return cls(ctx, np.ones(ctx.size, dtype=np.bool_))

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def nonzero(self) -> np.ndarray:
        return np.flatnonzero(self.bits[1:]) + 1

    def __len__(self) -> int:
        return self.card

    def __contains__(self, x) -> bool:
        return 0 <= int(x) < self.ctx.size and bool(self.bits[int(x)])

    def __iter__(self):
        return iter(self.elements().tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FSet):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.ctx, self.bits.tobytes()))

    def __repr__(self) -> str:
        shown = ", ".join(self.ctx.format(x) for x in self.elements()[:16])
        more = ", ..." if self.card > 16 else ""
        return f"FSet({{{shown}{more}}}, size={self.ctx.size})"

    def issubset(self, other: FSet) -> bool:
        _same_ctx(self, other)
        return not np.any(self.bits & ~other.bits)

    def isdisjoint(self, other: FSet) -> bool:
        _same_ctx(self, other)
        return not np.any(self.bits & other.bits)

    def __or__(self, other: FSet) -> FSet:
        _same_ctx(self, other)
        return FSet(self.ctx, self.bits | other.bits)

    def __and__(self, other: FSet) -> FSet:
        _same_ctx(self, other)
        return FSet(self.ctx, self.bits & other.bits)

    def __sub__(self, other: FSet) -> FSet:
        _same_ctx(self, other)
        return FSet(self.ctx, self.bits & ~other.bits)

    def image(self, fn) -> FSet:
        """The set ``{fn(x) : x in self}`` for a vectorised field map ``fn``."""
        return FSet.from_elements(self.ctx, np.asarray(fn(self.elements()), dtype=np.int64))


def _same_ctx(*sets):
    ctx = sets[0].ctx
    for s in sets[1:]:
        if s.ctx != ctx:
            raise ContextMismatchError(f"sets over {ctx} and {s.ctx} cannot be combined")
    return ctx


def _require_nonempty(*sets):
    for s in sets:
        if s.card == 0:
            raise FieldError("operation requires nonempty sets")


def _shift_or(ctx, shifts: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """Support of ``shifts + bits`` in the additive group of ``ctx``."""
    if isinstance(ctx, FieldCtx):
        return kernels.cyclic_shift_or(np.ascontiguousarray(shifts, dtype=np.int64), bits)
    # F_{p^2}: index a + b*p, so the additive group is Z/p x Z/p on a (b, a) grid
    p = ctx.p
    grid = bits.reshape(p, p)
    out = np.zeros_like(grid)
    for s in np.asarray(shifts).tolist():
        out |= np.roll(grid, (s // p, s % p), axis=(0, 1))
    return out.reshape(-1)


def sumset(S: FSet, T: FSet) -> FSet:
    """``{s + t : s in S, t in T}``."""
    ctx = _same_ctx(S, T)
    _require_nonempty(S, T)
    if S.card > T.card:
        S, T = T, S
    return FSet(ctx, _shift_or(ctx, S.elements(), T.bits))


def negate_set(S: FSet) -> FSet:
    """``{-s : s in S}``."""
    return FSet(S.ctx, S.bits[S.ctx.neg(S.ctx.elements())])


def difference_set(A: FSet, B: FSet) -> FSet:
    """``{a - b : a in A, b in B}``."""
    _same_ctx(A, B)
    return sumset(A, negate_set(B))


def squared_difference_set(A: FSet) -> FSet:
    """``{(a - b)^2 : a, b in A}``; this is the one-dimensional distance set."""
    _require_nonempty(A)
    return difference_set(A, A).image(A.ctx.sqr)


def k_fold_sumset(S: FSet, k: int) -> FSet:
    """``S + S + ... + S`` with ``k`` summands."""
    if k < 1:
        raise FieldError(f"k-fold sumset needs k >= 1, got {k}")
    _require_nonempty(S)
    out = S
    for _ in range(k - 1):
        if out.card == S.ctx.size:
            break
        out = sumset(out, S)
    return out


def _log_bits(S: FSet) -> np.ndarray:
    ctx = S.ctx
    bits = np.zeros(ctx.order, dtype=np.bool_)
    bits[ctx.log_table[S.nonzero()]] = True
    return bits


def _from_log_bits(ctx, log_bits: np.ndarray, with_zero: bool) -> FSet:
    bits = np.zeros(ctx.size, dtype=np.bool_)
    bits[ctx.exp_table[log_bits]] = True
    bits[0] = with_zero
    return FSet(ctx, bits)


def _log_shift_or(shifts: np.ndarray, bits: np.ndarray) -> np.ndarray:
    if shifts.size == 0 or not bits.any():
        return np.zeros_like(bits)
    return kernels.cyclic_shift_or(np.ascontiguousarray(shifts, dtype=np.int64), bits)


def product_set(S: FSet, T: FSet) -> FSet:
    """``{s * t : s in S, t in T}``."""
    ctx = _same_ctx(S, T)
    _require_nonempty(S, T)
    ls, lt = _log_bits(S), _log_bits(T)
    if np.count_nonzero(ls) > np.count_nonzero(lt):
        ls, lt = lt, ls
    prod = _log_shift_or(np.flatnonzero(ls), lt)
    return _from_log_bits(ctx, prod, bool(S.bits[0] or T.bits[0]))


def quotient_set(S: FSet) -> FSet:
    """``{a / b : a, b in S, b != 0}``."""
    ctx = S.ctx
    if S.nonzero().size == 0:
        raise FieldError("quotient set needs a nonzero denominator; the set is contained in {0}")
    ls = _log_bits(S)
    shifts = (-np.flatnonzero(ls)) % ctx.order
    quot = _log_shift_or(shifts, ls)
    return _from_log_bits(ctx, quot, bool(S.bits[0]))


@dataclass(frozen=True, eq=False)
class CountVector:
    """``counts[x]`` is the multiplicity of element ``x``."""

    ctx: FieldCtx
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.shape != (self.ctx.size,):
            raise ValueError("count vector length must equal the field size")
        if counts.size and counts.min() < 0:
            raise ValueError("counts must be nonnegative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def indicator(cls, S: FSet) -> CountVector:
        return cls(S.ctx, S.bits.astype(np.int64))

    @property
    def total(self) -> int:
        return int(self.counts.sum(dtype=object))

    def support(self) -> FSet:
        return FSet(self.ctx, self.counts > 0)

    def __getitem__(self, x) -> int:
        return int(self.counts[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CountVector):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.counts, other.counts)

    def as_dict(self) -> dict[int, int]:
        return {int(x): int(self.counts[x]) for x in np.flatnonzero(self.counts)}


def _prime_ctx(f: CountVector, g: CountVector) -> FieldCtx:
    if f.ctx != g.ctx:
        raise ContextMismatchError(f"count vectors over {f.ctx} and {g.ctx}")
    if not isinstance(f.ctx, FieldCtx):
        raise TypeError("counting convolutions are defined over prime fields only")
    return f.ctx


def additive_count_convolution(f: CountVector, g: CountVector, method: str = "auto") -> CountVector:
    """``h[t] = sum_x f[x] g[t - x]`` over F_p, exactly."""
    ctx = _prime_ctx(f, g)
    return CountVector(ctx, cyclic_convolution(f.counts, g.counts, method))


def multiplicative_count_convolution(f: CountVector, g: CountVector, method: str = "auto") -> CountVector:
    """``h[t] = sum_{x*y = t} f[x] g[y]`` over F_p, exactly.

    Nonzero entries are reindexed by discrete log and convolved cyclically
    over Z/(p-1); every pair touching 0 lands in ``h[0]``.
    """
    ctx = _prime_ctx(f, g)
    fc, gc = f.counts, g.counts
    h = np.zeros(ctx.size, dtype=np.int64)
    check_count_budget(fc, gc)
    h[ctx.exp_table] = cyclic_convolution(fc[ctx.exp_table], gc[ctx.exp_table], method)
    h[0] = fc[0] * gc.sum() + gc[0] * fc.sum() - fc[0] * gc[0]
    return CountVector(ctx, h)


def naive_additive_count_convolution(f: CountVector, g: CountVector) -> CountVector:
    """Reference double loop; the oracle for :func:`additive_count_convolution`."""
    ctx = _prime_ctx(f, g)
    p = ctx.p
    h = [0] * p
    fc, gc = f.counts.tolist(), g.counts.tolist()
    for x in range(p):
        if fc[x]:
            for y in range(p):
                h[(x + y) % p] += fc[x] * gc[y]
    return CountVector(ctx, h)


def naive_multiplicative_count_convolution(f: CountVector, g: CountVector) -> CountVector:
    """Reference double loop; the oracle for :func:`multiplicative_count_convolution`."""
    ctx = _prime_ctx(f, g)
    p = ctx.p
    h = [0] * p
    fc, gc = f.counts.tolist(), g.counts.tolist()
    for x in range(p):
        if fc[x]:
            for y in range(p):
                h[x * y % p] += fc[x] * gc[y]
    return CountVector(ctx, h)
