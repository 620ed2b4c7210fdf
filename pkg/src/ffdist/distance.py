"""Distance sets ``{sum_i (x_i - y_i)^2 : x, y in E}`` over F_p and F_{p^2}.

For a Cartesian power ``A^d`` the distance set splits coordinatewise, so it is
the d-fold sumset of the one-dimensional set ``{(a - b)^2}``. The pairwise
brute force stays available as the reference.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

import numpy as np

from . import kernels
from .errors import ContextMismatchError, FieldError
from .fset import FSet, k_fold_sumset, squared_difference_set
from .prime_field import ExtFieldCtx, FieldCtx

MAX_DIM = 12
MAX_PAIRS = 10**8


@dataclass(frozen=True, eq=False)
class PointSet:
    """Distinct points of F^d, rows of an ``(n, d)`` integer array of element indices."""

    ctx: FieldCtx | ExtFieldCtx
    dim: int
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise FieldError(f"dimension must lie in [1, {MAX_DIM}], got {self.dim}")
        pts = np.asarray(self.points, dtype=np.int64).reshape(-1, self.dim)
        self.ctx.check(pts)
        pts = np.unique(pts, axis=0) if len(pts) else pts
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    def translate(self, v) -> PointSet:
        v = np.asarray(v, dtype=np.int64)
        return PointSet(self.ctx, self.dim, self.ctx.add(self.points, v[None, :]))

    @classmethod
    def cartesian_power(cls, A: FSet, d: int) -> PointSet:
        elems = A.elements().tolist()
        return cls(A.ctx, d, np.array(list(cartesian(elems, repeat=d)), dtype=np.int64).reshape(-1, d))


@dataclass(frozen=True)
class ProductSpec:
    """The point set ``A^d`` described without materialising it."""

    A: FSet
    d: int

    def __post_init__(self):
        if self.A.card == 0:
            raise FieldError("product spec needs a nonempty base set")
        if self.d < 1:
            raise FieldError(f"dimension must be >= 1, got {self.d}")


def distance(x, y, ctx) -> int:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"points of shapes {x.shape} and {y.shape} are not comparable")
    ctx.check(x)
    ctx.check(y)
    total = 0
    for sq in np.atleast_1d(ctx.sqr(ctx.sub(x, y))).tolist():
        total = ctx.add(total, sq)
    return int(total)


def _pair_guard(n: int, allow_large: bool):
    if n * n > MAX_PAIRS and not allow_large:
        raise FieldError(f"{n} points give {n * n} pairs, above the brute-force cap of {MAX_PAIRS}")


def distance_set_bruteforce(E: PointSet, allow_large: bool = False) -> FSet:
    """Exact distance set over all ordered pairs (coincident pairs included)."""
    if len(E) == 0:
        raise FieldError("distance set of an empty point set")
    _pair_guard(len(E), allow_large)
    if isinstance(E.ctx, FieldCtx):
        return FSet(E.ctx, kernels.pair_distance_mark(np.ascontiguousarray(E.points), E.ctx.p))
    return distance_set_ext(E, allow_large=allow_large)


def distance_set_ext(E: PointSet, allow_large: bool = False) -> FSet:
    """Distance set of points over F_{p^2}."""
    ctx = E.ctx
    if not isinstance(ctx, ExtFieldCtx):
        raise ContextMismatchError("distance_set_ext needs points over an extension field")
    if len(E) == 0:
        raise FieldError("distance set of an empty point set")
    _pair_guard(len(E), allow_large)
    p = ctx.p
    pts = E.points
    re, im = pts % p, pts // p
    bits = np.zeros(ctx.q, dtype=np.bool_)
    bits[0] = True
    for i in range(len(pts) - 1):
        a = (re[i + 1:] - re[i]) % p
        b = (im[i + 1:] - im[i]) % p
        # (a + bw)^2 = a^2 + n b^2 + 2ab w, summed over coordinates
        sq_re = (a * a + ctx.n * (b * b % p)).sum(axis=1) % p
        sq_im = (2 * a * b).sum(axis=1) % p
        bits[sq_re + sq_im * p] = True
    return FSet(ctx, bits)


def distance_set_product(spec: ProductSpec) -> FSet:
    """Distance set of ``A^d`` as the d-fold sumset of ``{(a - b)^2 : a, b in A}``."""
    return k_fold_sumset(squared_difference_set(spec.A), spec.d)
