"""Explicit point sets and set splittings.

* ``subfield_product``: F_p^d sitting inside F_{p^2}^d; its distances and
  their ratios never leave F_p.
* ``isotropic_line``: ``{(t, i t)}`` with ``i^2 = -1``; every distance is 0.
* ``antisymmetric_split`` / ``nested_antisymmetric_pair``: subsets avoiding
  their own negation, which make ``B - C`` a sum of two distance sets while
  keeping ``B`` and ``C`` disjoint.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product as cartesian

import numpy as np

from .distance import PointSet
from .errors import FieldError
from .fset import FSet, _same_ctx, difference_set, negate_set, quotient_set
from .prime_field import MAX_MODULUS, get_ext_field, get_field, sqrt_of_minus_one


@dataclass(frozen=True)
class SplitPair:
    """Two antisymmetric sets arranged so a difference of them has disjoint operands.

    ``kind`` is ``"mirror"`` when ``C = -B``, so ``B`` and ``C`` are disjoint and
    ``B - C = B + B``. It is ``"nested"`` when ``B`` is a subset of ``C`` and ``C``
    avoids ``-C``, so ``B`` and ``-C`` are disjoint and ``B - (-C) = B + C``.
    """

    B: FSet
    C: FSet
    kind: str

    def check(self) -> None:
        B, C = self.B, self.C
        if 0 in B or 0 in C:
            raise AssertionError("split sets must not contain 0")
        left, right = self.balog_pair()
        if not left.isdisjoint(right):
            raise AssertionError(f"{self.kind} pair is not disjoint where it must be")
        if self.kind == "mirror" and C != negate_set(B):
            raise AssertionError("mirror pair must have C = -B")
        if self.kind == "nested" and not (B.issubset(C) and C.isdisjoint(negate_set(C))):
            raise AssertionError("nested pair must have B inside C and C disjoint from -C")

    def balog_pair(self) -> tuple[FSet, FSet]:
        """The disjoint pair whose difference set is a sum of the two splits."""
        if self.kind == "mirror":
            return self.B, self.C
        return self.B, negate_set(self.C)


@dataclass(frozen=True)
class BalogReport:
    quotient_size: int
    target: int
    product_size: int
    passes_q_over_3: bool


def antisymmetric_split(S: FSet) -> FSet:
    """Largest-half subset ``X`` of ``S \\ {0}`` with ``X`` disjoint from ``-X``.

    From each pair ``{t, -t}`` keep the member present in ``S``, or the smaller
    index when both are.
    """
    ctx = S.ctx
    t = S.nonzero()
    if t.size == 0:
        warnings.warn("set is contained in {0}; antisymmetric split is empty", stacklevel=2)
        return FSet.empty(ctx)
    neg = np.asarray(ctx.neg(t))
    keep = ~S.bits[neg] | (t < neg)
    return FSet.from_elements(ctx, t[keep])


def mirror_split_pair(S: FSet) -> SplitPair:
    X = antisymmetric_split(S)
    return SplitPair(X, negate_set(X), "mirror")


def nested_antisymmetric_pair(S_small: FSet, S_big: FSet) -> SplitPair:
    """``B`` from ``S_small`` and ``C`` from ``S_big`` with ``B`` inside ``C``.

    ``C`` takes, from each pair ``{t, -t}`` in ``S_big``, the member already in
    ``B`` if any, otherwise the smaller index.
    """
    ctx = _same_ctx(S_small, S_big)
    if not S_small.issubset(S_big):
        raise FieldError("nested split needs S_small to be a subset of S_big")
    B = antisymmetric_split(S_small)
    t = S_big.nonzero()
    neg = np.asarray(ctx.neg(t), dtype=np.int64)
    keep = ~S_big.bits[neg] | B.bits[t] | (~B.bits[neg] & (t < neg))
    C = FSet.from_elements(ctx, t[keep])
    return SplitPair(B, C, "nested")


def balog_quotient_check(B: FSet, C: FSet) -> BalogReport:
    """Measure ``|(B - C)/(B - C)|`` against ``ceil(q/3)`` for disjoint ``B``, ``C``."""
    _same_ctx(B, C)
    if B.card == 0 or C.card == 0:
        raise FieldError("sets must be nonempty")
    if not B.isdisjoint(C):
        raise FieldError("B and C must be disjoint")
    size = quotient_set(difference_set(B, C)).card
    target = -(-B.ctx.size // 3)
    return BalogReport(size, target, B.card * C.card, size >= target)


def subfield_product(p: int, d: int) -> PointSet:
    """``F_p^d`` as points of ``F_{p^2}^d``."""
    if d < 2:
        raise FieldError(f"subfield product needs d >= 2, got {d}")
    ext = get_ext_field(p)
    if p**d > MAX_MODULUS:
        raise FieldError(f"p^d = {p**d} points exceeds the cap {MAX_MODULUS}")
    pts = np.array(list(cartesian(range(p), repeat=d)), dtype=np.int64)
    return PointSet(ext, d, pts)


def isotropic_line(p: int) -> PointSet:
    """``{(t, i t) : t in F_p}`` where ``i^2 = -1``; needs p = 1 mod 4."""
    F = get_field(p)
    i = sqrt_of_minus_one(F)
    if i is None:
        raise FieldError(f"-1 is not a square mod {p} (p = 3 mod 4)")
    t = np.arange(p, dtype=np.int64)
    return PointSet(F, 2, np.stack([t, t * i % p], axis=1))
