"""Multiplicative energy of difference products.

``N(A, B, C, D)`` counts 8-tuples with ``(a - b)(c - d) = (a' - b')(c' - d')``.
With ``r[t] = #{(a, b, c, d) : (a - b)(c - d) = t}`` it equals ``sum_t r[t]^2``,
and by Cauchy-Schwarz ``|(A - B)(C - D)| >= (|A||B||C||D|)^2 / N``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldError
from .fset import (
    CountVector,
    FSet,
    additive_count_convolution,
    multiplicative_count_convolution,
    negate_set,
    _same_ctx,
)

MM_TERMS = ("main", "incidence", "unbalanced", "trivial")


@dataclass(frozen=True)
class EnergyReport:
    r: CountVector
    N: int
    cs_lower_bound: Fraction
    support_size: int
    sizes: tuple[int, int, int, int]

    @property
    def p(self) -> int:
        return self.r.ctx.p

    def to_dict(self) -> dict:
        out = {
            "p": self.p,
            "sizes": list(self.sizes),
            "N": self.N,
            "cs_lower_bound": f"{self.cs_lower_bound.numerator}/{self.cs_lower_bound.denominator}",
            "support_size": self.support_size,
        }
        try:
            out["dominant_term"] = mm_bound(self.sizes, self.p)["dominant"]
        except FieldError:
            out["dominant_term"] = None
        return out


def diff_count(A: FSet, B: FSet, method: str = "auto") -> CountVector:
    """``f[x] = #{(a, b) in A x B : a - b = x}``."""
    _same_ctx(A, B)
    return additive_count_convolution(CountVector.indicator(A), CountVector.indicator(negate_set(B)), method)


def energy_report(A: FSet, B: FSet, C: FSet, D: FSet, method: str = "auto") -> EnergyReport:
    _same_ctx(A, B, C, D)
    if min(A.card, B.card, C.card, D.card) == 0:
        raise FieldError("energy needs four nonempty sets")
    r = multiplicative_count_convolution(diff_count(A, B, method), diff_count(C, D, method), method)
    N = sum(v * v for v in r.counts.tolist())
    mass = A.card * B.card * C.card * D.card
    return EnergyReport(
        r=r,
        N=N,
        cs_lower_bound=Fraction(mass * mass, N),
        support_size=int((r.counts > 0).sum()),
        sizes=(A.card, B.card, C.card, D.card),
    )


def cs_lower_bound(report: EnergyReport) -> Fraction:
    """``(|A||B||C||D|)^2 / N``, never larger than the support of ``r``."""
    if report.N <= 0:
        raise FieldError("energy must be positive")
    mass = math.prod(report.sizes)
    return Fraction(mass * mass, report.N)


def mm_bound(sizes, p: int) -> dict:
    """Evaluate the four-term upper bound on ``N`` with implicit constant 1.

    ``sizes`` is ``(|A|, |B|, |C|, |D|)`` and must satisfy ``|A| = |C|``,
    ``|B| = |D|``, ``|A| <= |B|``. Sizes may be real. Returns the individual
    terms, their sum and the name of the largest.
    """
    a, b, c, d = (float(s) for s in sizes)
    if a != c or b != d or a > b:
        raise FieldError(f"sizes {tuple(sizes)} violate |A| = |C|, |B| = |D|, |A| <= |B|")
    prod = a * b * c * d
    terms = {
        "main": prod * prod / p,
        "incidence": math.sqrt(p) * prod ** (11 / 8),
        "unbalanced": a ** (11 / 4) * b**4 / p ** (1 / 4),
        "trivial": (a * c * d) ** 2,
    }
    dominant = max(MM_TERMS, key=lambda k: terms[k])
    return {"terms": terms, "total": sum(terms.values()), "dominant": dominant}
