"""Threshold formulas and seeded sweeps over random sets ``A`` in F_p.

Four growth statements are tracked, keyed by what they bound:

==================  ======  ==========================================
id                  d       conclusion for ``E = A^d``
==================  ======  ==========================================
``quotient-even``   2k      ``|Q(E)| >= p/3``, Q the distance quotients
``quotient-odd``    2k+1    ``|Q(E)| >= p/3``
``product-even``    2k      ``|P(E)| >> p``, P the distance products
``product-odd``     2k+1    ``|P(E)| >> p``
==================  ======  ==========================================

Each holds once ``|E| >> p^(d/2 - eps)``, equivalently ``|A| >> p^a``.
Sweeps expose the hidden constants: ``|A| = ceil(m * p^a)`` for multipliers
``m`` and the product target is ``c * p``.
"""
from __future__ import annotations

import csv
import math
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .distance import PointSet, ProductSpec, distance_set_bruteforce, distance_set_ext, distance_set_product
from .energy import energy_report
from .errors import FieldError
from .fset import FSet, product_set, quotient_set
from .prime_field import get_ext_field, get_field

THEOREMS = ("quotient-even", "quotient-odd", "product-even", "product-odd")
DEFAULT_SEED = 1729
DEFAULT_MULTIPLIERS = (1, 2, 4, 8)
AUDIT_EVERY = 100
AUDIT_MAX_POINTS = 10**4
CSV_COLUMNS = (
    "theorem", "p", "d", "k", "eps_num", "eps_den", "a_exp_num", "a_exp_den",
    "multiplier", "set_size", "trial", "seed", "measured", "target", "pass", "micros", "status",
)
_KIND_CODE = {name: i for i, name in enumerate(THEOREMS)}


@dataclass(frozen=True)
class ThresholdSpec:
    theorem: str
    d: int
    k: int
    epsilon: Fraction
    a_exponent: Fraction


def threshold_spec(theorem: str, d: int) -> ThresholdSpec:
    """Exact ``eps`` and set-size exponent ``a`` for a growth statement in dimension ``d``."""
    if theorem not in THEOREMS:
        raise FieldError(f"unknown theorem id {theorem!r}; expected one of {THEOREMS}")
    odd = theorem.endswith("odd")
    if d % 2 != int(odd):
        raise FieldError(f"{theorem} needs {'odd' if odd else 'even'} d, got {d}")
    k = (d - 1) // 2 if odd else d // 2
    if k < 2:
        raise FieldError(f"{theorem} needs k >= 2 (d >= {5 if odd else 4}), got d = {d}")
    t = 2**k
    if theorem == "quotient-even":
        eps = Fraction(d, 2) * Fraction(t - t // 2 - 1, t - 1)
        a = Fraction(t // 4, t - 1)
    elif theorem == "quotient-odd":
        eps = d * Fraction(4 * t - 2 * t - 3, 8 * t - 6)
        a = Fraction(t, 4 * t - 3)
    elif theorem == "product-even":
        eps = Fraction(d, 2) * Fraction(2 * t - 5, 5 * t - 5)
        a = Fraction(3 * t // 2, 5 * (t - 1))
    else:
        eps = d * Fraction(2 * t - 5, 10 * (t - 1))
        a = Fraction(3 * t // 2, 5 * (t - 1))
    return ThresholdSpec(theorem, d, k, eps, a)


def distance_growth_reference(set_size: int, k: int, p: int) -> float:
    """``min(|A|^(2 - 1/2^(k-1)), p)``, the expected order of ``|Delta(A^k)|``."""
    return min(set_size ** (2 - 1 / 2 ** (k - 1)), p)


def scaled_size(multiplier, p: int, exponent: Fraction) -> int:
    """Exact ``ceil(multiplier * p**exponent)``."""
    m = Fraction(multiplier)
    e = Fraction(exponent)
    if m <= 0:
        raise FieldError("multiplier must be positive")
    num, den = e.numerator, e.denominator
    rhs = m**den * Fraction(p) ** num
    n = max(1, math.ceil(float(m) * p ** float(e)))
    while n > 1 and Fraction(n - 1) ** den >= rhs:
        n -= 1
    while Fraction(n) ** den < rhs:
        n += 1
    return n


def trial_seed(master_seed: int, *coords: int) -> int:
    """Per-trial seed from a counter-based hash of the master seed and row coordinates."""
    ss = np.random.SeedSequence([int(master_seed), *map(int, coords)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def sample_prefix(F, seed: int, size: int) -> FSet:
    """First ``size`` entries of a seeded random permutation of F_p.

    Larger sizes with the same seed give supersets.
    """
    perm = np.random.default_rng(seed).permutation(F.p)
    return FSet.from_elements(F, perm[:size])


def measure_quotient(A: FSet, d: int) -> int | None:
    """``|Delta(A^d) / Delta(A^d)|``, or ``None`` when the distance set is ``{0}``."""
    D = distance_set_product(ProductSpec(A, d))
    if D.nonzero().size == 0:
        return None
    return quotient_set(D).card


def measure_product(A: FSet, d: int) -> int:
    """``|Delta(A^d') * Delta(A^d')|`` with ``d' = d`` for even ``d`` and ``d - 1`` for odd."""
    dd = d if d % 2 == 0 else d - 1
    D = distance_set_product(ProductSpec(A, dd))
    return product_set(D, D).card


@dataclass
class SweepRow:
    theorem: str
    p: int
    d: int
    k: int
    epsilon: Fraction
    a_exponent: Fraction
    multiplier: Fraction | None
    set_size: int
    trial: int
    seed: int
    measured: int | None
    target: Fraction
    passed: bool
    micros: int
    status: str = "ok"

    def csv_fields(self, timing: bool = True) -> list:
        return [
            self.theorem, self.p, self.d, self.k,
            self.epsilon.numerator, self.epsilon.denominator,
            self.a_exponent.numerator, self.a_exponent.denominator,
            "" if self.multiplier is None else str(self.multiplier),
            self.set_size, self.trial, self.seed,
            "" if self.measured is None else self.measured,
            str(self.target), int(self.passed),
            self.micros if timing else 0, self.status,
        ]


def _resolve_sizes(p, spec, multipliers, sizes):
    if sizes is not None:
        pairs = [(None, int(s)) for s in sizes]
    else:
        pairs = [(Fraction(m), scaled_size(m, p, spec.a_exponent)) for m in multipliers]
    for _, s in pairs:
        if s > p:
            raise FieldError(f"requested |A| = {s} exceeds p = {p}")
        if s < 1:
            raise FieldError("set size must be positive")
    return pairs


def _audit(A: FSet, d: int) -> None:
    E = PointSet.cartesian_power(A, d)
    if distance_set_bruteforce(E) != distance_set_product(ProductSpec(A, d)):
        raise AssertionError(f"fast distance path disagrees with brute force for A={A}, d={d}")


def _run_sweep(kind, p, d, multipliers, sizes, trials, master_seed, target, measure, threads, audit):
    F = get_field(p)
    spec = threshold_spec(kind, d)
    pairs = _resolve_sizes(p, spec, multipliers, sizes)

    def one_trial(trial):
        seed = trial_seed(master_seed, _KIND_CODE[kind], p, d, trial)
        rows = []
        for m, size in pairs:
            A = sample_prefix(F, seed, size)
            if audit and trial % AUDIT_EVERY == 0 and size**d <= AUDIT_MAX_POINTS:
                _audit(A, d)
            t0 = time.perf_counter()
            measured = measure(A, d)
            micros = int((time.perf_counter() - t0) * 1e6)
            status = "ok" if measured is not None else "degenerate"
            passed = measured is not None and measured >= target
            rows.append(SweepRow(kind, p, d, spec.k, spec.epsilon, spec.a_exponent, m, size,
                                 trial, seed, measured, target, passed, micros, status))
        return rows

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(one_trial, range(trials)))
    else:
        chunks = [one_trial(t) for t in range(trials)]
    return [row for chunk in chunks for row in chunk]


def sweep_quotient(p, d, size_multipliers=DEFAULT_MULTIPLIERS, trials=1, master_seed=DEFAULT_SEED,
                   sizes=None, threads=1, audit=True) -> list[SweepRow]:
    """Measure ``|Delta(A^d)/Delta(A^d)|`` against ``ceil(p/3)`` for random ``A``.

    Pass ``sizes`` to fix ``|A|`` directly instead of via multipliers.
    """
    kind = "quotient-even" if d % 2 == 0 else "quotient-odd"
    target = Fraction(-(-p // 3))
    return _run_sweep(kind, p, d, size_multipliers, sizes, trials, master_seed, target,
                      measure_quotient, threads, audit)


def sweep_product(p, d, size_multipliers=DEFAULT_MULTIPLIERS, trials=1, master_seed=DEFAULT_SEED,
                  c=Fraction(1, 3), sizes=None, threads=1, audit=True) -> list[SweepRow]:
    """Measure ``|Delta * Delta|`` against ``c * p``; odd ``d`` measures over ``A^(d-1)``."""
    kind = "product-even" if d % 2 == 0 else "product-odd"
    target = Fraction(c) * p
    return _run_sweep(kind, p, d, size_multipliers, sizes, trials, master_seed, target,
                      measure_product, threads, audit)


def write_sweep_csv(rows, fh, timing: bool = True) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields(timing))


def ikp_required_size(p: int, d: int) -> int:
    """``9 q^(d/2)`` for even ``d``, ``6 q^(d/2)`` for odd ``d``, with ``q = p^2``."""
    return (9 if d % 2 == 0 else 6) * p**d


@dataclass
class IkpReport:
    p: int
    q: int
    d: int
    size: int
    trials: int
    master_seed: int
    mode: str
    quotient_sizes: list
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def sample_points(ctx, d: int, size: int, seed: int) -> PointSet:
    """``size`` distinct uniform points of ``F^d``."""
    total = ctx.size**d
    idx = np.random.default_rng(seed).choice(total, size=size, replace=False)
    coords = np.empty((size, d), dtype=np.int64)
    for j in range(d):
        coords[:, j] = idx % ctx.size
        idx //= ctx.size
    return PointSet(ctx, d, coords)


def ikp_check(p: int, d: int, size: int, trials: int = 1, master_seed: int = DEFAULT_SEED) -> IkpReport:
    """Sample ``E`` in ``F_q^d`` (q = p^2) above the quotient-coverage size and check it.

    Even ``d``: the distance quotients must be all of F_q. Odd ``d``: they
    must contain 0 and every nonzero square.
    """
    if d < 2:
        raise FieldError("d must be at least 2")
    need = ikp_required_size(p, d)
    ext = get_ext_field(p)
    if size < need:
        raise FieldError(f"|E| = {size} is below the required {need} for q = {ext.q}, d = {d}")
    if size > ext.q**d:
        raise FieldError(f"|E| = {size} exceeds q^d = {ext.q**d}")
    if d % 2 == 0:
        mode, required = "equal", FSet.full(ext)
    else:
        mode = "contains-squares"
        required = FSet.from_elements(ext, np.append(ext.sqr(np.arange(1, ext.q)), 0))
    sizes, failures = [], 0
    for trial in range(trials):
        E = sample_points(ext, d, size, trial_seed(master_seed, p, d, size, trial))
        D = distance_set_ext(E)
        Q = quotient_set(D) if D.nonzero().size else FSet.from_elements(ext, [0])
        sizes.append(Q.card)
        if not required.issubset(Q):
            failures += 1
    return IkpReport(p, ext.q, d, size, trials, master_seed, mode, sizes, failures)


def coverage_check(E: PointSet) -> bool:
    """Whether every field element occurs as a distance in ``E``."""
    return distance_set_bruteforce(E).card == E.ctx.size


def energy_ratio_probe(p: int, sizes, trials: int = 1, master_seed: int = DEFAULT_SEED) -> dict:
    """Largest ``N p / (|A||B||C||D|)^2`` over random quadruples of the given sizes.

    The ratio is only expected to stay bounded once every size is at least
    ``ceil(p^(3/5))``; smaller sizes still run but are flagged.
    """
    F = get_field(p)
    sizes = [int(s) for s in sizes]
    if len(sizes) != 4:
        raise FieldError("need four set sizes")
    if any(s < 1 or s > p for s in sizes):
        raise FieldError(f"set sizes must lie in [1, {p}]")
    regime = scaled_size(1, p, Fraction(3, 5))
    in_regime = min(sizes) >= regime
    if not in_regime:
        warnings.warn(f"sizes {sizes} are below ceil(p^(3/5)) = {regime}", stacklevel=2)
    ratios = []
    for trial in range(trials):
        rng = np.random.default_rng(trial_seed(master_seed, p, *sizes, trial))
        A, B, C, D = (FSet.from_elements(F, rng.choice(p, size=s, replace=False)) for s in sizes)
        rep = energy_report(A, B, C, D)
        mass = math.prod(sizes)
        ratios.append(Fraction(rep.N * p, mass * mass))
    worst = max(ratios)
    return {
        "p": p,
        "sizes": sizes,
        "trials": trials,
        "master_seed": master_seed,
        "regime_min_size": regime,
        "in_regime": in_regime,
        "max_ratio": float(worst),
        "max_ratio_exact": f"{worst.numerator}/{worst.denominator}",
        "ratios": [float(r) for r in ratios],
    }
