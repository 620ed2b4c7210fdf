"""Acceptance gate: nine criteria, each recorded as a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines appear in
the ``acceptance criteria`` section of the terminal summary.
"""
import warnings
from contextlib import nullcontext
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

import oracles
from ffdist.constructions import isotropic_line, nested_antisymmetric_pair, antisymmetric_split, subfield_product
from ffdist.convolution import cyclic_convolution
from ffdist.distance import PointSet, ProductSpec, distance_set_bruteforce, distance_set_product
from ffdist.energy import energy_report
from ffdist.experiments import (
    DEFAULT_SEED,
    THEOREMS,
    ikp_check,
    sweep_product,
    sweep_quotient,
    threshold_spec,
)
from ffdist.errors import FieldError
from ffdist.fset import (
    CountVector,
    FSet,
    additive_count_convolution,
    multiplicative_count_convolution,
    naive_additive_count_convolution,
    naive_multiplicative_count_convolution,
    negate_set,
    quotient_set,
    sumset,
)
from ffdist.kernels import cyclic_convolution as kernel_naive_convolution
from ffdist.prime_field import get_field, is_prime

SMALL_PRIMES = [p for p in range(7, 102) if is_prime(p)]


def random_set(rng, F, lo=1, hi=None):
    hi = F.p if hi is None else hi
    size = int(rng.integers(lo, hi + 1))
    return FSet.from_elements(F, rng.choice(F.p, size=size, replace=False))


def test_coordinate_split_oracle(acceptance_line):
    mismatches, cases = 0, 0

    def check(A, k1, k2):
        nonlocal mismatches, cases
        cases += 1
        brute = distance_set_bruteforce(PointSet.cartesian_power(A, k1 + k2))
        split = sumset(distance_set_bruteforce(PointSet.cartesian_power(A, k1)),
                       distance_set_bruteforce(PointSet.cartesian_power(A, k2)))
        fast = distance_set_product(ProductSpec(A, k1 + k2))
        mismatches += (brute != split) + (brute != fast)

    F5 = get_field(5)
    for r in range(1, 6):
        for A in combinations(range(5), r):
            for k1 in (1, 2):
                for k2 in (1, 2):
                    check(FSet.from_elements(F5, A), k1, k2)
    rng = np.random.default_rng(DEFAULT_SEED)
    for p in (7, 11, 13):
        F = get_field(p)
        for _ in range(50):
            A = random_set(rng, F, 1, 6)
            k = int(rng.integers(2, 5))
            k1 = int(rng.integers(1, k))
            check(A, k1, k - k1)
    acceptance_line("1 coordinate-split distance oracle", mismatches == 0, f"{cases} cases, {mismatches} mismatches")
    assert mismatches == 0


def test_energy_oracle(acceptance_line):
    F5 = get_field(5)
    S = FSet.from_elements(F5, [0, 1])
    conv = energy_report(S, S, S, S).N
    brute = oracles.energy_8tuples([0, 1], [0, 1], [0, 1], [0, 1], 5)
    ok = conv == brute == 152
    rng = np.random.default_rng(DEFAULT_SEED)
    bad = 0
    for p in (7, 11, 13):
        F = get_field(p)
        for _ in range(100):
            sets = [random_set(rng, F, 1, 7) for _ in range(4)]
            rep = energy_report(*sets)
            hist = oracles.product_histogram(*[s.elements().tolist() for s in sets], p)
            bad += rep.r.as_dict() != hist or rep.N != sum(v * v for v in hist.values())
    ok = ok and bad == 0
    acceptance_line("2 energy oracle", ok, f"N={conv} (enumeration {brute}), {bad}/300 histogram mismatches")
    assert ok


def test_cauchy_schwarz_soundness(acceptance_line):
    F = get_field(31)
    rng = np.random.default_rng(DEFAULT_SEED)
    violations = 0
    for _ in range(1000):
        rep = energy_report(*[random_set(rng, F) for _ in range(4)])
        assert isinstance(rep.cs_lower_bound, Fraction)
        violations += not (rep.support_size >= rep.cs_lower_bound)
    acceptance_line("3 support >= Cauchy-Schwarz bound", violations == 0, f"1000 quadruples, {violations} violations")
    assert violations == 0


def test_sharpness_constructions(acceptance_line):
    bad = []
    for p in (3, 5, 7):
        for d in (2, 3):
            E = subfield_product(p, d)
            D = distance_set_bruteforce(E)
            Q = quotient_set(D)
            base = {E.ctx.encode(a, 0) for a in range(p)}
            if D.card != p or Q.card != p or set(Q.elements().tolist()) != base:
                bad.append(f"subfield p={p} d={d}")
    lines = 0
    for p in SMALL_PRIMES + [5]:
        if p % 4 == 1:
            lines += 1
            if distance_set_bruteforce(isotropic_line(p)) != FSet.from_elements(get_field(p), [0]):
                bad.append(f"isotropic p={p}")
    acceptance_line("4 sharpness constructions", not bad, f"6 subfield cases, {lines} isotropic lines" + (f"; {bad}" if bad else ""))
    assert not bad


def test_quotient_coverage_instances(acceptance_line):
    even = ikp_check(5, 2, 225, trials=100)
    odd = ikp_check(3, 3, 162, trials=25)
    ok = even.ok and odd.ok and set(even.quotient_sizes) == {25}
    acceptance_line("5 quotient coverage instances", ok,
                    f"q=25 d=2: {even.failures}/100 failures; q=9 d=3: {odd.failures}/25 failures")
    assert ok


def test_split_contracts(acceptance_line):
    rng = np.random.default_rng(DEFAULT_SEED)
    broken = 0
    for p in SMALL_PRIMES:
        F = get_field(p)
        for _ in range(500):
            S = random_set(rng, F)
            nonzero = S.nonzero().size
            with pytest.warns(UserWarning) if nonzero == 0 else nullcontext():
                X = antisymmetric_split(S)
            big = S | random_set(rng, F)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", UserWarning)  # S inside {0} already checked above
                pair = nested_antisymmetric_pair(S, big)
            ok = (
                X.issubset(S) and 0 not in X and X.isdisjoint(negate_set(X)) and 2 * X.card >= nonzero
                and pair.B == X and pair.B.issubset(pair.C) and pair.C.issubset(big)
                and pair.C.isdisjoint(negate_set(pair.C)) and 2 * pair.C.card >= big.nonzero().size
                and pair.B.isdisjoint(negate_set(pair.C))
            )
            broken += not ok
    total = 500 * len(SMALL_PRIMES)
    acceptance_line("6 split-set contracts", broken == 0, f"{total} sets over {len(SMALL_PRIMES)} primes, {broken} broken")
    assert broken == 0


def test_fast_naive_convolution(acceptance_line):
    rng = np.random.default_rng(DEFAULT_SEED)
    bad, checked = 0, 0
    for p in [p for p in range(3, 98) if is_prime(p)]:
        F = get_field(p)
        for _ in range(50):
            f = CountVector(F, rng.integers(0, 50, p))
            g = CountVector(F, rng.integers(0, 50, p))
            bad += additive_count_convolution(f, g, "fast") != naive_additive_count_convolution(f, g)
            bad += multiplicative_count_convolution(f, g, "fast") != naive_multiplicative_count_convolution(f, g)
            checked += 1
    F = get_field(10007)
    for _ in range(5):
        f = rng.integers(0, 1000, F.p)
        g = rng.integers(0, 1000, F.p)
        fast_add = additive_count_convolution(CountVector(F, f), CountVector(F, g), "fast").counts
        fast_mul = multiplicative_count_convolution(CountVector(F, f), CountVector(F, g), "fast").counts
        bad += not np.array_equal(fast_add, oracles.numpy_add_conv(f, g))
        bad += not np.array_equal(fast_add, kernel_naive_convolution(f.astype(np.int64), g.astype(np.int64)))
        bad += not np.array_equal(fast_mul, oracles.numpy_mult_conv(f, g))
        checked += 1
    acceptance_line("7 fast/naive convolution", bad == 0, f"{checked} input pairs, {bad} mismatches")
    assert bad == 0


def test_threshold_cells(acceptance_line):
    q_rows = sweep_quotient(1009, 4, [8], trials=50, master_seed=DEFAULT_SEED)
    p_rows = sweep_product(1009, 4, [8], trials=50, master_seed=DEFAULT_SEED)
    ok = (
        len(q_rows) == len(p_rows) == 50
        and all(r.set_size == 81 and r.measured >= 337 for r in q_rows)
        and all(r.measured >= Fraction(1009, 3) for r in p_rows)
        and all(r.passed for r in q_rows + p_rows)
    )
    detail = (f"quotient min {min(r.measured for r in q_rows)} >= 337, "
              f"product min {min(r.measured for r in p_rows)} >= 1009/3, |A|={q_rows[0].set_size}/{p_rows[0].set_size}")
    acceptance_line("8 pinned threshold cells p=1009 d=4 m=8", ok, detail)
    assert ok


def test_threshold_arithmetic(acceptance_line):
    checked = 0
    ok = True
    for theorem in THEOREMS:
        for d in range(2, 13):
            try:
                spec = threshold_spec(theorem, d)
            except FieldError:
                continue
            checked += 1
            ok &= Fraction(1, 2) - spec.epsilon / d == spec.a_exponent
    expected = {
        ("quotient-even", 4): (Fraction(2, 3), Fraction(1, 3)),
        ("quotient-odd", 5): (Fraction(25, 26), Fraction(4, 13)),
        ("product-even", 4): (Fraction(2, 5), Fraction(2, 5)),
        ("product-odd", 5): (Fraction(1, 2), Fraction(2, 5)),
    }
    for (theorem, d), pair in expected.items():
        spec = threshold_spec(theorem, d)
        ok &= (spec.epsilon, spec.a_exponent) == pair
    acceptance_line("9 threshold arithmetic", ok, f"{checked} (theorem, d) identities, 4 pinned values")
    assert ok
