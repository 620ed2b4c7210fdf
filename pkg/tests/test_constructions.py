import warnings

import numpy as np
import pytest

from ffdist.constructions import (
    antisymmetric_split,
    balog_quotient_check,
    isotropic_line,
    mirror_split_pair,
    nested_antisymmetric_pair,
    subfield_product,
)
from ffdist.distance import distance_set_bruteforce, distance_set_ext, distance_set_product, ProductSpec
from ffdist.errors import FieldError
from ffdist.fset import FSet, difference_set, negate_set, quotient_set
from ffdist.prime_field import get_field, is_prime


def S(p, e):
    return FSet.from_elements(get_field(p), e)


def elems(s):
    return set(s.elements().tolist())


def test_antisymmetric_split_examples():
    assert elems(antisymmetric_split(S(5, [1, 4]))) == {1}
    assert elems(antisymmetric_split(S(7, [1, 2, 4]))) == {1, 2, 4}
    assert elems(antisymmetric_split(S(7, [0, 1, 6]))) == {1}
    with pytest.warns(UserWarning):
        assert antisymmetric_split(S(7, [0])).card == 0


def test_nested_pair_examples():
    pair = nested_antisymmetric_pair(S(7, [1]), S(7, [1, 2, 5]))
    assert elems(pair.B) == {1} and elems(pair.C) == {1, 2}
    big = S(11, [0, 2, 3, 8, 9, 10])
    pair = nested_antisymmetric_pair(big, big)
    assert pair.B == pair.C == antisymmetric_split(big)
    pair = nested_antisymmetric_pair(S(5, [1, 4]), S(5, [1, 2, 3, 4]))
    assert elems(pair.B) == {1} and elems(pair.C) == {1, 2}
    with pytest.raises(FieldError):
        nested_antisymmetric_pair(S(7, [3]), S(7, [1, 2]))


def test_nested_prefers_member_of_B():
    # B keeps 6 (its partner 1 is absent from S_small); C must keep 6, not the smaller 1
    pair = nested_antisymmetric_pair(S(7, [6]), S(7, [1, 6]))
    assert elems(pair.B) == {6} and elems(pair.C) == {6}
    pair.check()


def _corpus():
    rng = np.random.default_rng(2024)
    primes = [p for p in range(7, 102) if is_prime(p)]
    for p in primes:
        for _ in range(500 // len(primes) + 1):
            big = rng.random(p) < rng.random()
            small = big & (rng.random(p) < rng.random())
            yield get_field(p), big, small


def test_split_invariants_on_random_corpus():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for F, big_bits, small_bits in _corpus():
            big, small = FSet(F, big_bits), FSet(F, small_bits)
            X = antisymmetric_split(big)
            assert X.isdisjoint(negate_set(X)) and X.issubset(big) and 0 not in X
            assert 2 * X.card >= big.card - (0 in big)
            assert antisymmetric_split(big) == X
            mirror_split_pair(big).check()
            pair = nested_antisymmetric_pair(small, big)
            pair.check()
            assert 2 * pair.B.card >= small.card - (0 in small)
            assert 2 * pair.C.card >= big.card - (0 in big)


@pytest.mark.parametrize("p,k", [(7, 2), (11, 2), (13, 3)])
def test_mirror_pipeline_containment(p, k):
    F = get_field(p)
    rng = np.random.default_rng(p)
    for _ in range(10):
        A = FSet.from_elements(F, rng.choice(p, 3, replace=False))
        X = antisymmetric_split(distance_set_product(ProductSpec(A, k)))
        if X.card == 0:
            continue
        inner = quotient_set(difference_set(X, negate_set(X)))
        outer = quotient_set(distance_set_product(ProductSpec(A, 2 * k)))
        assert inner.issubset(outer)


def test_balog_examples():
    rep = balog_quotient_check(S(7, [1]), S(7, [2]))
    assert rep.quotient_size == 1 and not rep.passes_q_over_3
    rep = balog_quotient_check(S(7, [1, 2, 3]), S(7, [4, 5, 6]))
    assert rep.quotient_size == 6 and rep.target == 3 and rep.passes_q_over_3 and rep.product_size == 9
    F = get_field(13)
    sq = FSet.from_elements(F, np.flatnonzero(F.legendre_table == 1))
    ns = FSet.from_elements(F, np.flatnonzero(F.legendre_table == -1))
    rep = balog_quotient_check(sq, ns)
    assert rep.quotient_size == 12 and rep.target == 5
    with pytest.raises(FieldError):
        balog_quotient_check(S(7, [1, 2]), S(7, [2]))


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("d", [2, 3])
def test_subfield_product(p, d):
    E = subfield_product(p, d)
    assert len(E) == p**d
    D = distance_set_ext(E)
    assert elems(D) == set(range(p))
    assert quotient_set(D).card == p


def test_subfield_product_guards():
    with pytest.raises(FieldError):
        subfield_product(3, 1)
    with pytest.raises(FieldError):
        subfield_product(31, 5)


def test_isotropic_line():
    E = isotropic_line(5)
    assert len(E) == 5 and set(map(tuple, E.points.tolist())) == {(t, 2 * t % 5) for t in range(5)}
    for p in range(5, 102):
        if is_prime(p) and p % 4 == 1:
            assert elems(distance_set_bruteforce(isotropic_line(p))) == {0}
    with pytest.raises(FieldError):
        isotropic_line(7)


def test_balog_pairs_are_disjoint_and_sum_splits():
    from ffdist.fset import sumset
    big = S(13, [1, 2, 3, 5, 8, 10, 12])
    small = S(13, [1, 3, 12])
    mirror = mirror_split_pair(big)
    left, right = mirror.balog_pair()
    assert left.isdisjoint(right)
    assert difference_set(left, right) == sumset(mirror.B, mirror.B)
    nested = nested_antisymmetric_pair(small, big)
    left, right = nested.balog_pair()
    assert left.isdisjoint(right)
    assert difference_set(left, right) == sumset(nested.B, nested.C)
    assert balog_quotient_check(left, right).quotient_size >= 1
