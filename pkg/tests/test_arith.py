from __future__ import annotations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from purequintic.arith import (
    Factorization,
    PrimePower,
    SplitDegree,
    classify_prime,
    factorize,
    is_normalized,
    is_prime,
    normalize_radicand,
    normalized_radicands,
    reduce_exponents,
)
from purequintic.errors import DegenerateRadicand, NotFifthPowerFree, NotPrime


def brute_normalize(D):
    """Independent: reduce D**k exponents via sympy and take the minimum."""
    best = None
    for k in range(1, 5):
        val = 1
        for q, e in sympy.factorint(D).items():
            val *= q ** ((e * k) % 5)
        if best is None or val < best[0]:
            best = (val, k)
    return best


@pytest.mark.parametrize("n", [2, 3, 4, 97, 561, 7919, 2**61 - 1, 3215031751, 341550071728321])
def test_is_prime_agrees_with_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_small_range():
    assert [n for n in range(200) if is_prime(n)] == list(sympy.primerange(0, 200))


@given(st.integers(min_value=2, max_value=10**12))
def test_factorize_matches_sympy(n):
    assert factorize(n, raw=True) == sorted(sympy.factorint(n).items())


@pytest.mark.parametrize(
    "n, pairs",
    [(858, [(2, 1), (3, 1), (11, 1), (13, 1)]), (2, [(2, 1)]), (720, [(2, 4), (3, 2), (5, 1)])],
)
def test_factorize_examples(n, pairs):
    fac = factorize(n)
    assert [(f.prime, f.exponent) for f in fac] == pairs
    assert fac.value == n


def test_factorize_semiprime_needs_rho():
    p, q = 1000003, 1000033
    assert factorize(p * q).primes == (p, q)


def test_strict_mode_rejects_fifth_powers():
    with pytest.raises(NotFifthPowerFree) as exc:
        factorize(3 * 2**5)
    assert exc.value.prime == 2 and exc.value.exponent == 5
    assert factorize(3 * 2**5, raw=True) == [(2, 5), (3, 1)]


def test_factorize_rejects_small():
    with pytest.raises(ValueError):
        factorize(1)


def test_prime_power_validation():
    with pytest.raises(NotFifthPowerFree):
        PrimePower(2, 5)
    with pytest.raises(NotPrime):
        PrimePower(4, 1)
    assert str(Factorization.from_pairs([(3, 1), (2, 4)])) == "2^4·3"


@pytest.mark.parametrize("D, expected", [(2, (2, 1)), (4, (2, 3)), (24, (18, 2)), (9, (3, 3))])
def test_normalize_examples(D, expected):
    assert normalize_radicand(D) == expected


def test_normalize_degenerate():
    with pytest.raises(DegenerateRadicand):
        normalize_radicand(32)
    with pytest.raises(DegenerateRadicand):
        normalize_radicand(7**5 * 2**10)


@given(st.integers(min_value=2, max_value=10**6))
def test_normalize_matches_brute_force(D):
    if reduce_exponents(factorize(D, raw=True)) == 1:
        return
    assert normalize_radicand(D) == brute_normalize(D)


@given(st.integers(min_value=2, max_value=10**6), st.integers(min_value=1, max_value=4))
def test_normalize_power_class_invariant(D, k):
    if reduce_exponents(factorize(D, raw=True)) == 1:
        return
    power = reduce_exponents((q, e * k) for q, e in factorize(D, raw=True))
    Dstar = normalize_radicand(D)[0]
    assert normalize_radicand(power)[0] == Dstar
    assert normalize_radicand(Dstar) == (Dstar, 1)


def test_nine_hundred_normalized_radicands():
    rads = normalized_radicands(1000)
    assert len(rads) == 900
    assert rads[:6] == [2, 3, 5, 6, 7, 10]
    assert not is_normalized(4) and is_normalized(12)


@pytest.mark.parametrize(
    "q, mod25, free, split",
    [
        (7, 7, True, SplitDegree.NON_SPLIT),
        (11, 11, False, SplitDegree.FOUR_SPLIT),
        (101, 1, True, SplitDegree.FOUR_SPLIT),
        (19, 19, False, SplitDegree.TWO_SPLIT),
    ],
)
def test_classify_prime_examples(q, mod25, free, split):
    pc = classify_prime(q)
    assert (pc.mod25, pc.is_free, pc.split_degree) == (mod25, free, split)


def test_classify_prime_five_and_errors():
    assert classify_prime(5).special_five
    with pytest.raises(NotPrime):
        classify_prime(9)


@given(st.sampled_from(list(sympy.primerange(2, 5000))))
def test_prime_class_partition(q):
    pc = classify_prime(q)
    if q == 5:
        return
    assert pc.is_free == (q % 25 in (1, 7, 18, 24))
    assert (pc.split_degree is SplitDegree.FOUR_SPLIT) == (q % 5 == 1)
    assert (pc.split_degree is SplitDegree.TWO_SPLIT) == (q % 5 == 4)
    if pc.is_free:
        assert q % 5 in (1, 4) or q % 25 in (7, 18)
