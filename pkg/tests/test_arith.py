import pytest
from hypothesis import given, strategies as st

from oracles import naive_factor, naive_is_prime, naive_primes, naive_radical
from toroidal.arith import (
    FactoredNat,
    Parity,
    PrimeSet,
    factor,
    is_prime,
    iter_primes,
    nth_element,
    nth_prime,
    parity,
    prime_index,
    primes_upto,
    product,
    radical,
    valuation,
)


def fn(x):
    return FactoredNat.parse(x)


def test_factor_examples():
    assert fn(12).as_dict() == {2: 2, 3: 1}
    assert fn(1).is_one() and fn(1).as_dict() == {}
    assert fn(0).is_zero


def test_radical_examples():
    assert radical(fn(12)).value == 6
    assert radical(fn(1)).value == 1
    assert radical(fn(7)).value == 7


def test_radical_of_zero_rejected():
    with pytest.raises(ValueError, match="radical of zero"):
        radical(fn(0))


def test_valuation_examples():
    assert valuation(2, fn(12)) == 2
    assert valuation(5, fn(12)) == 0
    assert valuation(3, fn(27)) == 3


def test_parity_examples():
    assert parity(fn(6)) is Parity.EVEN
    assert parity(fn(7)) is Parity.ODD
    assert parity(fn(0)) is Parity.ZERO


def test_prime_set_examples():
    assert PrimeSet.all_except().sym_diff_finite(PrimeSet.all_except([2, 3]))
    assert not PrimeSet.finite([2]).sym_diff_finite(PrimeSet.all_except())
    assert nth_element(PrimeSet.all_except(), 3) == 5


def test_prime_set_parse_and_str():
    for text in ["{}", "{2,3}", "all", "all\\{2}", "all\\{2,5}"]:
        assert str(PrimeSet.parse(text)) == text
    assert 5 in PrimeSet.parse("all\\{2}") and 2 not in PrimeSet.parse("all\\{2}")


def test_prime_set_nth_skips_exclusions():
    s = PrimeSet.all_except([2, 5])
    assert s.first(4) == [3, 7, 11, 13]
    with pytest.raises(ValueError):
        PrimeSet.finite([2, 3]).nth(3)


def test_parse_forms():
    assert fn("2^3*3").value == 24
    assert fn("6*6").as_dict() == {2: 2, 3: 2}
    assert str(fn(360)) == "2^3*3^2*5"
    for bad in ["", "-3", "2^", "x", "2**3"]:
        with pytest.raises(ValueError):
            fn(bad)


def test_primes_agree_with_sieve_oracle():
    assert primes_upto(2000) == naive_primes(2000)
    it = iter_primes(90)
    assert [next(it) for _ in range(3)] == [97, 101, 103]
    assert nth_prime(1) == 2 and nth_prime(25) == 97
    assert prime_index(97) == 25


def test_large_primes_and_composites():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**31 + 11))
    assert factor(2**61 - 1).as_dict() == {2**61 - 1: 1}
    assert factor(9_999_991 * 4).as_dict() == {2: 2, 9_999_991: 1}


def test_factor_beyond_trial_limit_rejected():
    big = 10_000_019 * 10_000_079
    with pytest.raises(ValueError):
        factor(big)


@given(st.integers(min_value=1, max_value=10**6))
def test_factor_matches_trial_division(n):
    assert factor(n).as_dict() == naive_factor(n)
    assert factor(n).value == n


@given(st.integers(min_value=0, max_value=5000))
def test_is_prime_matches_oracle(n):
    assert is_prime(n) == naive_is_prime(n)


@given(st.integers(min_value=1, max_value=10**5), st.integers(min_value=1, max_value=10**5))
def test_multiplication_is_exact(a, b):
    assert (fn(a) * fn(b)).value == a * b
    assert product([fn(a), fn(b)]).value == a * b


@given(st.integers(min_value=1, max_value=10**6))
def test_radical_matches_oracle(n):
    assert radical(fn(n)).value == naive_radical(n)


@given(st.integers(min_value=0, max_value=10**6))
def test_canonical_text_round_trips(n):
    assert fn(str(fn(n))) == fn(n)


@given(st.integers(min_value=1, max_value=10**6), st.sampled_from([2, 3, 5, 7]))
def test_valuation_matches_division(n, p):
    v = 0
    m = n
    while m % p == 0:
        m //= p
        v += 1
    assert valuation(p, fn(n)) == v


@given(st.lists(st.sampled_from([2, 3, 5, 7, 11, 13]), max_size=4), st.integers(min_value=1, max_value=30))
def test_cofinite_enumeration_is_increasing_and_avoids_exclusions(excl, j):
    s = PrimeSet.all_except(excl)
    got = s.first(j)
    assert got == sorted(got) and all(p not in excl and naive_is_prime(p) for p in got)
    assert s.nth(j) == got[-1]
