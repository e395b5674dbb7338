from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gchain.errors import Overflow
from gchain.factorize import factor, is_prime, is_prime_power


def naive_is_prime(n):
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def test_small_primes_match_naive():
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if naive_is_prime(n)]


@pytest.mark.parametrize(
    "n, prime",
    [
        (2**61 - 1, True),
        (2**63 - 25, True),
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (3825123056546413051, False),  # strong pseudoprime to the first nine prime bases
        (18446744073709551557 % 2**63, False),
    ],
)
def test_large(n, prime):
    assert is_prime(n) == prime


@given(st.integers(1, 2**63 - 1))
def test_factorization_multiplies_back(n):
    f = factor(n)
    assert math.prod(f.primes) == n
    assert list(f.primes) == sorted(f.primes)
    assert all(is_prime(p) for p in f.primes)


def test_semiprime_of_two_large_primes():
    p, q = 3037000453, 3037000493
    assert factor(p * q).primes == (p, q)


def test_multiplicities_and_prime_powers():
    assert factor(360).multiplicities() == {2: 3, 3: 2, 5: 1}
    assert is_prime_power(3**20)
    assert not is_prime_power(12)
    assert not is_prime_power(1)


def test_domain():
    with pytest.raises(Overflow):
        factor(2**63)
    with pytest.raises(ValueError):
        factor(0)
