import random

import pytest

from h4cert.primes import factorize, is_prime, primes_below, valuation


def _trial(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if _trial(n)]
    assert primes_below(100)[-1] == 97


def test_large_primes_and_composites():
    assert is_prime(2**61 - 1)
    assert is_prime(1170505728001)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime((2**61 - 1) * (2**31 - 1))
    assert is_prime(2**127 - 1)


def test_factorize_round_trip():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randrange(1, 10**8)
        f = factorize(n)
        total = 1
        for p, e in f.items():
            assert is_prime(p)
            total *= p**e
        assert total == n


def test_valuation():
    assert valuation(96, 2) == 5
    assert valuation(-81, 3) == 4
    with pytest.raises(Exception):
        valuation(0, 2)
