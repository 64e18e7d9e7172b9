"""Primality, factorisation and l-adic valuations on Python integers."""

import random

# Deterministic for n < 3.3e24, which covers all 64-bit inputs.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_DETERMINISTIC_LIMIT = 3317044064679887385961981
MILLER_RABIN_SEED = 20240611
_EXTRA_ROUNDS = 24


def _strong_probable_prime(n, a, d, s):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n):
    """Miller-Rabin; exact below 3.3e24, seeded probabilistic rounds above."""
    if n < 2:
        return False
    for p in _DETERMINISTIC_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, a, d, s) for a in _DETERMINISTIC_BASES):
        return False
    if n < _DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(MILLER_RABIN_SEED ^ n.bit_length())
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1), d, s) for _ in range(_EXTRA_ROUNDS))


def factorize(n):
    """Prime factorisation {p: exponent} by trial division (n is small here)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(x, l):
    """Largest k with l**k dividing x."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    if l < 2:
        raise ValueError(f"valuation base must be >= 2, got {l}")
    x = abs(x)
    k = 0
    while x % l == 0:
        x //= l
        k += 1
    return k


def primes_below(limit):
    sieve = bytearray([1]) * max(limit, 2)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(limit) if sieve[i]]
