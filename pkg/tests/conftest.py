"""Shared brute-force oracles and fixtures.

The oracles here deliberately avoid the package's sieving and
factorization code paths: primality is trial division, prime powers are
found by repeated division, splitting checks go through the Kronecker
symbol.
"""

import math

import numpy as np
import pytest


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def trial_primes(lo: float, hi: float):
    return [n for n in range(2, math.floor(hi) + 1)
            if n > lo and is_prime_trial(n)]


def trial_prime_power(n: int):
    """(p, m) if n = p^m for a prime p, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            m, rest = 0, n
            while rest % p == 0:
                rest //= p
                m += 1
            return (p, m) if rest == 1 else None
        p += 1
    return (n, 1)


@pytest.fixture(scope="session")
def oracle_events_1e5():
    """Trial-division prime-power events up to 10^5 as numpy arrays
    (positions, bases, exponents, weights)."""
    pos, base, expo = [], [], []
    for n in range(2, 10**5 + 1):
        pm = trial_prime_power(n)
        if pm is not None:
            pos.append(n)
            base.append(pm[0])
            expo.append(pm[1])
    pos = np.array(pos)
    base = np.array(base)
    expo = np.array(expo)
    return pos, base, expo, np.log(base.astype(np.float64))
