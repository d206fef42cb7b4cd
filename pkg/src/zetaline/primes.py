"""Prime sieving and elementary arithmetic functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

MAX_SIEVE_LIMIT = 10**8


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit`` together with their natural logs."""

    limit: int
    primes: np.ndarray   # int64, ascending
    logs: np.ndarray     # float64, logs[i] = ln(primes[i])

    def __len__(self) -> int:
        return len(self.primes)


def sieve_primes(limit: int) -> PrimeTable:
    """Eratosthenes sieve; complete list of primes <= limit with cached logs."""
    if not (2 <= limit <= MAX_SIEVE_LIMIT):
        raise ValueError(f"sieve limit must be in [2, {MAX_SIEVE_LIMIT}], got {limit}")
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    primes = np.flatnonzero(is_prime).astype(np.int64)
    return PrimeTable(limit=limit, primes=primes, logs=np.log(primes.astype(np.float64)))


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as [(p, multiplicity), ...]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    while n > 1:
        p = _smallest_prime_factor(n)
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out.append((p, k))
    return out


def von_mangoldt(n: int) -> float:
    """Lambda(n): log p if n is a power of a single prime p, else 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 0.0
    fac = factorize(n)
    if len(fac) == 1:
        return math.log(fac[0][0])
    return 0.0


def mobius(n: int) -> int:
    """Moebius function mu(n) in {-1, 0, 1}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fac = factorize(n)
    if any(k > 1 for _, k in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(d: int) -> int:
    """Euler totient phi(d)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    out = d
    for p, _ in factorize(d):
        out = out // p * (p - 1)
    return out


def mobius_sieve(limit: int) -> np.ndarray:
    """mu(n) for n = 0..limit (mu[0] unused, set to 0)."""
    mu = np.ones(limit + 1, dtype=np.int64)
    mu[0] = 0
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, limit + 1):
        if is_prime[p]:
            if p <= limit // p:
                is_prime[p * p :: p] = False
            mu[p::p] *= -1
            mu[p * p :: p * p] = 0
    return mu
