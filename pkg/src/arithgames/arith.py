"""Sieve-backed arithmetic functions.

Everything is driven by a smallest-prime-factor table, so factoring any
``n <= limit`` takes ``O(log n)`` steps.  The multiplicative functions take a
:class:`Factorization` rather than an integer; :func:`factor` is the
shortcut that factors against the shared sieve.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import isqrt, prod

import numpy as np

from .errors import CapacityError, DomainError

DEFAULT_LIMIT = 200_000
# 8 bytes per entry (spf + prime counts); 10**8 entries is ~800 MB
MAX_LIMIT = 10**8


@dataclass(frozen=True, eq=False)
class FactorSieve:
    limit: int
    spf: np.ndarray
    prime_count: np.ndarray  # prime_count[n] = pi(n)

    @cached_property
    def prime_index(self) -> dict[int, int]:
        """Map each prime ``p <= limit`` to its rank, with 2 -> 1."""
        primes = np.flatnonzero(self.spf == np.arange(self.limit + 1))
        primes = primes[primes >= 2]
        return {int(p): i + 1 for i, p in enumerate(primes)}

    @cached_property
    def primes(self) -> np.ndarray:
        idx = np.arange(self.limit + 1)
        return idx[(idx >= 2) & (self.spf == idx)]

    def is_prime(self, n: int) -> bool:
        return 2 <= n <= self.limit and int(self.spf[n]) == n

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.limit


@dataclass(frozen=True)
class Factorization:
    n: int
    pairs: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)


def build_sieve(limit: int, max_limit: int = MAX_LIMIT) -> FactorSieve:
    if limit < 2:
        raise CapacityError(f"sieve limit must be at least 2, got {limit}")
    if limit > max_limit:
        raise CapacityError(f"sieve limit {limit} exceeds the memory budget ({max_limit})")
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.arange(limit + 1, dtype=np.int32)
    unset = spf == 0
    spf[unset] = idx[unset]
    spf[:2] = 0
    is_p = np.zeros(limit + 1, dtype=np.int32)
    is_p[2:] = spf[2:] == idx[2:]
    prime_count = np.cumsum(is_p, dtype=np.int32)
    spf.flags.writeable = False
    prime_count.flags.writeable = False
    return FactorSieve(limit, spf, prime_count)


_shared: FactorSieve | None = None
_max_shared = MAX_LIMIT


def set_max_limit(max_limit: int) -> None:
    """Bound the size the shared sieve may grow to."""
    global _max_shared
    _max_shared = max_limit


def get_sieve(n: int = DEFAULT_LIMIT) -> FactorSieve:
    """Return the shared sieve, regrowing it so that it covers ``n``."""
    global _shared
    if _shared is None or _shared.limit < n:
        size = max(n, DEFAULT_LIMIT)
        if _shared is not None:
            size = max(size, min(2 * _shared.limit, _max_shared))
        _shared = build_sieve(size, _max_shared)
    return _shared


def factorize(sieve: FactorSieve, n: int) -> Factorization:
    if n < 1 or n > sieve.limit:
        raise DomainError(f"cannot factor {n} with a sieve of limit {sieve.limit}")
    pairs = []
    spf = sieve.spf
    m = n
    while m > 1:
        p = int(spf[m])
        a = 0
        while m % p == 0:
            m //= p
            a += 1
        pairs.append((p, a))
    return Factorization(n, tuple(pairs))


def factor(n: int) -> Factorization:
    return factorize(get_sieve(n), n)


def big_omega(f: Factorization) -> int:
    return sum(a for _, a in f.pairs)


def small_omega(f: Factorization) -> int:
    return len(f.pairs)


def tau(f: Factorization) -> int:
    return prod(a + 1 for _, a in f.pairs)


def tau_proper(f: Factorization) -> int:
    return tau(f) - 1


def totient(f: Factorization) -> int:
    return prod((p - 1) * p ** (a - 1) for p, a in f.pairs)


def omega_two(f: Factorization) -> int:
    """Prime factors counted with multiplicity, except that 2 counts once."""
    return sum(1 if p == 2 else a for p, a in f.pairs)


def is_squarefree(f: Factorization) -> bool:
    return all(a == 1 for _, a in f.pairs)


def two_valuation(n: int) -> int:
    if n <= 0:
        raise DomainError(f"2-valuation is undefined for {n}")
    return (n & -n).bit_length() - 1


def odd_index(n: int) -> int:
    """Return m where the odd part of n is 2m - 1."""
    if n <= 0:
        raise DomainError(f"odd index is undefined for {n}")
    odd = n >> two_valuation(n)
    return (odd + 1) // 2


def prime_index(sieve: FactorSieve, n: int) -> int:
    """Rank of the smallest prime factor of n among the primes (2 has rank 1)."""
    if n < 2 or n > sieve.limit:
        raise DomainError(f"prime index needs 2 <= n <= {sieve.limit}, got {n}")
    return int(sieve.prime_count[sieve.spf[n]])


def divisors(sieve: FactorSieve, n: int) -> list[int]:
    divs = [1]
    for p, a in factorize(sieve, n).pairs:
        divs = [d * p**e for d in divs for e in range(a + 1)]
    return sorted(divs)


def proper_divisors(sieve: FactorSieve, n: int) -> list[int]:
    return divisors(sieve, n)[:-1]


# Class C(n): number of totient iterations from n down to 2.

_prime_class: dict[int, int] = {}


def shapiro_class_iterated(n: int) -> int:
    if n < 1:
        raise DomainError(f"class is undefined for {n}")
    i = 0
    while n > 2:
        n = totient(factor(n))
        i += 1
    return i


def _odd_prime_class(p: int) -> int:
    c = _prime_class.get(p)
    if c is None:
        c = shapiro_class(p - 1) + 1
        _prime_class[p] = c
    return c


def shapiro_class(n: int) -> int:
    """Class via the additive rule: C(2^a) = a - 1, C(p) = C(p - 1) + 1 for odd p,
    and C is additive over an odd part and the power of two."""
    if n < 1:
        raise DomainError(f"class is undefined for {n}")
    if n <= 2:
        return 0
    total = 0
    for p, a in factor(n).pairs:
        if p == 2:
            total += a - 1
        else:
            total += a * _odd_prime_class(p)
    return total
