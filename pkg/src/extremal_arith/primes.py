"""Prime infrastructure: smallest-prime-factor sieve, factorization, p_k and theta."""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _backend
from .errors import DomainError, RangeError

TABLE_LIMIT_ENV = "EXTREMAL_ARITH_TABLE_LIMIT"


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Immutable sieve output answering primality, p_k, theta and spf queries.

    Attributes:
        limit: largest n the table supports.
        smallest_prime_factor: int32 array of length ``limit + 1``; entries 0 and 1 are 0.
        prime_list: ascending int64 array of the primes <= limit.
        theta_prefix: ``theta_prefix[k]`` is the sum of ln p over ``prime_list[:k + 1]``.
        prime_index: int32 array mapping a prime to its position in ``prime_list``, -1 elsewhere.
    """

    limit: int
    smallest_prime_factor: np.ndarray
    prime_list: np.ndarray
    theta_prefix: np.ndarray
    prime_index: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False, compare=False)

    def __len__(self) -> int:
        return int(self.prime_list.size)

    def is_prime(self, n: int) -> bool:
        if n < 2 or n > self.limit:
            if n > self.limit:
                raise RangeError(f"{n} exceeds table limit {self.limit}")
            return False
        return int(self.smallest_prime_factor[n]) == n

    def cached(self, key, build):
        """Memoize a derived array on this table; ``build()`` runs at most once per key."""
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]


@dataclass(frozen=True)
class Factorization:
    """Canonical decomposition of ``n`` as ascending ``(p, alpha)`` pairs."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def squarefree(self) -> bool:
        return all(a == 1 for _, a in self.factors)


def _theta_prefix(primes: np.ndarray) -> np.ndarray:
    # Neumaier-compensated running sum; plain cumsum drifts past 1e-12 relative
    out = np.empty(primes.size, dtype=np.float64)
    s = 0.0
    c = 0.0
    for i, p in enumerate(primes.tolist()):
        x = math.log(p)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i] = s + c
    return out


def build_table(limit: int) -> PrimeTable:
    """Sieve smallest prime factors up to ``limit`` and derive the prime list and theta prefix.

    Raises:
        DomainError: if ``limit < 2``.
    """
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"table limit must be >= 2, got {limit}")
    spf = _backend.kernels.spf_sieve(limit)
    primes = np.flatnonzero(spf == np.arange(limit + 1)).astype(np.int64)
    primes = primes[primes >= 2]
    pidx = np.full(limit + 1, -1, dtype=np.int32)
    pidx[primes] = np.arange(primes.size, dtype=np.int32)
    for arr in (spf, primes, pidx):
        arr.setflags(write=False)
    theta = _theta_prefix(primes)
    theta.setflags(write=False)
    return PrimeTable(limit, spf, primes, theta, pidx)


def factorize(table: PrimeTable, n: int) -> Factorization:
    """Decompose ``n`` by repeated smallest-prime-factor division.

    >>> factorize(build_table(100), 12).factors
    ((2, 2), (3, 1))
    """
    n = int(n)
    if n < 1 or n > table.limit:
        raise RangeError(f"n={n} outside [1, {table.limit}]")
    spf = table.smallest_prime_factor
    out = []
    m = n
    while m > 1:
        p = int(spf[m])
        a = 0
        while m % p == 0:
            m //= p
            a += 1
        out.append((p, a))
    return Factorization(n, tuple(out))


def nth_prime(table: PrimeTable, k: int) -> int:
    """Return the k-th prime (1-indexed)."""
    if k < 1 or k > len(table):
        raise RangeError(f"k={k} outside [1, {len(table)}]; enlarge the table")
    return int(table.prime_list[k - 1])


def chebyshev_theta(table: PrimeTable, x: float) -> float:
    """Sum of ln p over primes p <= x."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if x > table.limit:
        raise RangeError(f"x={x} exceeds table limit {table.limit}")
    k = int(np.searchsorted(table.prime_list, x, side="right"))
    return float(table.theta_prefix[k - 1]) if k else 0.0


def omega_array(table: PrimeTable, lo: int, hi: int) -> np.ndarray:
    """omega(n) for n in [lo, hi]."""
    _check_span(table, lo, hi)
    return _backend.kernels.omega_range(table.smallest_prime_factor, lo, hi)


def prime_powers(table: PrimeTable, hi: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All prime powers q = p**alpha <= hi as parallel int64 arrays ``(p, alpha, q)``, sorted by q."""
    _check_span(table, 2, hi)

    def build():
        ps, als, qs = [], [], []
        for p in table.prime_list[table.prime_list <= hi].tolist():
            q, a = p, 1
            while q <= hi:
                ps.append(p)
                als.append(a)
                qs.append(q)
                q *= p
                a += 1
        order = np.argsort(qs, kind="stable")
        return tuple(np.asarray(v, dtype=np.int64)[order] for v in (ps, als, qs))

    return table.cached(("prime_powers", hi), build)


def _check_span(table: PrimeTable, lo: int, hi: int) -> None:
    if lo < 1 or hi < lo:
        raise DomainError(f"empty or invalid range [{lo}, {hi}]")
    if hi > table.limit:
        raise RangeError(f"range end {hi} exceeds table limit {table.limit}")


_shared: PrimeTable | None = None
_shared_lock = threading.Lock()


def get_table(limit: int) -> PrimeTable:
    """Process-wide table covering at least ``limit`` (and ``EXTREMAL_ARITH_TABLE_LIMIT``).

    The table is rebuilt, never mutated, when a larger limit is requested.
    """
    global _shared
    want = max(int(limit), int(os.environ.get(TABLE_LIMIT_ENV, "0") or 0), 2)
    with _shared_lock:
        if _shared is None or _shared.limit < want:
            _shared = build_table(want)
        return _shared
