"""Brute-force ground truth built on a smallest-prime-factor sieve.

Deliberately shares no code with the counting path: its own sieve, its own
factor-index bookkeeping, plain enumeration.  Slow by design.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from . import _jit
from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError

ORACLE_BUDGET = 10**8


def _spf_py(spf):
    limit = spf.shape[0] - 1
    p = 2
    while p * p <= limit:
        if spf[p] == 0:
            for m in range(p * p, limit + 1, p):
                if spf[m] == 0:
                    spf[m] = p
        p += 1
    for m in range(2, limit + 1):
        if spf[m] == 0:
            spf[m] = m


_spf_numba = _jit.njit(_spf_py)


def _spf_numpy(spf):
    limit = spf.shape[0] - 1
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            multiples = spf[p * p :: p]
            multiples[multiples == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest


@dataclass(frozen=True)
class FactorSieve:
    """Smallest prime factor of every 2 <= n <= limit, plus per-n summaries.

    ``spf[0] = spf[1] = 0``.  ``big_omega``, ``squarefree`` and ``spf_index``
    (1-based position of spf[n] among the primes) are derived once from
    ``spf`` by repeated division.
    """

    limit: int
    spf: np.ndarray = field(repr=False)
    big_omega: np.ndarray = field(repr=False)
    squarefree: np.ndarray = field(repr=False)
    spf_index: np.ndarray = field(repr=False)


def build_factor_sieve(limit: int, budget: int = ORACLE_BUDGET) -> FactorSieve:
    if isinstance(limit, bool) or not isinstance(limit, int) or limit < 2:
        raise InvalidArgumentError(f"oracle limit must be an integer >= 2, got {limit!r}")
    if limit > budget:
        raise ResourceLimitError(f"oracle limit {limit} exceeds the memory budget {budget}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    if _jit.USE_NUMBA:
        _spf_numba(spf)
    else:
        _spf_numpy(spf)

    # Peel off smallest factors of every n at once; a repeated prime shows up
    # as two equal consecutive factors because spf is non-decreasing.
    rest = np.arange(limit + 1, dtype=np.int64)
    big_omega = np.zeros(limit + 1, dtype=np.int64)
    squarefree = np.ones(limit + 1, dtype=np.bool_)
    prev = np.zeros(limit + 1, dtype=np.int64)
    active = np.arange(2, limit + 1, dtype=np.int64)
    while active.size:
        p = spf[rest[active]]
        squarefree[active[p == prev[active]]] = False
        prev[active] = p
        rest[active] //= p
        big_omega[active] += 1
        active = active[rest[active] > 1]
    squarefree[:2] = False

    is_prime = np.zeros(limit + 1, dtype=np.int64)
    is_prime[2:] = spf[2:] == np.arange(2, limit + 1)
    prime_rank = np.cumsum(is_prime)
    spf_index = np.zeros(limit + 1, dtype=np.int64)
    spf_index[2:] = prime_rank[spf[2:]]

    for arr in (spf, big_omega, squarefree, spf_index):
        arr.setflags(write=False)
    return FactorSieve(limit, spf, big_omega, squarefree, spf_index)


def omega(sieve: FactorSieve, m: int) -> tuple[int, bool]:
    """(Omega(m), m is square-free), by repeated division by the smallest factor."""
    if m < 2:
        raise InvalidArgumentError(f"omega needs m >= 2, got {m}")
    if m > sieve.limit:
        raise OutOfRangeError(f"{m} exceeds the oracle limit {sieve.limit}")
    count = 0
    squarefree = True
    last = 0
    while m > 1:
        p = int(sieve.spf[m])
        if p == last:
            squarefree = False
        last = p
        m //= p
        count += 1
    return count, squarefree


def brute_count(
    sieve: FactorSieve,
    x: int,
    k: int,
    squarefree: bool = False,
    min_index: int = 1,
) -> int:
    """Number of 2 <= m <= x with Omega(m) = k (square-free if asked) and spf index >= min_index."""
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    if min_index < 1:
        raise InvalidArgumentError(f"min_index is 1-based, got {min_index}")
    if x > sieve.limit:
        raise OutOfRangeError(f"x={x} exceeds the oracle limit {sieve.limit}")
    if x < 2:
        return 0
    hit = sieve.big_omega[2 : x + 1] == k
    if squarefree:
        hit &= sieve.squarefree[2 : x + 1]
    if min_index > 1:
        hit &= sieve.spf_index[2 : x + 1] >= min_index
    return int(np.count_nonzero(hit))


def cumulative_counts(
    sieve: FactorSieve,
    k: int,
    squarefree: bool = False,
    min_index: int = 1,
) -> np.ndarray:
    """``out[x] == brute_count(sieve, x, k, squarefree, min_index)`` for every x <= limit."""
    hit = sieve.big_omega == k
    if squarefree:
        hit &= sieve.squarefree
    if min_index > 1:
        hit &= sieve.spf_index >= min_index
    hit[:2] = False
    return np.cumsum(hit, dtype=np.int64)
