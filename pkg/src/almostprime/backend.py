"""Exact prime primitives: sieving, pi(y), the i-th prime, integer k-th roots.

Prime indices are 1-based throughout: ``nth_prime(1) == 2``.
"""

from __future__ import annotations

import os
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from functools import cached_property
from math import isqrt

import numpy as np

from . import _kernels
from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError

DEFAULT_CEILING = 10**12
# Kernels work in signed 64-bit integers.
MAX_CEILING = 2**63 - 1
MIN_SIEVE_LIMIT = 10**6
SIEVE_BUDGET = 10**9
SEGMENT_SIZE = 1 << 18
CEILING_ENV = "ALMOSTPRIME_CEILING"


def _require_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidArgumentError(f"{name} must be an integer, got {value!r}")
    return int(value)


def integer_kth_root(x: int, k: int) -> int:
    """Largest ``r`` with ``r**k <= x``, using integer Newton iteration only."""
    x = _require_int("x", x)
    k = _require_int("k", k)
    if k < 1:
        raise InvalidArgumentError(f"root degree must be >= 1, got {k}")
    if x < 0:
        raise InvalidArgumentError(f"x must be non-negative, got {x}")
    if k == 1 or x < 2:
        return x
    if k == 2:
        return isqrt(x)
    if k >= x.bit_length():
        # 2**k > x, so the root is 1.
        return 1
    # Start above the root; Newton's step then decreases monotonically.
    r = 1 << -(-x.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, ascending, addressed 1-based."""

    limit: int
    primes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.primes.shape[0])

    @cached_property
    def as_list(self) -> list[int]:
        # Python ints for exact arithmetic in interpreted loops.
        return self.primes.tolist()

    def nth(self, i: int) -> int:
        i = _require_int("i", i)
        if i < 1:
            raise InvalidArgumentError(f"prime index is 1-based, got {i}")
        if i > len(self):
            raise OutOfRangeError(
                f"p_{i} is beyond the sieved range (only {len(self)} primes <= {self.limit})"
            )
        return self.as_list[i - 1]

    def index(self, p: int) -> int:
        """1-based position of the prime ``p``."""
        p = _require_int("p", p)
        if p > self.limit:
            raise OutOfRangeError(f"{p} exceeds the sieve limit {self.limit}")
        pos = int(np.searchsorted(self.primes, p))
        if pos == len(self) or self.as_list[pos] != p:
            raise InvalidArgumentError(f"{p} is not prime")
        return pos + 1

    def count_upto(self, y: int) -> int:
        if y > self.limit:
            raise OutOfRangeError(f"{y} exceeds the sieve limit {self.limit}")
        return int(np.searchsorted(self.primes, y, side="right"))


def sieve_primes(limit: int, budget: int = SIEVE_BUDGET) -> PrimeTable:
    """Segmented sieve of Eratosthenes up to and including ``limit``."""
    limit = _require_int("limit", limit)
    if limit < 2:
        raise InvalidArgumentError(f"sieve limit must be >= 2, got {limit}")
    if limit > budget:
        raise ResourceLimitError(f"sieve limit {limit} exceeds the memory budget {budget}")
    root = isqrt(limit)
    base = sieve_primes(root).primes if root >= 2 else np.empty(0, dtype=np.int64)
    chunks = []
    for lo in range(0, limit + 1, SEGMENT_SIZE):
        hi = min(lo + SEGMENT_SIZE, limit + 1)
        chunks.append(np.flatnonzero(_kernels.mark_segment(lo, hi, base)) + lo)
    primes = np.concatenate(chunks).astype(np.int64)
    primes.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes)


class _QuotientTable:
    """pi at every value ``x // n``, from one sublinear pass."""

    __slots__ = ("x", "root", "small", "large")

    def __init__(self, x: int):
        self.x = x
        self.root = isqrt(x)
        self.small, self.large = _kernels.lucy_tables(x)

    def get(self, y: int):
        if y <= self.root:
            return int(self.small[y])
        n = self.x // y
        if self.x // n != y:
            return None
        return int(self.large[n])


def ceiling_from_env(default: int = DEFAULT_CEILING) -> int:
    raw = os.environ.get(CEILING_ENV)
    if not raw:
        return default
    try:
        return parse_exact_int(raw)
    except ValueError as exc:
        raise InvalidArgumentError(f"{CEILING_ENV}={raw!r}: {exc}") from None


def parse_exact_int(text: str) -> int:
    """Parse ``"1000"``, ``"1e9"`` or ``"2.5e3"`` to an int; reject non-integers."""
    text = text.strip().replace("_", "")
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise ValueError(f"not a number: {text!r}") from None
    if not value.is_finite() or value != value.to_integral_value():
        raise ValueError(f"not an exact integer: {text!r}")
    return int(value)


class PrimeCountEngine:
    """Exact pi(y) for ``0 <= y <= ceiling``.

    Values up to ``sieve_limit`` come from a prefix-count array over a sieve.
    Larger values come from sublinear quotient tables: one pass at ``x`` yields
    pi at every ``x // n``, which is exactly the set of arguments the nested
    counting sums request.  Tables are kept in a small LRU keyed by ``x``.

    Safe for concurrent use: tables are immutable once published and all
    bookkeeping happens under one lock.
    """

    def __init__(
        self,
        ceiling: int | None = None,
        sieve_limit: int | None = None,
        max_tables: int = 8,
    ):
        ceiling = ceiling_from_env() if ceiling is None else _require_int("ceiling", ceiling)
        if ceiling < 1:
            raise InvalidArgumentError(f"ceiling must be >= 1, got {ceiling}")
        if ceiling > MAX_CEILING:
            raise OutOfRangeError(f"ceiling {ceiling} exceeds the 64-bit limit {MAX_CEILING}")
        if sieve_limit is None:
            sieve_limit = max(isqrt(ceiling) + 1, MIN_SIEVE_LIMIT)
        elif sieve_limit <= isqrt(ceiling):
            raise InvalidArgumentError(
                f"sieve_limit must exceed sqrt(ceiling) = {isqrt(ceiling)}"
            )
        self.ceiling = ceiling
        self.table = sieve_primes(sieve_limit)
        self.sieve_limit = sieve_limit
        counts = np.zeros(sieve_limit + 1, dtype=np.int64)
        counts[self.table.primes] = 1
        self._prefix = np.cumsum(counts)
        self._prefix.setflags(write=False)
        self._tables: OrderedDict[int, _QuotientTable] = OrderedDict()
        self._max_tables = max_tables
        self._lock = threading.Lock()
        self.evaluations = 0
        self.cache_hits = 0
        self.tables_built = 0

    def __repr__(self) -> str:
        return f"PrimeCountEngine(ceiling={self.ceiling}, sieve_limit={self.sieve_limit})"

    def _check(self, y) -> int:
        y = _require_int("y", y)
        if y < 0:
            raise InvalidArgumentError(f"y must be non-negative, got {y}")
        if y > self.ceiling:
            raise OutOfRangeError(f"{y} exceeds the configured ceiling {self.ceiling}")
        return y

    def _lookup(self, y: int):
        for x, tab in reversed(self._tables.items()):
            if y <= x:
                value = tab.get(y)
                if value is not None:
                    self._tables.move_to_end(x)
                    return value
        return None

    def _build(self, x: int) -> _QuotientTable:
        tab = _QuotientTable(x)
        self._tables[x] = tab
        self.tables_built += 1
        while len(self._tables) > self._max_tables:
            self._tables.popitem(last=False)
        return tab

    def prepare(self, x: int) -> None:
        """Ensure pi at every ``x // n`` is cached ahead of a nested sum."""
        x = self._check(x)
        if x <= self.sieve_limit:
            return
        with self._lock:
            if x not in self._tables:
                self._build(x)

    def prime_count(self, y: int) -> int:
        y = self._check(y)
        if y <= self.sieve_limit:
            with self._lock:
                self.evaluations += 1
            return int(self._prefix[y])
        with self._lock:
            self.evaluations += 1
            value = self._lookup(y)
            if value is not None:
                self.cache_hits += 1
                return value
            return self._build(y).get(y)

    def nth_prime(self, i: int) -> int:
        return self.table.nth(i)

    def stats(self) -> dict[str, int]:
        with self._lock:
            return {
                "evaluations": self.evaluations,
                "cache_hits": self.cache_hits,
                "tables_built": self.tables_built,
            }

    def clear_cache(self) -> None:
        with self._lock:
            self._tables.clear()


_default_engine: PrimeCountEngine | None = None
_default_lock = threading.Lock()


def default_engine() -> PrimeCountEngine:
    """Process-wide engine at the env-configured ceiling, built on first use."""
    global _default_engine
    with _default_lock:
        if _default_engine is None:
            _default_engine = PrimeCountEngine()
        return _default_engine


def prime_count(y: int) -> int:
    return default_engine().prime_count(y)


def nth_prime(i: int) -> int:
    return default_engine().nth_prime(i)
