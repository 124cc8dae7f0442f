"""Counting k-almost primes and square-free k-almost primes up to x.

Everything reduces to one recursion over the index of the smallest prime
factor.  Let C(x, k, n) count the m <= x with Omega(m) = k whose smallest prime
factor is p_n or larger.  Then

    C(x, 1, n) = max(pi(x) - n + 1, 0)
    C(x, k, n) = sum_{i=n}^{pi(floor(x^(1/k)))} C(floor(x / p_i), k - 1, i)

and the square-free variant recurses with ``i + 1`` so every later factor is
strictly larger.  Passing the reduced bound ``x // p_i`` down the recursion
works because ``(x // a) // b == x // (a * b)``: the innermost pi call sees
``x`` divided by the product of the primes actually chosen on the way down,
and no intermediate ever exceeds ``x``.

Bounds are inclusive (``m <= x``).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .backend import PrimeCountEngine, default_engine, integer_kth_root
from .errors import InvalidArgumentError, OutOfRangeError


@dataclass(frozen=True)
class CountQuery:
    k: int
    x: int
    squarefree: bool = False
    min_index: int = 1

    def __post_init__(self):
        for name in ("k", "x", "min_index"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidArgumentError(f"{name} must be an integer, got {value!r}")
        if self.k < 1:
            raise InvalidArgumentError(f"k must be >= 1, got {self.k}")
        if self.min_index < 1:
            raise InvalidArgumentError(f"min_index is 1-based, got {self.min_index}")
        if self.x < 0:
            raise InvalidArgumentError(f"x must be non-negative, got {self.x}")


@dataclass(frozen=True)
class CountReport:
    query: CountQuery
    count: int
    pi_evaluations: int
    cache_hits: int
    elapsed: float  # seconds

    @property
    def elapsed_ms(self) -> float:
        return self.elapsed * 1e3


class _Recursion:
    # One per thread of evaluation; counts its own pi calls.

    def __init__(self, engine: PrimeCountEngine):
        self.engine = engine
        self.primes = engine.table.as_list
        self.calls = 0

    def pi(self, y: int) -> int:
        self.calls += 1
        return self.engine.prime_count(y)

    def top_index(self, x: int, k: int) -> int:
        """Largest index i with p_i**k <= x."""
        return self.pi(integer_kth_root(x, k))

    def count(self, x: int, k: int, n: int, squarefree: bool) -> int:
        if x < 2:
            return 0
        if k == 1:
            return max(self.pi(x) - n + 1, 0)
        top = self.top_index(x, k)
        if n > top:
            return 0
        return self.partial(x, k, n, top, squarefree)

    def partial(self, x: int, k: int, lo: int, hi: int, squarefree: bool) -> int:
        # Terms lo..hi of the outer sum at level k.
        primes = self.primes
        step = 1 if squarefree else 0
        total = 0
        if k == 2:
            pi = self.pi
            for i in range(lo, hi + 1):
                total += max(pi(x // primes[i - 1]) - i - step + 1, 0)
            return total
        for i in range(lo, hi + 1):
            total += self.count(x // primes[i - 1], k - 1, i + step, squarefree)
        return total


def _resolve(engine: PrimeCountEngine | None) -> PrimeCountEngine:
    return default_engine() if engine is None else engine


def _check_bounds(engine: PrimeCountEngine, query: CountQuery) -> None:
    if query.x > engine.ceiling:
        raise OutOfRangeError(f"x={query.x} exceeds the configured ceiling {engine.ceiling}")


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    size = hi - lo + 1
    parts = max(1, min(parts, size))
    bounds = [lo + (size * j) // parts for j in range(parts + 1)]
    return [(bounds[j], bounds[j + 1] - 1) for j in range(parts)]


def evaluate(
    query: CountQuery,
    engine: PrimeCountEngine | None = None,
    workers: int = 1,
) -> CountReport:
    """Run one query and report the count with backend statistics.

    With ``workers > 1`` the outermost sum is split into contiguous index
    ranges evaluated on a thread pool; partial sums are exact integers added
    in range order, so the total is identical to the sequential one.
    """
    engine = _resolve(engine)
    _check_bounds(engine, query)
    hits_before = engine.stats()["cache_hits"]
    start = time.perf_counter()
    x, k, n, sf = query.x, query.k, query.min_index, query.squarefree
    engine.prepare(x)
    root = _Recursion(engine)
    if workers <= 1 or k == 1 or x < 2:
        count = root.count(x, k, n, sf)
        calls = root.calls
    else:
        top = root.top_index(x, k)
        calls = root.calls
        if n > top:
            count = 0
        else:
            ranges = _chunks(n, top, workers * 4)
            workers_state = [_Recursion(engine) for _ in ranges]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(
                    pool.map(
                        lambda job: job[0].partial(x, k, job[1][0], job[1][1], sf),
                        zip(workers_state, ranges),
                    )
                )
            count = sum(parts)
            calls += sum(w.calls for w in workers_state)
    elapsed = time.perf_counter() - start
    hits = engine.stats()["cache_hits"] - hits_before
    return CountReport(query, count, calls, hits, elapsed)


def count_with_min_index(
    x: int,
    k: int,
    n: int,
    squarefree: bool = False,
    engine: PrimeCountEngine | None = None,
) -> int:
    """Integers m <= x with Omega(m) = k whose smallest prime factor is >= p_n."""
    return evaluate(CountQuery(k=k, x=x, squarefree=squarefree, min_index=n), engine).count


def count_k_almost(x: int, k: int, engine: PrimeCountEngine | None = None) -> int:
    return count_with_min_index(x, k, 1, False, engine)


def count_squarefree_k_almost(x: int, k: int, engine: PrimeCountEngine | None = None) -> int:
    return count_with_min_index(x, k, 1, True, engine)


def count_semiprime_direct(
    x: int,
    squarefree: bool = False,
    engine: PrimeCountEngine | None = None,
) -> int:
    """pi_2(x) or its square-free variant as a single flat sum over p_i <= sqrt(x).

    Kept separate from the recursion so the two can cross-check each other.
    """
    engine = _resolve(engine)
    _check_bounds(engine, CountQuery(k=2, x=x, squarefree=squarefree))
    engine.prepare(x)
    pi = engine.prime_count
    offset = 0 if squarefree else 1
    total = 0
    for i in range(1, pi(integer_kth_root(x, 2)) + 1):
        total += pi(x // engine.nth_prime(i)) - i + offset
    return total


def count_table(
    k: int,
    points: Iterable[int],
    squarefree: bool = False,
    min_index: int = 1,
    engine: PrimeCountEngine | None = None,
    workers: int = 1,
) -> list[CountReport]:
    points = list(points)
    if any(b < a for a, b in zip(points, points[1:])):
        raise InvalidArgumentError("points must be in ascending order")
    engine = _resolve(engine)
    queries = [CountQuery(k=k, x=x, squarefree=squarefree, min_index=min_index) for x in points]
    for q in queries:
        _check_bounds(engine, q)
    return [evaluate(q, engine, workers) for q in queries]
