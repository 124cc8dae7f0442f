import threading

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almostprime import (
    InvalidArgumentError,
    OutOfRangeError,
    PrimeCountEngine,
    ResourceLimitError,
    integer_kth_root,
    sieve_primes,
)
from almostprime.backend import parse_exact_int

from conftest import trial_is_prime


@pytest.mark.parametrize(
    "limit, expected_len, expected_last",
    [(10, 4, 7), (2, 1, 2), (100, 25, 97), (3, 2, 3), (4, 2, 3)],
)
def test_sieve_small(limit, expected_len, expected_last):
    table = sieve_primes(limit)
    assert len(table) == expected_len
    assert table.nth(len(table)) == expected_last
    assert table.as_list == [n for n in range(limit + 1) if trial_is_prime(n)]


def test_sieve_crosses_segments():
    # Several segments; checked against trial division on a window near the top.
    limit = 1_000_003
    table = sieve_primes(limit)
    assert len(table) == 78498 + 1  # 1_000_003 is prime
    tail = [p for p in table.as_list if p > limit - 2000]
    assert tail == [n for n in range(limit - 1999, limit + 1) if trial_is_prime(n)]


def test_sieve_errors():
    with pytest.raises(InvalidArgumentError):
        sieve_primes(1)
    with pytest.raises(ResourceLimitError):
        sieve_primes(10**7, budget=10**6)


def test_prime_table_is_immutable():
    table = sieve_primes(50)
    with pytest.raises(ValueError):
        table.primes[0] = 4


def test_prime_table_index_round_trip():
    table = sieve_primes(10**4)
    for i, p in enumerate(table.as_list, start=1):
        assert table.index(p) == i
    with pytest.raises(InvalidArgumentError):
        table.index(9)


@pytest.mark.parametrize("y, expected", [(0, 0), (1, 0), (2, 1), (10, 4), (100, 25)])
def test_prime_count_small(engine, y, expected):
    assert engine.prime_count(y) == expected


@pytest.mark.parametrize(
    "y, expected",
    # Published values of pi(10^n).
    [(10**7, 664579), (10**8, 5761455), (10**9, 50847534), (10**10, 455052511)],
)
def test_prime_count_large(engine, y, expected):
    assert engine.prime_count(y) == expected


def test_prime_count_errors(engine):
    with pytest.raises(OutOfRangeError, match=str(engine.ceiling)):
        engine.prime_count(engine.ceiling + 1)
    with pytest.raises(InvalidArgumentError):
        engine.prime_count(-1)
    with pytest.raises(InvalidArgumentError):
        engine.prime_count(2.0)


@pytest.mark.parametrize("i, expected", [(1, 2), (4, 7), (25, 97)])
def test_nth_prime(engine, i, expected):
    assert engine.nth_prime(i) == expected


def test_nth_prime_errors(engine):
    with pytest.raises(InvalidArgumentError):
        engine.nth_prime(0)
    with pytest.raises(OutOfRangeError):
        engine.nth_prime(len(engine.table) + 1)


def test_round_trip(engine):
    for i in range(1, len(engine.table) + 1, 97):
        p = engine.nth_prime(i)
        assert engine.prime_count(p) == i
        assert engine.prime_count(p - 1) == i - 1


def test_sublinear_tier_agrees_with_sieve(lucy_engine):
    reference = sieve_primes(10**6)
    x = 10**6
    lucy_engine.prepare(x)
    values = sorted({x // n for n in range(1, x + 1, 7)} | {x // n for n in range(1, 1001)})
    for y in values:
        assert lucy_engine.prime_count(y) == reference.count_upto(y)
    rng = np.random.default_rng(7)
    for y in rng.integers(1002, 10**6, size=40).tolist():
        assert lucy_engine.prime_count(y) == reference.count_upto(y)


def test_cache_hits_on_repeat():
    eng = PrimeCountEngine(ceiling=10**8, sieve_limit=10**4 + 1)
    eng.prime_count(5 * 10**7)
    before = eng.stats()
    assert eng.prime_count(5 * 10**7) == 3001134
    after = eng.stats()
    assert after["cache_hits"] == before["cache_hits"] + 1
    assert after["tables_built"] == before["tables_built"]


def test_concurrent_queries_are_consistent():
    eng = PrimeCountEngine(ceiling=10**9, sieve_limit=10**5)
    xs = [10**9 - 7 * j for j in range(6)]
    reference = PrimeCountEngine(ceiling=10**9)
    expected = {x: reference.prime_count(x) for x in xs}
    results = {}

    def work(x):
        results[x] = [eng.prime_count(x) for _ in range(3)]

    threads = [threading.Thread(target=work, args=(x,)) for x in xs]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for x in xs:
        assert results[x] == [expected[x]] * 3


def test_engine_rejects_bad_config():
    with pytest.raises(OutOfRangeError):
        PrimeCountEngine(ceiling=2**64)
    with pytest.raises(InvalidArgumentError):
        PrimeCountEngine(ceiling=10**8, sieve_limit=100)


def test_ceiling_from_env(monkeypatch):
    monkeypatch.setenv("ALMOSTPRIME_CEILING", "1e7")
    assert PrimeCountEngine().ceiling == 10**7
    monkeypatch.setenv("ALMOSTPRIME_CEILING", "1.5")
    with pytest.raises(InvalidArgumentError):
        PrimeCountEngine()


@pytest.mark.parametrize(
    "x, k, expected",
    [(27, 3, 3), (26, 3, 2), (10**18, 2, 10**9), (0, 5, 0), (1, 9, 1), (7, 1, 7), (2**64 - 1, 64, 1)],
)
def test_kth_root_examples(x, k, expected):
    assert integer_kth_root(x, k) == expected


def test_kth_root_rejects_zero_degree():
    with pytest.raises(InvalidArgumentError):
        integer_kth_root(8, 0)


def test_kth_root_exhaustive_small():
    for k in range(1, 7):
        r = 0
        for x in range(10**5 + 1):
            while (r + 1) ** k <= x:
                r += 1
            assert integer_kth_root(x, k) == r


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(min_value=1, max_value=64))
def test_kth_root_bracket(x, k):
    r = integer_kth_root(x, k)
    assert r**k <= x < (r + 1) ** k


def test_kth_root_at_prime_powers():
    for p in sieve_primes(1000).as_list:
        for k in range(1, 7):
            if p**k >= 2**64:
                break
            assert integer_kth_root(p**k, k) == p
            assert integer_kth_root(p**k - 1, k) == p - 1


@pytest.mark.parametrize("text, value", [("1000", 1000), ("1e9", 10**9), ("2.5e3", 2500), ("1_000", 1000)])
def test_parse_exact_int(text, value):
    assert parse_exact_int(text) == value


@pytest.mark.parametrize("text", ["1.5", "1e-3", "abc", "inf", ""])
def test_parse_exact_int_rejects(text):
    with pytest.raises(ValueError):
        parse_exact_int(text)

