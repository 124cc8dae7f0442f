from math import isqrt

import pytest

from almostprime import PrimeCountEngine, build_factor_sieve

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def trial_factors(n: int) -> list[int]:
    """Prime factors of n with multiplicity, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def trial_is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, isqrt(n) + 1))


@pytest.fixture(scope="session")
def engine():
    return PrimeCountEngine()


@pytest.fixture(scope="session")
def lucy_engine():
    # Tiny sieve tier, so nearly every pi call goes through quotient tables.
    return PrimeCountEngine(ceiling=10**6, sieve_limit=1001)


@pytest.fixture(scope="session")
def sieve():
    return build_factor_sieve(10**6)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
