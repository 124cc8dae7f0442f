"""Exact counts of k-almost primes and square-free k-almost primes up to x."""

from .backend import (
    DEFAULT_CEILING,
    PrimeCountEngine,
    PrimeTable,
    default_engine,
    integer_kth_root,
    nth_prime,
    prime_count,
    sieve_primes,
)
from .errors import AlmostPrimeError, InvalidArgumentError, OutOfRangeError, ResourceLimitError
from .kcount import (
    CountQuery,
    CountReport,
    count_k_almost,
    count_semiprime_direct,
    count_squarefree_k_almost,
    count_table,
    count_with_min_index,
    evaluate,
)
from .oracle import FactorSieve, brute_count, build_factor_sieve, omega

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CEILING",
    "AlmostPrimeError",
    "CountQuery",
    "CountReport",
    "FactorSieve",
    "InvalidArgumentError",
    "OutOfRangeError",
    "PrimeCountEngine",
    "PrimeTable",
    "ResourceLimitError",
    "brute_count",
    "build_factor_sieve",
    "count_k_almost",
    "count_semiprime_direct",
    "count_squarefree_k_almost",
    "count_table",
    "count_with_min_index",
    "default_engine",
    "evaluate",
    "integer_kth_root",
    "nth_prime",
    "omega",
    "prime_count",
    "sieve_primes",
]
