"""Arithmetic functions of blocks of consecutive integers, with exact scans.

Evaluates the greatest prime factor, distinct-prime count, radical and m-th
powerfree part of products of consecutive integers; enumerates exceptions to
named inequalities over (n, k) rectangles; certifies abc triples against the
explicit conjecture bound; and searches for same-radical pair windows.
"""

__version__ = "0.1.0"

from .arith import (
    Factorization,
    PrimeTable,
    factorize,
    is_prime,
    legendre_vp,
    prime_pi,
    primorial,
    sieve_primes,
    stirling2,
)
from .blocks import (
    BlockStats,
    WindowTables,
    block_stats,
    build_window_tables,
    greatest_prime,
    lambda_m,
    mth_free_part,
    radical,
    sliding_block_max_P,
)
from .errors import BudgetError, OutOfTableError, ValidationError

__all__ = [
    "__version__",
    "Factorization",
    "PrimeTable",
    "factorize",
    "is_prime",
    "legendre_vp",
    "prime_pi",
    "primorial",
    "sieve_primes",
    "stirling2",
    "BlockStats",
    "WindowTables",
    "block_stats",
    "build_window_tables",
    "greatest_prime",
    "lambda_m",
    "mth_free_part",
    "radical",
    "sliding_block_max_P",
    "BudgetError",
    "OutOfTableError",
    "ValidationError",
]
