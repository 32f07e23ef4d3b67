import math

import pytest

from blockarith.arith import sieve_primes


@pytest.fixture(scope="session")
def table_10k():
    return sieve_primes(10_000)


def naive_factor(x: int) -> dict[int, int]:
    """Plain trial-division oracle, independent of the library internals."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= x:
        while x % d == 0:
            out[d] = out.get(d, 0) + 1
            x //= d
        d += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def naive_radical(x: int) -> int:
    return math.prod(naive_factor(x).keys()) if x > 1 else 1


def naive_is_prime(x: int) -> bool:
    if x < 2:
        return False
    return all(x % d for d in range(2, math.isqrt(x) + 1))
