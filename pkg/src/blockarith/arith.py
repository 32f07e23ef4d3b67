"""Exact integer primitives: primality, factorization, sieves, prime counting.

Everything here is deterministic and exact.  Primality uses a fixed
strong-pseudoprime witness set that is a complete certificate below
PRIMALITY_CERT_BOUND; inputs at or above the bound raise BudgetError instead
of getting a probabilistic answer.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .config import (
    DEFAULT_SEED,
    DEFAULT_TABLE_LIMIT,
    PRIMALITY_CERT_BOUND,
    STIRLING_DEFAULT_BOUND,
    TRIAL_DIVISION_LIMIT,
    memory_budget,
)
from .errors import BudgetError, OutOfTableError, ValidationError

# First 13 primes: a complete witness set below PRIMALITY_CERT_BOUND.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class Factorization:
    """A positive integer together with its full prime-power decomposition.

    factors is a tuple of (prime, exponent) pairs with primes strictly
    ascending and exponents >= 1; it is empty exactly when value == 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def verify(self, check_primality: bool = True) -> bool:
        """Recheck all invariants from scratch."""
        if self.value < 1:
            return False
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                return False
            if check_primality and not is_prime(p):
                return False
            prod *= p**e
            prev = p
        return prod == self.value


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to limit plus a least-prime-factor array.

    smallest_factor[x] for 2 <= x <= limit is the least prime dividing x;
    entries 0 and 1 are sentinels (0 and 1).  Arrays are immutable.
    """

    limit: int
    primes: np.ndarray
    smallest_factor: np.ndarray


def is_prime(x: int) -> bool:
    """Deterministic primality test for 1 <= x < PRIMALITY_CERT_BOUND."""
    if x < 1:
        raise ValidationError(f"is_prime requires x >= 1, got {x}")
    if x >= PRIMALITY_CERT_BOUND:
        raise BudgetError(
            f"deterministic primality certificate unavailable for {x} "
            f">= {PRIMALITY_CERT_BOUND}"
        )
    if x < 2:
        return False
    for p in _MR_WITNESSES:
        if x == p:
            return True
        if x % p == 0:
            return False
    # write x - 1 = d * 2^s with d odd
    d = x - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> PrimeTable:
    """Least-prime-factor sieve up to limit (inclusive)."""
    if limit < 2:
        raise ValidationError(f"sieve_primes requires limit >= 2, got {limit}")
    need = (limit + 1) * 8 * 2  # spf array plus transient index array
    if need > memory_budget():
        raise BudgetError(f"sieve to {limit} needs ~{need} bytes, budget is {memory_budget()}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    idx = np.arange(limit + 1, dtype=np.int64)
    unmarked = spf == 0
    unmarked[:2] = False
    spf[unmarked] = idx[unmarked]  # remaining unmarked entries are prime
    spf[1] = 1
    primes = idx[unmarked]
    spf.setflags(write=False)
    primes.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes, smallest_factor=spf)


def prime_pi(x: int, table: PrimeTable) -> int:
    """Count of primes <= x, looked up in a sieved table."""
    if x < 0:
        raise ValidationError(f"prime_pi requires x >= 0, got {x}")
    if x > table.limit:
        raise OutOfTableError(f"prime_pi({x}) exceeds table limit {table.limit}")
    return int(np.searchsorted(table.primes, x, side="right"))


def _product(values) -> int:
    """Exact product via a balanced tree (fast for many big factors)."""
    items = [int(v) for v in values]
    if not items:
        return 1
    while len(items) > 1:
        pairs = [items[i] * items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            pairs.append(items[-1])
        items = pairs
    return items[0]


def primorial(r: int) -> int:
    """Exact product of all primes <= r (1 for r = 1)."""
    if r < 1:
        raise ValidationError(f"primorial requires r >= 1, got {r}")
    if r < 2:
        return 1
    return _product(sieve_primes(r).primes)


def legendre_vp(k: int, p: int) -> int:
    """Exponent of the prime p in k!, i.e. sum of floor(k / p^j) over j >= 1."""
    if k < 1:
        raise ValidationError(f"legendre_vp requires k >= 1, got {k}")
    if not is_prime(p):
        raise ValidationError(f"legendre_vp requires p prime, got {p}")
    total = 0
    q = p
    while q <= k:
        total += k // q
        q *= p
    return total


def stirling2(n: int, k: int, bound: int = STIRLING_DEFAULT_BOUND) -> int:
    """Stirling number of the second kind via the exact alternating sum.

    S(n, k) = (1/k!) * sum_{i=0..k} (-1)^(k-i) C(k, i) i^n, evaluated in
    arbitrary precision; the division is checked to be exact.
    """
    if n < 0 or k < 0:
        raise ValidationError(f"stirling2 requires n, k >= 0, got ({n}, {k})")
    if n > bound or k > bound:
        raise BudgetError(f"stirling2({n}, {k}) exceeds configured bound {bound}")
    total = sum((-1) ** (k - i) * math.comb(k, i) * i**n for i in range(k + 1))
    q, rem = divmod(total, math.factorial(k))
    if rem:
        raise ArithmeticError(f"alternating sum not divisible by {k}! for ({n}, {k})")
    return q


def introot(x: int, n: int) -> int:
    """Largest integer r with r**n <= x (exact, arbitrary precision)."""
    if x < 0 or n < 1:
        raise ValidationError(f"introot requires x >= 0, n >= 1, got ({x}, {n})")
    if x < 2 or n == 1:
        return x
    # Newton iteration from a bit-length seed; converges from above.
    r = 1 << -(-x.bit_length() // n)
    while True:
        nxt = ((n - 1) * r + x // r ** (n - 1)) // n
        if nxt >= r:
            break
        r = nxt
    while r**n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


# ---------------------------------------------------------------------------
# factorization

_small_prime_cache: list[int] | None = None
_default_table: PrimeTable | None = None


def _small_primes() -> list[int]:
    global _small_prime_cache
    if _small_prime_cache is None:
        _small_prime_cache = [int(p) for p in sieve_primes(TRIAL_DIVISION_LIMIT).primes]
    return _small_prime_cache


def default_table() -> PrimeTable:
    """Shared least-prime-factor table for small inputs (built once)."""
    global _default_table
    if _default_table is None:
        _default_table = sieve_primes(DEFAULT_TABLE_LIMIT)
    return _default_table


def _pollard_brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite n with no factor <= TRIAL_DIVISION_LIMIT."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_large(n: int, out: dict[int, int], rng: random.Random) -> None:
    """Factor n (no prime factor <= TRIAL_DIVISION_LIMIT) into out."""
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _factor_large(d, out, rng)
    _factor_large(n // d, out, rng)


def factorize(x: int, table: PrimeTable | None = None, seed: int = DEFAULT_SEED) -> Factorization:
    """Complete prime factorization of x >= 1.

    Small inputs are resolved by least-prime-factor lookup, the rest by trial
    division up to TRIAL_DIVISION_LIMIT and a seeded rho fallback whose prime
    outputs are certified by is_prime.  Inputs >= PRIMALITY_CERT_BOUND raise
    BudgetError.
    """
    if x < 1:
        raise ValidationError(f"factorize requires x >= 1, got {x}")
    if x >= PRIMALITY_CERT_BOUND:
        raise BudgetError(f"factorize input {x} exceeds size cap {PRIMALITY_CERT_BOUND}")
    if x == 1:
        return Factorization(1, ())
    value = x
    if table is None and x <= DEFAULT_TABLE_LIMIT:
        table = default_table()
    out: dict[int, int] = {}
    if table is not None and x <= table.limit:
        spf = table.smallest_factor
        while x > 1:
            p = int(spf[x])
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            out[p] = e
        return Factorization(value, _sorted_factors(out))
    if is_prime(x):
        return Factorization(value, ((x, 1),))
    for p in _small_primes():
        if p * p > x:
            break
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            out[p] = e
    if x > 1:
        # cofactor is prime if it survived trial division past its square root
        if x < TRIAL_DIVISION_LIMIT**2 or is_prime(x):
            out[x] = out.get(x, 0) + 1
        else:
            rng = random.Random((seed << 64) ^ value)
            _factor_large(x, out, rng)
    return Factorization(value, _sorted_factors(out))


def _sorted_factors(out: dict[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(out.items()))
