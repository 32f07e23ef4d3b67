import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockarith.arith import (
    Factorization,
    factorize,
    introot,
    is_prime,
    legendre_vp,
    prime_pi,
    primorial,
    sieve_primes,
    stirling2,
)
from blockarith.config import PRIMALITY_CERT_BOUND
from blockarith.errors import BudgetError, OutOfTableError, ValidationError

from conftest import naive_factor, naive_is_prime


class TestIsPrime:
    def test_unit_is_not_prime(self):
        assert is_prime(1) is False

    @pytest.mark.parametrize("p", [2, 3, 523, 65537, 2**31 - 1])
    def test_known_primes(self, p):
        assert is_prime(p) is True

    @pytest.mark.parametrize("x", [4, 9, 561, 2**32 + 1, 3215031751])
    def test_known_composites(self, x):
        # 561 and 3215031751 are classic pseudoprime traps, 2^32+1 = 641 * 6700417
        assert is_prime(x) is False

    def test_agrees_with_trial_division(self):
        for x in range(1, 5000):
            assert is_prime(x) == naive_is_prime(x), x

    def test_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            is_prime(0)

    def test_rejects_beyond_certificate_bound(self):
        with pytest.raises(BudgetError):
            is_prime(PRIMALITY_CERT_BOUND)


class TestFactorize:
    def test_unit(self):
        assert factorize(1) == Factorization(1, ())

    def test_paper_pair_values(self):
        assert factorize(1215).factors == ((3, 5), (5, 1))
        assert factorize(1216).factors == ((2, 6), (19, 1))

    def test_exhaustive_small_vs_oracle(self):
        for x in range(1, 20_000):
            f = factorize(x)
            assert dict(f.factors) == naive_factor(x), x
            assert f.value == x

    def test_random_midrange_vs_oracle(self):
        rng = random.Random(7)
        for _ in range(2000):
            x = rng.randrange(1, 10**6)
            f = factorize(x)
            assert dict(f.factors) == naive_factor(x), x

    def test_bypassing_the_table_matches(self):
        # same values through the trial-division/rho path
        for x in [2, 720, 1215, 65536, 524287, 999983, 123456]:
            big = factorize(x * (10**7 + 19))  # force the large path
            assert big.verify()
        f = factorize(999983, table=None)
        assert f.factors == ((999983, 1),)

    def test_semiprime_beyond_trial_range(self):
        p, q = 1_000_003, 1_000_033
        f = factorize(p * q)
        assert f.factors == ((p, 1), (q, 1))

    def test_euler_fermat_number(self):
        assert factorize(2**32 + 1).factors == ((641, 1), (6700417, 1))

    def test_prime_power_beyond_table(self):
        assert factorize(10**18).factors == ((2, 18), (5, 18))
        assert factorize(3**40).factors == ((3, 40),)

    def test_verify_checks_invariants(self):
        assert factorize(360).verify()
        assert not Factorization(12, ((2, 1), (3, 1))).verify()
        assert not Factorization(12, ((3, 1), (2, 2))).verify()
        assert not Factorization(8, ((8, 1),)).verify()

    def test_rejects_bad_input(self):
        with pytest.raises(ValidationError):
            factorize(0)
        with pytest.raises(BudgetError):
            factorize(PRIMALITY_CERT_BOUND + 1)

    @given(st.integers(min_value=1, max_value=10**12))
    @settings(max_examples=120, deadline=None)
    def test_roundtrip_property(self, x):
        f = factorize(x)
        value = 1
        prev = 1
        for p, e in f.factors:
            assert p > prev and e >= 1
            assert is_prime(p)
            value *= p**e
            prev = p
        assert value == x


class TestSieve:
    def test_small_tables(self):
        t = sieve_primes(10)
        assert t.primes.tolist() == [2, 3, 5, 7]
        assert sieve_primes(2).primes.tolist() == [2]
        assert sieve_primes(48).primes.size == 15

    def test_smallest_factor_invariants(self):
        t = sieve_primes(3000)
        for x in range(2, 3001):
            spf = int(t.smallest_factor[x])
            assert x % spf == 0
            assert naive_is_prime(spf)
            assert all(x % d for d in range(2, spf))
        assert [int(p) for p in t.primes] == [
            x for x in range(2, 3001) if int(t.smallest_factor[x]) == x
        ]

    def test_tables_are_immutable(self):
        t = sieve_primes(50)
        with pytest.raises(ValueError):
            t.primes[0] = 4

    def test_rejects_tiny_limit(self):
        with pytest.raises(ValidationError):
            sieve_primes(1)

    def test_memory_budget(self, monkeypatch):
        monkeypatch.setenv("BLOCKARITH_MEMORY_BYTES", "1000")
        with pytest.raises(BudgetError):
            sieve_primes(10_000_000)


class TestPrimePi:
    def test_examples(self, table_10k):
        assert prime_pi(1, table_10k) == 0
        assert prime_pi(8, table_10k) == 4
        assert prime_pi(48, table_10k) == 15

    def test_nondecreasing_and_total(self, table_10k):
        values = [prime_pi(x, table_10k) for x in range(0, 2000)]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert prime_pi(table_10k.limit, table_10k) == table_10k.primes.size

    def test_out_of_table(self, table_10k):
        with pytest.raises(OutOfTableError):
            prime_pi(10_001, table_10k)
        with pytest.raises(ValidationError):
            prime_pi(-1, table_10k)


class TestPrimorial:
    def test_examples(self):
        assert primorial(1) == 1
        assert primorial(2) == 2
        assert primorial(10) == 210
        assert primorial(30) == 6469693230

    def test_matches_incremental_product(self, table_10k):
        prod = 1
        for r in range(2, 200):
            if naive_is_prime(r):
                prod *= r
            assert primorial(r) == prod


class TestLegendre:
    def test_examples(self):
        assert legendre_vp(4, 2) == 3
        assert legendre_vp(4, 3) == 1
        assert legendre_vp(1, 2) == 0

    def test_requires_prime(self):
        with pytest.raises(ValidationError):
            legendre_vp(10, 4)

    def test_full_factorial_exponents_to_500(self):
        # exponents of k! accumulated from scratch, per prime, for every k
        acc: dict[int, int] = {}
        for k in range(2, 501):
            for p, e in naive_factor(k).items():
                acc[p] = acc.get(p, 0) + e
            for p in acc:
                if p < k:
                    assert legendre_vp(k, p) == acc[p], (k, p)


def brute_partition_count(n: int, k: int) -> int:
    """Count partitions of an n-set into k nonempty blocks by enumeration."""

    def rec(i: int, used: int) -> int:
        if i == n:
            return 1 if used == k else 0
        if used > k:
            return 0
        return used * rec(i + 1, used) + rec(i + 1, used + 1)

    return rec(0, 0) if (n, k) != (0, 0) else 1


class TestStirling2:
    def test_identity_rows(self):
        for n in range(31):
            assert stirling2(n, n) == 1
            for k in range(n + 1, n + 4):
                assert stirling2(n, k) == 0

    def test_small_values_vs_enumeration(self):
        for n in range(0, 10):
            for k in range(0, n + 2):
                assert stirling2(n, k) == brute_partition_count(n, k), (n, k)

    def test_known_value(self):
        assert stirling2(4, 2) == 7

    def test_bound(self):
        with pytest.raises(BudgetError):
            stirling2(201, 3)
        assert stirling2(201, 3, bound=300) > 0
        with pytest.raises(ValidationError):
            stirling2(-1, 0)


class TestIntroot:
    @given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=1, max_value=11))
    @settings(max_examples=200, deadline=None)
    def test_defining_property(self, x, n):
        r = introot(x, n)
        assert r**n <= x < (r + 1) ** n

    def test_examples(self):
        assert introot(128, 7) == 2
        assert introot(127, 7) == 1
        assert introot(10**12, 2) == 10**6
