"""Block functions over runs of consecutive integers.

A block is the product N = n (n+1) ... (n+k-1).  This module evaluates the
greatest prime factor, distinct-prime count, radical (greatest squarefree
divisor) and m-th powerfree part of N, both for single blocks and, via
sieve-built per-index tables, over large ranges of n.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .arith import Factorization, PrimeTable, factorize, sieve_primes
from .config import DEFAULT_SEGMENT_SIZE, memory_budget
from .errors import BudgetError, ValidationError


def merge_factorizations(parts: list[Factorization]) -> Factorization:
    """Factorization of the product, exponents of equal primes summed."""
    out: dict[int, int] = {}
    value = 1
    for f in parts:
        value *= f.value
        for p, e in f.factors:
            out[p] = out.get(p, 0) + e
    return Factorization(value, tuple(sorted(out.items())))


def greatest_prime(f: Factorization) -> int:
    """Largest prime of f, or 1 for the empty factorization."""
    return f.factors[-1][0] if f.factors else 1


def radical(f: Factorization) -> int:
    """Product of the distinct primes of f (1 if there are none)."""
    r = 1
    for p, _ in f.factors:
        r *= p
    return r


def mth_free_part(f: Factorization, m: int) -> int:
    """Product of p^(e mod m) over the factors of f.

    The cofactor f.value / result is a perfect m-th power, so this is the A
    in the decomposition value = A * B^m with no exponent of A reaching m.
    """
    if m < 2:
        raise ValidationError(f"mth_free_part requires m >= 2, got {m}")
    q = 1
    for p, e in f.factors:
        q *= p ** (e % m)
    return q


@dataclass(frozen=True)
class BlockStats:
    """All block functions of one (n, k) pair."""

    n: int
    k: int
    greatest_prime: int
    omega: int
    radical: int
    powerfree: dict[int, int] = field(default_factory=dict)


def block_stats(
    n: int,
    k: int,
    moduli: tuple[int, ...] = (),
    table: PrimeTable | None = None,
) -> BlockStats:
    """Evaluate the block functions on the merged factorization of n..n+k-1."""
    if n < 1:
        raise ValidationError(f"block_stats requires n >= 1, got {n}")
    if k < 2:
        raise ValidationError(f"block_stats requires k >= 2, got {k}")
    merged = merge_factorizations([factorize(n + i, table=table) for i in range(k)])
    powerfree = {m: mth_free_part(merged, m) for m in moduli}
    return BlockStats(
        n=n,
        k=k,
        greatest_prime=greatest_prime(merged),
        omega=len(merged.factors),
        radical=radical(merged),
        powerfree=powerfree,
    )


def lambda_m(n: int, k: int, m: int, table: PrimeTable | None = None) -> int:
    """Maximum of the single-integer m-free parts of n, n-1, ..., n-k+1."""
    if k < 1:
        raise ValidationError(f"lambda_m requires k >= 1, got {k}")
    if n < k:
        raise ValidationError(f"lambda_m requires n >= k, got n={n}, k={k}")
    if m < 2:
        raise ValidationError(f"lambda_m requires m >= 2, got {m}")
    return max(mth_free_part(factorize(n - i, table=table), m) for i in range(k))


@dataclass(frozen=True)
class WindowTables:
    """Per-index function tables over [start, end] (both inclusive).

    greatest[i], omega[i], radical[i] and powerfree[m][i] hold the values at
    x = start + i.  Immutable after construction.
    """

    start: int
    end: int
    greatest: np.ndarray
    omega: np.ndarray
    radical: np.ndarray
    powerfree: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.end - self.start + 1


def build_window_tables(
    start: int,
    end: int,
    moduli: tuple[int, ...] = (),
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> WindowTables:
    """Build per-index tables with a segmented least-prime-factor sweep.

    Works in strided passes over each prime power p^j <= end, so every value
    stays within int64 (requires end < 2^63).  Output is independent of the
    segment size.
    """
    if start < 1 or end < start:
        raise ValidationError(f"bad range [{start}, {end}]")
    if end >= 1 << 62:
        raise BudgetError(f"window tables need end < 2^62, got {end}")
    size = end - start + 1
    need = size * 8 * (5 + len(moduli))
    if need > memory_budget():
        raise BudgetError(f"window tables over {size} indices need ~{need} bytes")
    gp = np.ones(size, dtype=np.int64)
    om = np.zeros(size, dtype=np.int64)
    rad = np.ones(size, dtype=np.int64)
    qm = {m: np.ones(size, dtype=np.int64) for m in moduli}
    for m in moduli:
        if m < 2:
            raise ValidationError(f"moduli must be >= 2, got {m}")

    root = math.isqrt(end)
    base = [int(p) for p in sieve_primes(root).primes] if root >= 2 else []

    for seg_lo in range(start, end + 1, segment_size):
        seg_hi = min(seg_lo + segment_size - 1, end)
        o = seg_lo - start
        n_seg = seg_hi - seg_lo + 1
        rem = np.arange(seg_lo, seg_hi + 1, dtype=np.int64)
        g = gp[o : o + n_seg]
        w = om[o : o + n_seg]
        r = rad[o : o + n_seg]
        for p in base:
            first = -(-seg_lo // p) * p
            if first > seg_hi:
                continue
            i0 = first - seg_lo
            sl = slice(i0, n_seg, p)
            np.maximum(g[sl], p, out=g[sl])
            w[sl] += 1
            r[sl] *= p
            for m, arr in qm.items():
                arr[o + i0 : o + n_seg : p] *= p
            # one pass per prime-power level: divides out the full exponent
            # and keeps each powerfree entry reduced mod m
            pj = p * p
            j = 2
            rem[sl] //= p
            while pj <= seg_hi:
                firstj = -(-seg_lo // pj) * pj
                if firstj > seg_hi:
                    break
                slj = slice(firstj - seg_lo, n_seg, pj)
                rem[slj] //= p
                for m, arr in qm.items():
                    view = arr[o + firstj - seg_lo : o + n_seg : pj]
                    if j % m == 0:
                        # exponent m-1 accumulated since the last reset drops to 0
                        view //= p ** (m - 1)
                    else:
                        view *= p
                pj *= p
                j += 1
        big = rem > 1
        np.maximum(g, rem, out=g, where=big)
        w[big] += 1
        r[big] *= rem[big]
        for arr in qm.values():
            arr[o : o + n_seg][big] *= rem[big]

    for arr in (gp, om, rad, *qm.values()):
        arr.setflags(write=False)
    return WindowTables(start=start, end=end, greatest=gp, omega=om, radical=rad, powerfree=qm)


def sliding_block_max_P(tables: WindowTables, k: int) -> list[tuple[int, int]]:
    """Greatest prime factor of every k-length block in the tables.

    Monotonic-queue windowed maximum: amortized constant work per position.
    Returns (n, P(n, k)) for n = start .. end - k + 1; values agree with
    block_stats at every position.
    """
    if k < 2:
        raise ValidationError(f"sliding_block_max_P requires k >= 2, got {k}")
    if k > tables.size:
        raise ValidationError(f"window k={k} exceeds table length {tables.size}")
    values = tables.greatest.tolist()
    out: list[tuple[int, int]] = []
    q: deque[int] = deque()  # indices, values decreasing
    for i, v in enumerate(values):
        while q and values[q[-1]] <= v:
            q.pop()
        q.append(i)
        if q[0] <= i - k:
            q.popleft()
        if i >= k - 1:
            out.append((tables.start + i - k + 1, values[q[0]]))
    return out
