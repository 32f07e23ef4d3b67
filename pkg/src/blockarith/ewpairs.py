"""Search and verification for same-radical pairs of consecutive runs.

A pair (n1, n2) with n1 < n2 matches at window length k when the radicals
R(n1 + i) and R(n2 + i) agree for every 0 <= i < k.  Matching pairs are found
by building a radical table over the range and grouping indices on their
k-tuple of radicals; only colliding groups ever produce output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import factorize
from .blocks import build_window_tables, radical
from .config import PRIMALITY_CERT_BOUND
from .errors import BudgetError, ValidationError


@dataclass(frozen=True)
class EwPair:
    """A candidate same-radical pair with its per-shift radical witnesses."""

    n1: int
    n2: int
    k: int
    witnesses: tuple[tuple[int, int, int], ...]  # (i, R(n1+i), R(n2+i))

    def __post_init__(self):
        if self.k < 2:
            raise ValidationError(f"pairs need k >= 2, got {self.k}")
        if not 1 <= self.n1 < self.n2:
            raise ValidationError(f"pairs need 1 <= n1 < n2, got ({self.n1}, {self.n2})")


def _witnesses(n1: int, n2: int, k: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(
        (i, radical(factorize(n1 + i)), radical(factorize(n2 + i))) for i in range(k)
    )


def ew_family(h: int) -> EwPair:
    """The k = 2 pair (2^h - 2, 2^h (2^h - 2)) for h >= 2, verified.

    Construction note: n2 + 1 = (2^h - 1)^2, which pins both shift radicals
    at once; the returned pair has freshly computed witnesses.
    """
    if h < 2:
        raise ValidationError(f"ew_family requires h >= 2, got {h}")
    if 1 << (2 * h) >= PRIMALITY_CERT_BOUND:
        raise BudgetError(f"ew_family h={h} exceeds the factorization cap")
    n1 = (1 << h) - 2
    n2 = (1 << h) * n1
    witnesses = _witnesses(n1, n2, 2)
    for i, r1, r2 in witnesses:
        if r1 != r2:
            raise ArithmeticError(f"family pair ({n1}, {n2}) failed at shift {i}")
    if n2 + 1 != ((1 << h) - 1) ** 2:
        raise ArithmeticError(f"family identity n2 + 1 = (2^h - 1)^2 failed for h={h}")
    return EwPair(n1=n1, n2=n2, k=2, witnesses=witnesses)


def find_ew_pairs(k: int, n2max: int) -> list[EwPair]:
    """All pairs n1 < n2 <= n2max matching at window length k, by (n2, n1).

    Builds the radical table over [1, n2max + k - 1], sorts indices on their
    radical k-tuples, and emits every in-group pair.
    """
    if k < 2:
        raise ValidationError(f"find_ew_pairs requires k >= 2, got {k}")
    if n2max < 2:
        raise ValidationError(f"find_ew_pairs requires n2max >= 2, got {n2max}")
    tables = build_window_tables(1, n2max + k - 1)
    rad = tables.radical
    cols = [rad[i : i + n2max] for i in range(k)]  # cols[i][n-1] = R(n+i)
    order = np.lexsort(tuple(reversed(cols)))  # primary key cols[0]
    keys = np.stack([col[order] for col in cols], axis=1)
    changed = np.any(keys[1:] != keys[:-1], axis=1)
    boundaries = np.concatenate(([0], np.nonzero(changed)[0] + 1, [len(order)]))
    pairs: list[tuple[int, int]] = []
    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        if hi - lo < 2:
            continue
        group = sorted(int(n) + 1 for n in order[lo:hi])
        for j2 in range(1, len(group)):
            for j1 in range(j2):
                pairs.append((group[j2], group[j1]))  # (n2, n1)
    pairs.sort()
    return [
        EwPair(n1=n1, n2=n2, k=k, witnesses=_witnesses(n1, n2, k)) for n2, n1 in pairs
    ]


def verify_ew_pair(pair: EwPair) -> tuple[bool, tuple[tuple[int, int, int], ...]]:
    """Recompute all 2k radicals from scratch; confirm or refute the pair."""
    witnesses = _witnesses(pair.n1, pair.n2, pair.k)
    ok = all(r1 == r2 for _, r1, r2 in witnesses)
    return ok, witnesses
