"""Range scans for block inequalities and one-shot identity checks.

Every decimal threshold is rationalized and compared by integer
cross-multiplication; nothing in this module touches floating point for a
verdict.  Scans process the k range in bands, each band sharing one window
table, so cost per (n, k) point is amortized constant.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .arith import factorize, is_prime, legendre_vp, sieve_primes, _product
from .blocks import build_window_tables
from .config import DEFAULT_KBAND
from .errors import ValidationError

P_INEQUALITIES = ("SYLVESTER", "LS18", "LS195", "LS197", "LS2K", "NS442")
OMEGA_INEQUALITIES = ("OMEGA_PI", "OMEGA_34", "OMEGA_23", "OMEGA_2K")
ALL_INEQUALITIES = P_INEQUALITIES + OMEGA_INEQUALITIES


@dataclass(frozen=True)
class ExceptionRecord:
    """One point where a named inequality fails inside its own domain."""

    inequality_id: str
    n: int
    k: int
    lhs: int
    rhs: Fraction
    domain_ok: bool = True


@dataclass(frozen=True)
class ScanSpec:
    """A rectangle of (n, k) points to scan for one inequality."""

    inequality_id: str
    kmin: int
    kmax: int
    nmax: int
    nmin: int = 1
    workers: int = 1

    def __post_init__(self):
        if self.inequality_id not in ALL_INEQUALITIES:
            raise ValidationError(f"unknown inequality id {self.inequality_id!r}")
        if self.kmin < 3:
            raise ValidationError(f"scans require kmin >= 3, got {self.kmin}")
        if self.kmax < self.kmin or self.nmax < self.nmin or self.nmin < 1:
            raise ValidationError("empty or inverted scan rectangle")
        if self.workers < 1:
            raise ValidationError(f"workers must be >= 1, got {self.workers}")


def delta_k(k: int) -> int:
    """Piecewise correction added to the 3/4 bound: 2, 1 or 0 by k range."""
    if k < 2:
        raise ValidationError(f"delta_k requires k >= 2, got {k}")
    if 3 <= k <= 6:
        return 2
    if 7 <= k <= 16:
        return 1
    return 0


def domain_n_floor(inequality_id: str, k: int) -> int:
    """Smallest n inside the inequality's side condition, for this k."""
    if inequality_id in ("SYLVESTER", "LS18", "LS195", "OMEGA_PI", "OMEGA_34", "OMEGA_23"):
        return k + 1  # n > k
    if inequality_id == "LS197":
        return k + 14  # n > k + 13
    if inequality_id == "LS2K":
        return max(k + 14, (279 * k) // 262 + 1)  # n > max(k+13, 279k/262)
    if inequality_id == "NS442":
        return 4 * k + 1  # n > 4k
    if inequality_id == "OMEGA_2K":
        return (17 * k) // 12 + 1  # 12n > 17k
    raise ValidationError(f"unknown inequality id {inequality_id!r}")


def bound_value(inequality_id: str, k: int, pi_k: int, pi_2k: int) -> Fraction:
    """Exact right-hand side of the inequality at this k."""
    if inequality_id == "SYLVESTER":
        return Fraction(k)
    if inequality_id == "LS18":
        return Fraction(9 * k, 5)
    if inequality_id == "LS195":
        return Fraction(39 * k, 20)
    if inequality_id == "LS197":
        return Fraction(197 * k, 100)
    if inequality_id == "LS2K":
        return Fraction(2 * k)
    if inequality_id == "NS442":
        return Fraction(221 * k, 50)
    if inequality_id == "OMEGA_PI":
        return Fraction(pi_k)
    if inequality_id == "OMEGA_34":
        return Fraction(pi_k + (3 * pi_k) // 4 - 1 + delta_k(k))
    if inequality_id == "OMEGA_23":
        return Fraction(pi_k + (2 * pi_k) // 3 - 1)
    if inequality_id == "OMEGA_2K":
        return Fraction(pi_2k)
    raise ValidationError(f"unknown inequality id {inequality_id!r}")


def _p_violation(inequality_id: str, values: np.ndarray, k: int) -> np.ndarray:
    # all comparisons are int64 cross-multiplications of the rational bound
    if inequality_id == "SYLVESTER":
        return values <= k
    if inequality_id == "LS18":
        return 5 * values <= 9 * k
    if inequality_id == "LS195":
        return 20 * values <= 39 * k
    if inequality_id == "LS197":
        return 100 * values <= 197 * k
    if inequality_id == "LS2K":
        return values <= 2 * k
    if inequality_id == "NS442":
        return 50 * values <= 221 * k
    raise ValidationError(f"{inequality_id!r} is not a greatest-prime inequality")


def band_plan(spec: ScanSpec, band: int = DEFAULT_KBAND) -> list[tuple[int, int]]:
    """Split the k range into bands that share one window table each."""
    return [
        (k_lo, min(k_lo + band - 1, spec.kmax))
        for k_lo in range(spec.kmin, spec.kmax + 1, band)
    ]


def run_band(spec: ScanSpec, k_lo: int, k_hi: int) -> list[tuple[int, int, int]]:
    """Scan one k band; returns (k, n, lhs) triples sorted by (k, n)."""
    if spec.inequality_id in P_INEQUALITIES:
        return _p_band(spec.inequality_id, k_lo, k_hi, spec.nmin, spec.nmax)
    return _omega_band(spec.inequality_id, k_lo, k_hi, spec.nmin, spec.nmax)


def _p_band(ineq: str, k_lo: int, k_hi: int, nmin: int, nmax: int) -> list[tuple[int, int, int]]:
    start = max(2, nmin)
    end = nmax + k_hi - 1
    gp = build_window_tables(start, end).greatest
    size = len(gp)
    win = sliding_window_view(gp, k_lo).max(axis=1)
    records: list[tuple[int, int, int]] = []
    for k in range(k_lo, k_hi + 1):
        if k > k_lo:
            win = np.maximum(win[: size - k + 1], gp[k - 1 :])
        n0 = max(domain_n_floor(ineq, k), nmin, start)
        if n0 > nmax:
            continue
        i0 = n0 - start
        view = win[i0 : nmax - start + 1]
        for j in np.nonzero(_p_violation(ineq, view, k))[0]:
            records.append((k, n0 + int(j), int(view[j])))
    return records


def _omega_band(ineq: str, k_lo: int, k_hi: int, nmin: int, nmax: int) -> list[tuple[int, int, int]]:
    start = max(2, nmin)
    end = nmax + k_hi - 1
    counts = build_window_tables(start, end).omega.copy()
    table = sieve_primes(max(2 * k_hi, 4))
    prime_list = table.primes

    def strip(p: int) -> None:
        first = -(-start // p) * p
        if first <= end:
            counts[first - start :: p] -= 1

    # counts[x] becomes the number of distinct primes > k dividing x; a prime
    # p <= k always divides some member of any k-length window, and a prime
    # p > k divides at most one member, so the window's distinct-prime count
    # is pi(k) plus the plain window sum of counts.
    for p in prime_list:
        if p > k_lo:
            break
        strip(int(p))
    records: list[tuple[int, int, int]] = []
    for k in range(k_lo, k_hi + 1):
        pi_k = int(np.searchsorted(prime_list, k, side="right"))
        pi_2k = int(np.searchsorted(prime_list, 2 * k, side="right"))
        csum = np.concatenate((np.zeros(1, dtype=np.int64), np.cumsum(counts)))
        weight = pi_k + csum[k:] - csum[:-k]
        n0 = max(domain_n_floor(ineq, k), nmin, start)
        if n0 <= nmax:
            i0 = n0 - start
            view = weight[i0 : nmax - start + 1]
            if ineq == "OMEGA_PI":
                mask = view <= pi_k
            else:
                bound = int(bound_value(ineq, k, pi_k, pi_2k))
                mask = view < bound
            for j in np.nonzero(mask)[0]:
                n = n0 + int(j)
                if ineq == "OMEGA_2K" and (n, k) == (6, 4):
                    continue
                records.append((k, n, int(view[j])))
        if is_prime(k + 1):
            strip(k + 1)
    return records


def _run_band_job(args: tuple) -> list[tuple[int, int, int]]:
    spec_fields, k_lo, k_hi = args
    return run_band(ScanSpec(**spec_fields), k_lo, k_hi)


def run_scan(spec: ScanSpec) -> list[ExceptionRecord]:
    """Every in-domain violation in the rectangle, sorted by (k, n).

    Bands are merged in k order, so output is identical for any worker count.
    """
    bands = band_plan(spec)
    if spec.workers == 1:
        raw = [run_band(spec, lo, hi) for lo, hi in bands]
    else:
        fields = {
            "inequality_id": spec.inequality_id,
            "kmin": spec.kmin,
            "kmax": spec.kmax,
            "nmax": spec.nmax,
            "nmin": spec.nmin,
        }
        jobs = [(fields, lo, hi) for lo, hi in bands]
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            raw = list(pool.map(_run_band_job, jobs))
    return finalize_records(spec, [t for band in raw for t in band])


def finalize_records(spec: ScanSpec, triples: list[tuple[int, int, int]]) -> list[ExceptionRecord]:
    """Attach exact bounds to raw (k, n, lhs) triples from band workers."""
    if not triples:
        return []
    table = sieve_primes(max(4, 2 * max(k for k, _, _ in triples)))
    out = []
    for k, n, lhs in sorted(triples):
        pi_k = int(np.searchsorted(table.primes, k, side="right"))
        pi_2k = int(np.searchsorted(table.primes, 2 * k, side="right"))
        rhs = bound_value(spec.inequality_id, k, pi_k, pi_2k)
        out.append(ExceptionRecord(spec.inequality_id, n, k, lhs, rhs))
    return out


def scan_P(spec: ScanSpec) -> list[ExceptionRecord]:
    """Scan a greatest-prime-factor inequality over the spec rectangle."""
    if spec.inequality_id not in P_INEQUALITIES:
        raise ValidationError(f"scan_P cannot run {spec.inequality_id!r}")
    return run_scan(spec)


def scan_omega(spec: ScanSpec) -> list[ExceptionRecord]:
    """Scan a distinct-prime-count inequality over the spec rectangle."""
    if spec.inequality_id not in OMEGA_INEQUALITIES:
        raise ValidationError(f"scan_omega cannot run {spec.inequality_id!r}")
    return run_scan(spec)


# ---------------------------------------------------------------------------
# one-shot verifications


def erdos_gcd_bound(k: int) -> tuple[int, int]:
    """The pair (g, k!) with g the product over primes p < k of p^v_p(k!).

    g <= k! always; equality holds exactly when k is composite, since only
    then does k! carry no prime >= k beyond those counted in g.
    """
    if k < 2:
        raise ValidationError(f"erdos_gcd_bound requires k >= 2, got {k}")
    g = 1
    for p in range(2, k):
        if is_prime(p):
            g *= p ** legendre_vp(k, p)
    return g, math.factorial(k)


@dataclass(frozen=True)
class HansonReport:
    """Outcome of the primorial-versus-3^r sweep."""

    rmax: int
    holds: bool
    first_failure: int | None
    primes_checked: int
    max_log_ratio: float
    argmax_r: int


def hanson_check(rmax: int) -> HansonReport:
    """Confirm product(primes <= r) < 3^r exactly for every r <= rmax.

    The product only changes at prime r while 3^r grows at every r, so the
    comparison is performed exactly at each prime (and trivially at r = 1);
    both sides are maintained as exact integers, never floats.
    """
    if rmax < 1:
        raise ValidationError(f"hanson_check requires rmax >= 1, got {rmax}")
    if rmax < 2:
        return HansonReport(rmax, True, None, 0, 0.0, 1)
    primes = sieve_primes(rmax).primes.tolist()
    product = 1
    power = 1
    prev = 0
    log_product = 0.0
    log3 = math.log(3.0)
    best = 0.0
    best_r = 1
    for p in primes:
        product *= p
        power *= 3 ** (p - prev)
        prev = p
        if product >= power:
            return HansonReport(rmax, False, p, len(primes), best, best_r)
        log_product += math.log(p)
        ratio = log_product / (p * log3)
        if ratio > best:
            best, best_r = ratio, p
    return HansonReport(rmax, True, None, len(primes), best, best_r)


@dataclass(frozen=True)
class KhodzaevReport:
    """Smallest window length whose block radical drops below k^k."""

    n: int
    kmax: int
    k: int | None
    sqrt_ratio: float | None  # k / sqrt(n) when k was found


def khodzaev_threshold(n: int, kmax: int) -> KhodzaevReport:
    """Minimal k <= kmax with R(n, k) < k^k, by exact big-integer comparison."""
    if n < 1 or kmax < 1:
        raise ValidationError(f"khodzaev_threshold requires n, kmax >= 1, got ({n}, {kmax})")
    seen: set[int] = set()
    rad = 1
    for k in range(1, kmax + 1):
        for p, _ in factorize(n + k - 1).factors:
            if p not in seen:
                seen.add(p)
                rad *= p
        if rad < k**k:
            return KhodzaevReport(n, kmax, k, k / math.sqrt(n))
    return KhodzaevReport(n, kmax, None, None)
