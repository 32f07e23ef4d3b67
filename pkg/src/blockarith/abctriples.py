"""abc triples: construction, explicit-conjecture checks, product-gap identity.

Verdicts on the explicit conjecture bound are decided by interval evaluation
of the logarithm at escalating precision, so a returned "holds" or "fails"
is certain; "undecided" only appears when the precision cap is reached.
The power-form consequence c^4 < R^7 is decided in plain integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import iv

from .arith import factorize, introot
from .blocks import build_window_tables, merge_factorizations, radical
from .config import LEMMA_DEFAULT_MAX_K
from .errors import BudgetError, ValidationError

Verdict = str  # "holds" | "fails" | "undecided"


@dataclass(frozen=True)
class PrecisionPolicy:
    """Interval-log precision schedule: start at start_bits, double to cap."""

    start_bits: int = 64
    max_bits: int = 4096


@dataclass(frozen=True)
class AbcTriple:
    """Coprime positive integers a <= b with a + b = c, plus derived data."""

    a: int
    b: int
    c: int
    radical: int  # radical of a*b*c
    omega_abc: int  # distinct primes of a*b*c
    degenerate: bool = False  # the a == b == 1 corner case

    @property
    def quality(self) -> float:
        """log c / log radical, as a float (display/sort only)."""
        return math.log(self.c) / math.log(self.radical)

    def quality_exceeds(self, floor: Fraction) -> bool:
        """Exact test of quality > floor via c^den > radical^num."""
        fr = Fraction(floor)
        return self.c**fr.denominator > self.radical**fr.numerator


def make_triple(a: int, b: int, c: int) -> AbcTriple:
    """Validate (a, b, c) and compute its radical and distinct-prime count."""
    if a < 1 or b < 1 or c < 1:
        raise ValidationError(f"triple members must be positive, got {(a, b, c)}")
    if a + b != c:
        raise ValidationError(f"a + b != c for {(a, b, c)}")
    if a > b:
        raise ValidationError(f"need a <= b, got a={a}, b={b}")
    for x, y, names in ((a, b, "a,b"), (a, c, "a,c"), (b, c, "b,c")):
        if math.gcd(x, y) != 1:
            raise ValidationError(f"gcd({names}) != 1 for {(a, b, c)}")
    merged = merge_factorizations([factorize(a), factorize(b), factorize(c)])
    return AbcTriple(
        a=a,
        b=b,
        c=c,
        radical=radical(merged),
        omega_abc=len(merged.factors),
        degenerate=(a == b == 1),
    )


def _baker_rhs_interval(r: int, w: int, bits: int):
    """Certified enclosure of (6/5) r (log r)^w / w! at the given precision."""
    old = iv.prec
    try:
        iv.prec = bits
        rhs = iv.mpf(6) / iv.mpf(5) * iv.mpf(r) * iv.log(iv.mpf(r)) ** w / iv.mpf(math.factorial(w))
        return rhs.a, rhs.b
    finally:
        iv.prec = old


def check_baker(t: AbcTriple, policy: PrecisionPolicy | None = None) -> Verdict:
    """Compare c against (6/5) R (log R)^omega / omega! with certainty.

    Escalates interval precision until the enclosure separates the sides;
    returns "undecided" only if the cap is reached first (never a wrong
    boolean).  Requires radical >= 2 so the logarithm is positive.
    """
    if t.radical < 2:
        raise ValidationError(f"check_baker requires radical >= 2, got {t.radical}")
    policy = policy or PrecisionPolicy()
    bits = policy.start_bits
    while bits <= policy.max_bits:
        lo, hi = _baker_rhs_interval(t.radical, t.omega_abc, bits)
        if t.c < lo:
            return "holds"
        if t.c >= hi:
            return "fails"
        bits *= 2
    return "undecided"


def check_ls(t: AbcTriple) -> Verdict:
    """Exact integer test of c^4 < radical^7; never undecided."""
    return "holds" if t.c**4 < t.radical**7 else "fails"


def enumerate_triples(cmax: int, quality_floor: Fraction | int | str = 1) -> list[AbcTriple]:
    """All coprime triples a <= b, a + b = c <= cmax with quality > floor.

    The floor test is exact (c^den > radical^num); results are sorted by
    descending float quality, then c, then a.
    """
    if cmax < 2:
        raise ValidationError(f"enumerate_triples requires cmax >= 2, got {cmax}")
    floor = Fraction(quality_floor)
    if floor <= 0:
        raise ValidationError(f"quality floor must be positive, got {floor}")
    tables = build_window_tables(1, cmax)
    rad = tables.radical
    out: list[AbcTriple] = []
    num, den = floor.numerator, floor.denominator
    for c in range(2, cmax + 1):
        a_arr = np.arange(1, c // 2 + 1, dtype=np.int64)
        a_arr = a_arr[np.gcd(a_arr, c) == 1]
        if len(a_arr) == 0:
            continue
        r = rad[a_arr - 1] * rad[c - a_arr - 1] * rad[c - 1]
        # float prescreen with a wide margin, exact power test to confirm
        logs = den * math.log(c) - num * np.log(r.astype(np.float64))
        for j in np.nonzero(logs > -1e-9)[0]:
            if c**den > int(r[j]) ** num:
                out.append(make_triple(int(a_arr[j]), int(c - a_arr[j]), c))
    out.sort(key=lambda t: (-t.quality, t.c, t.a))
    return out


@dataclass(frozen=True)
class TripleSurvey:
    """Exhaustive conjecture-check outcome over all coprime triples c <= cmax."""

    cmax: int
    triples_checked: int
    ls_failures: list[tuple[int, int, int]]
    baker_failures: list[tuple[int, int, int]]
    baker_undecided: list[tuple[int, int, int]]


def survey_triples(cmax: int, policy: PrecisionPolicy | None = None) -> TripleSurvey:
    """Run check_ls and check_baker over every coprime triple with c <= cmax.

    The bulk of the work is a vectorized certified float bracket (relative
    error is bounded far below the 1e-10 margin used); only triples falling
    inside the bracket are re-decided by the exact interval path.
    """
    if cmax < 2:
        raise ValidationError(f"survey_triples requires cmax >= 2, got {cmax}")
    tables = build_window_tables(1, cmax)
    rad = tables.radical
    om = tables.omega
    fact = np.array([math.factorial(i) for i in range(64)], dtype=np.float64)
    checked = 0
    ls_failures: list[tuple[int, int, int]] = []
    baker_failures: list[tuple[int, int, int]] = []
    baker_undecided: list[tuple[int, int, int]] = []
    for c in range(2, cmax + 1):
        a_arr = np.arange(1, c // 2 + 1, dtype=np.int64)
        a_arr = a_arr[np.gcd(a_arr, c) == 1]
        if len(a_arr) == 0:
            continue
        checked += len(a_arr)
        b_arr = c - a_arr
        r = rad[a_arr - 1] * rad[b_arr - 1] * rad[c - 1]
        w = om[a_arr - 1] + om[b_arr - 1] + om[c - 1]
        # c^4 >= r^7 is only possible for r below the integer 7th root of c^4
        root = introot(c**4, 7)
        for j in np.nonzero(r <= root)[0]:
            if c**4 >= int(r[j]) ** 7:
                ls_failures.append((int(a_arr[j]), int(b_arr[j]), c))
        rhs = 1.2 * r * np.log(r.astype(np.float64)) ** w / fact[w]
        for j in np.nonzero(c >= rhs * (1 - 1e-10))[0]:
            triple = make_triple(int(a_arr[j]), int(b_arr[j]), c)
            verdict = check_baker(triple, policy)
            entry = (triple.a, triple.b, triple.c)
            if verdict == "fails":
                baker_failures.append(entry)
            elif verdict == "undecided":
                baker_undecided.append(entry)
    return TripleSurvey(cmax, checked, ls_failures, baker_failures, baker_undecided)


@dataclass(frozen=True)
class GapResult:
    """Difference of the even- and odd-binomial products at integer x."""

    k: int
    x: int
    gap: int
    predicted_leading: int  # -(k-1)! * x^(2^(k-1) - k)
    ratio: Fraction  # gap / predicted_leading, exact

    @property
    def ratio_bounds(self) -> tuple[Fraction, Fraction]:
        """Degenerate exact interval around the rational ratio."""
        return (self.ratio, self.ratio)


def lemma_product_gap(x: int, k: int, max_k: int = LEMMA_DEFAULT_MAX_K) -> GapResult:
    """Exact gap prod_even (x+i)^C(k,i) - prod_odd (x+i)^C(k,i).

    Per-side exponent totals are 2^(k-1), so k is capped (default 8) to keep
    the big integers desk-sized.  The predicted leading term and exact
    rational ratio come along for asymptotic-quality checks.
    """
    if k < 2:
        raise ValidationError(f"lemma_product_gap requires k >= 2, got {k}")
    if k > max_k:
        raise BudgetError(f"lemma_product_gap k={k} exceeds cap {max_k}")
    if x < 1:
        raise ValidationError(f"lemma_product_gap requires x >= 1, got {x}")
    even = math.prod((x + i) ** math.comb(k, i) for i in range(0, k + 1, 2))
    odd = math.prod((x + i) ** math.comb(k, i) for i in range(1, k + 1, 2))
    gap = even - odd
    predicted = -math.factorial(k - 1) * x ** (2 ** (k - 1) - k)
    return GapResult(k=k, x=x, gap=gap, predicted_leading=predicted, ratio=Fraction(gap, predicted))


@dataclass(frozen=True)
class Theorem91Report:
    """Machine-checkable pieces of the no-same-radical-window argument at k=3.

    For n2, the square identity (n2+1)^2 - n2(n2+2) = 1 always holds.  When
    n1 and n2 carry equal radicals at shifts 0, 1, 2, every prime of
    n2(n2+1)(n2+2) divides n2-n1, so the block radical is at most n2-n1;
    the power-form conjecture bound would then need n2^2 < (n2-n1)^(7/4),
    which exact arithmetic refutes.
    """

    n1: int
    n2: int
    identity_ok: bool
    witnesses: tuple[tuple[int, int, int], ...]  # (i, R(n1+i), R(n2+i))
    radicals_equal: bool
    first_mismatch: int | None
    block_radical: int | None = None
    gap: int | None = None
    radical_divides_gap: bool | None = None
    abc_bound_satisfiable: bool | None = None  # n2^8 < gap^7 in exact integers
    contradiction: bool | None = None


def theorem91_chain(n1: int, n2: int) -> Theorem91Report:
    """Check the identity, the same-radical hypothesis, and the contradiction."""
    if not 1 <= n1 < n2:
        raise ValidationError(f"theorem91_chain requires 1 <= n1 < n2, got ({n1}, {n2})")
    identity_ok = (n2 + 1) ** 2 - n2 * (n2 + 2) == 1
    witnesses = []
    first_mismatch = None
    for i in range(3):
        r1 = radical(factorize(n1 + i))
        r2 = radical(factorize(n2 + i))
        witnesses.append((i, r1, r2))
        if r1 != r2 and first_mismatch is None:
            first_mismatch = i
    if first_mismatch is not None:
        return Theorem91Report(
            n1, n2, identity_ok, tuple(witnesses), False, first_mismatch
        )
    merged = merge_factorizations([factorize(n2 + i) for i in range(3)])
    block_radical = radical(merged)
    gap = n2 - n1
    divides = gap % block_radical == 0
    satisfiable = n2**8 < gap**7
    return Theorem91Report(
        n1,
        n2,
        identity_ok,
        tuple(witnesses),
        True,
        None,
        block_radical=block_radical,
        gap=gap,
        radical_divides_gap=divides,
        abc_bound_satisfiable=satisfiable,
        contradiction=divides and not satisfiable,
    )
