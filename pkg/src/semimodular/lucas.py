"""Exact values of two-parameter integer recursions on all integer indices.

A sequence spec fixes the recursion L(n) = a*L(n-1) - b*L(n-2) together with
its seed values: (0, 1) for the first kind, (2, a) for the second.  The
Fibonacci numbers are the first-kind instance of (a, b) = (1, -1) and the
classical Lucas numbers the second-kind instance.

Nonnegative indices are filled by running the recursion forward (memoized
per spec).  Negative indices use the closed-form sign rule

    L(-n) = (-1)**l * L(n) / b**n,      l = 1 (first kind), l = 2 (second),

which keeps the sign conventions single-sourced; backward recursion is only
used as a cross-check in the test suite.  For b = +-1 every value is an
integer; otherwise negative indices are exact rationals.

`growth_info` supplies the ratio data behind the series-tail certificates:
for b = -1 and a != 0 the consecutive ratios r(j) = L(j-1)/L(j) are iterates
of the Moebius map x -> 1/(a + x), a decreasing contraction, so they
alternate around the limit 1/root and each consecutive pair brackets every
later ratio.  The hull of a short run of exact ratios therefore provably
contains all ratios from its start index on.  (For a <= -1 the sequence is
the a >= 1 one with alternating signs attached, so the mirrored hull has the
same bracketing property.)  Other recursions only get heuristic intervals.
"""

from __future__ import annotations

import enum
import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import IndexCapExceeded, RatioBoundUnavailable

# Values near the cap have tens of thousands of digits but stay exact.
INDEX_CAP = 100_000

# Number of consecutive ratios spanned by a ratio interval.
RATIO_WINDOW = 16


class Kind(enum.Enum):
    """Seed family: FIRST starts (0, 1), SECOND starts (2, a)."""

    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class SequenceSpec:
    """Recursion L(n) = a*L(n-1) - b*L(n-2) with the kind's seed values."""

    a: int
    b: int
    kind: Kind = Kind.FIRST

    def __post_init__(self) -> None:
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise TypeError("sequence parameters must be plain integers")
        if not isinstance(self.kind, Kind):
            raise TypeError("kind must be a Kind member")
        if self.b == 0:
            raise ValueError("b = 0 is rejected: the bilateral series built on it diverges")

    @property
    def sign_exponent(self) -> int:
        """Exponent l in the negative-index rule L(-n) = (-1)**l * L(n) / b**n."""
        return 1 if self.kind is Kind.FIRST else 2


FIBONACCI = SequenceSpec(1, -1, Kind.FIRST)
LUCAS_NUMBERS = SequenceSpec(1, -1, Kind.SECOND)


@dataclass(frozen=True)
class SeqValue:
    """One exact sequence value; denominator is 1 whenever b = +-1."""

    index: int
    value: Fraction


_TABLES: dict[SequenceSpec, list[int]] = {}
_LOCK = threading.Lock()


def _table(spec: SequenceSpec, upto: int) -> list[int]:
    """Forward-recursion table through index `upto` (immutable prefix)."""
    tab = _TABLES.get(spec)
    if tab is not None and len(tab) > upto:
        # Lock-free fast path: existing entries are never mutated.
        return tab
    with _LOCK:
        tab = _TABLES.setdefault(
            spec, [0, 1] if spec.kind is Kind.FIRST else [2, spec.a]
        )
        while len(tab) <= upto:
            tab.append(spec.a * tab[-1] - spec.b * tab[-2])
        return tab


def seq_value(spec: SequenceSpec, n: int) -> Fraction:
    """Exact L(n), any integer n with |n| <= INDEX_CAP."""
    if abs(n) > INDEX_CAP:
        raise IndexCapExceeded(f"|{n}| exceeds the index cap {INDEX_CAP}")
    if n >= 0:
        return Fraction(_table(spec, n)[n])
    m = -n
    sign = -1 if spec.sign_exponent == 1 else 1
    return Fraction(sign * _table(spec, m)[m], spec.b**m)


def term(spec: SequenceSpec, n: int) -> SeqValue:
    """Sequence value at index n, packaged with its index."""
    return SeqValue(n, seq_value(spec, n))


@dataclass(frozen=True)
class GrowthInfo:
    """Dominant-root data plus an exact interval holding the ratios L(j-1)/L(j).

    `certified` is True exactly when the bracketing argument in the module
    docstring applies (b = -1, a != 0), i.e. when the interval provably
    contains every ratio from its start index on.  Otherwise it is the hull
    of the sampled ratios only.
    """

    dominant_root: float
    limit_ratio_pos: float
    limit_ratio_neg: float
    ratio_lo: Fraction
    ratio_hi: Fraction
    certified: bool

    @property
    def ratio_interval(self) -> tuple[Fraction, Fraction]:
        return (self.ratio_lo, self.ratio_hi)

    def min_abs_ratio(self) -> Fraction:
        """Smallest |x| over the interval; 0 if it straddles the origin."""
        if self.ratio_lo > 0:
            return self.ratio_lo
        if self.ratio_hi < 0:
            return -self.ratio_hi
        return Fraction(0)


def is_certified_spec(spec: SequenceSpec) -> bool:
    """True when certified ratio intervals (and series tails) are available."""
    return spec.b == -1 and spec.a != 0


@functools.lru_cache(maxsize=None)
def growth_info(spec: SequenceSpec, J: int, window: int = RATIO_WINDOW) -> GrowthInfo:
    """Dominant root and ratio interval starting at index J >= 3.

    Raises RatioBoundUnavailable when x**2 = a*x - b has no strictly
    dominant real root of modulus > 1; series evaluation then falls back to
    heuristic (oracle-checked) mode.  Results are cached (pure function).
    """
    if J < 3:
        raise ValueError("ratio intervals start at J >= 3")
    disc = spec.a * spec.a - 4 * spec.b
    if disc <= 0 or spec.a == 0:
        raise RatioBoundUnavailable(
            f"x^2 = {spec.a}x - ({spec.b}) has no strictly dominant real root"
        )
    s = math.sqrt(disc)
    root = (spec.a + s) / 2.0 if spec.a > 0 else (spec.a - s) / 2.0
    if abs(root) <= 1.0:
        raise RatioBoundUnavailable("dominant root does not exceed modulus 1")

    ratios = []
    for j in range(J, J + window + 1):
        denom = seq_value(spec, j)
        if denom == 0:
            continue
        ratios.append(seq_value(spec, j - 1) / denom)
    if len(ratios) < 2:
        raise RatioBoundUnavailable("too many vanishing terms to span a ratio interval")
    lo, hi = min(ratios), max(ratios)
    certified = is_certified_spec(spec) and (lo > 0 or hi < 0)
    return GrowthInfo(
        dominant_root=root,
        limit_ratio_pos=root,
        limit_ratio_neg=-1.0 / root,
        ratio_lo=lo,
        ratio_hi=hi,
        certified=certified,
    )
