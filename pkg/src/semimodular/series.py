"""Bilateral series over Lucas-sequence denominators, with certified tails.

The standard series of weight m built on a sequence L is

    sum over all integers j of  (L(j)*z + L(j-1)) ** (-m),

split for bookkeeping into the half over j <= 0 and the half over j >= 1.
A swapped variant, sum of (F(j) - F(j-1)*z) ** (-m), is wired up for the
Fibonacci numbers only; as a full bilateral sum it contains exactly the
same terms re-indexed (j -> 1 - j), but its windows truncate differently.

Poles.  The term at index j vanishes at z = -L(j-1)/L(j), which by the
negative-index sign rule equals L(n)/L(n-1) with n = 1 - j.  For b = -1
these pole ratios accumulate at the dominant root and at minus its
reciprocal; both accumulation points are essential singularities and the
proximity guard treats them like poles.

Truncation certificates.  For b = -1, a != 0 the omitted terms on either
side of a window admit a clean geometric envelope.  Writing
r(j) = L(j-1)/L(j), each denominator factors as

    |L(j)*z + L(j-1)| = |L(j)| * |z - (-r(j))|,

and for j at or beyond the window edge E the ratios r(j) all lie in the
exact interval I of `growth_info` (consecutive ratios bracket all later
ones), so |z - (-r(j))| >= dist(z, -I).  Magnitudes grow at least
geometrically, |L(j+1)/L(j)| = |a + r(j)| >= g with g = |a| + min|I| > 1,
whence

    positive tail <= dist(z, -I)**(-m) * |L(E)|**(-m) / (1 - g**(-m)).

The negatively indexed half is the same picture pushed through the sign
rule L(-n) = +-L(n): its pole at index -n sits at L(n+1)/L(n) = a + r(n),
inside the exact interval a + I, with the same scale and growth.  The
swapped variant exchanges the two clusters (its positive-side poles are
the reciprocals 1/r(j)).  Everything entering a bound is exact (integer
sequence values, rational interval endpoints); the only floating-point
steps are the final distance and logarithms, taken with outward-widened
endpoints and a relative safety factor.  Recursions with b != -1 get
heuristic tails and results flagged uncertified.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import PoleProximity, ToleranceUnreachable, UncertifiedOnly
from .lucas import (
    FIBONACCI,
    SequenceSpec,
    growth_info,
    is_certified_spec,
    seq_value,
)

GUARD_EPS = 1e-6
# Poles with |n| beyond this sit within ~1e-26 of an accumulation point, so
# the accumulation-point check subsumes them.
GUARD_DEPTH = 64
START_WINDOW = 8
MAX_WINDOW = 10_000
MIN_TOL = 1e-13
ORACLE_CAP = 500

# Coefficients wider than this cannot influence any supported tolerance;
# they are also unsafe to push through float().
_HUGE_BITS = 512


class Variant(enum.Enum):
    STANDARD = "standard"
    FOOTNOTE = "footnote"


@dataclass(frozen=True)
class SeriesSpec:
    """Weight-m bilateral series over the given sequence."""

    seq: SequenceSpec
    weight: int
    variant: Variant = Variant.STANDARD

    def __post_init__(self) -> None:
        if not isinstance(self.weight, int) or self.weight < 2:
            raise ValueError("weight must be an integer >= 2")
        if self.variant is Variant.FOOTNOTE and self.seq != FIBONACCI:
            raise ValueError("the swapped-coefficient variant is defined for the Fibonacci numbers only")


@dataclass(frozen=True)
class SeriesResult:
    """Windowed value plus a bound on the total modulus of omitted terms."""

    value: complex
    tail_bound: float
    j_min: int
    j_max: int
    certified: bool


@dataclass(frozen=True)
class PoleMap:
    poles: tuple[Fraction, ...]
    accumulation_points: tuple[float, ...]


def _coeffs(spec: SeriesSpec, j: int) -> tuple[Fraction, Fraction]:
    """Exact (c1, c0) with the index-j term denominator c1*z + c0."""
    if spec.variant is Variant.STANDARD:
        return seq_value(spec.seq, j), seq_value(spec.seq, j - 1)
    return -seq_value(spec.seq, j - 1), seq_value(spec.seq, j)


def _magnitude_bits(x: Fraction) -> int:
    return x.numerator.bit_length() - x.denominator.bit_length()


@functools.lru_cache(maxsize=None)
def _coeffs_float(spec: SeriesSpec, j: int) -> tuple[float, float] | None:
    """Double-rounded (c1, c0), or None once either value outgrows doubles.

    A coefficient of magnitude beyond 2**_HUGE_BITS forces the term
    denominator past 2**_HUGE_BITS times the guard radius, so the term
    underflows double precision anyway.  (The gate is on value magnitude,
    not numerator width: b != -1 sequences have negative-index values like
    -(2**n - 1)/2**n whose numerators grow while the value stays O(1).)
    """
    c1, c0 = _coeffs(spec, j)
    if max(_magnitude_bits(c1), _magnitude_bits(c0)) > _HUGE_BITS:
        return None
    return float(c1), float(c0)


def _term(spec: SeriesSpec, j: int, z: complex) -> complex:
    pair = _coeffs_float(spec, j)
    if pair is None:
        return 0.0 + 0.0j
    den = pair[0] * z + pair[1]
    if den == 0:
        raise PoleProximity(f"term {j} denominator vanishes exactly at z = {z}")
    return den ** (-spec.weight)


def _kahan(terms) -> complex:
    """Compensated accumulation; the term order is part of the contract."""
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for t in terms:
        y = t - comp
        tentative = total + y
        comp = (tentative - total) - y
        total = tentative
    return total


# ---------------------------------------------------------------------------
# Pole map and proximity guard
# ---------------------------------------------------------------------------


def pole_map(seq: SequenceSpec, n_min: int, n_max: int) -> PoleMap:
    """Exact pole ratios L(n)/L(n-1) for n in [n_min, n_max], deduplicated.

    Indices where L(n-1) = 0 contribute no pole and are skipped.
    Accumulation points are reported for the b = -1 family (they are the
    dominant root and minus its reciprocal); other recursions report none.
    """
    poles = set()
    for n in range(n_min, n_max + 1):
        denom = seq_value(seq, n - 1)
        if denom == 0:
            continue
        poles.add(seq_value(seq, n) / denom)
    return PoleMap(tuple(sorted(poles)), _accumulation_points(seq))


def _accumulation_points(seq: SequenceSpec) -> tuple[float, ...]:
    if not is_certified_spec(seq):
        return ()
    info = growth_info(seq, 3)
    return tuple(sorted((info.dominant_root, info.limit_ratio_neg)))


@functools.lru_cache(maxsize=None)
def _guard_points(seq: SequenceSpec, depth: int) -> tuple[complex, ...]:
    pm = pole_map(seq, -depth, depth)
    points = [complex(p) for p in pm.poles]
    points.extend(complex(a) for a in pm.accumulation_points)
    return tuple(points)


def pole_distance(seq: SequenceSpec, z: complex, depth: int = GUARD_DEPTH) -> float:
    """Distance from z to the guarded pole set plus accumulation points."""
    return min(abs(z - p) for p in _guard_points(seq, depth))


def _check_guard(seq: SequenceSpec, z: complex, eps: float) -> None:
    d = pole_distance(seq, z)
    if d < eps:
        raise PoleProximity(f"z = {z} is within {d:.3e} of a pole or accumulation point (guard {eps:.1e})")


# ---------------------------------------------------------------------------
# Tail bounds
# ---------------------------------------------------------------------------


def _interval_distance(z: complex, lo: float, hi: float) -> float:
    x = z.real
    if x < lo:
        dx = lo - x
    elif x > hi:
        dx = x - hi
    else:
        dx = 0.0
    return math.hypot(dx, z.imag)


def _widened(lo: Fraction, hi: Fraction) -> tuple[float, float]:
    """Float endpoints rounded outward so the float interval covers the exact one."""
    return math.nextafter(float(lo), -math.inf), math.nextafter(float(hi), math.inf)


def _log_abs_int(value: Fraction) -> float:
    # Certified specs have b = -1, so values are integers (denominator 1).
    return math.log(abs(value.numerator)) - math.log(value.denominator)


@functools.lru_cache(maxsize=None)
def _tail_params(spec: SeriesSpec, edge: int, side: str) -> tuple[float, float, float, float]:
    """z-independent pieces of the certified side tail at a window edge:
    widened cluster endpoints, log of the scale value, and growth ratio g.

    The ratio interval is taken at edge-1 so it also covers the swapped
    variant, whose coefficient indices trail by one.
    """
    seq = spec.seq
    info = growth_info(seq, max(3, edge - 1))
    lo, hi = info.ratio_lo, info.ratio_hi
    g = float(Fraction(abs(seq.a)) + info.min_abs_ratio())

    if spec.variant is Variant.STANDARD:
        cluster = (-hi, -lo) if side == "pos" else (seq.a + lo, seq.a + hi)
        scale = seq_value(seq, edge)
    elif side == "pos":
        cluster = (1 / hi, 1 / lo)
        scale = seq_value(seq, edge - 1)
    else:
        cluster = (-hi, -lo)
        scale = seq_value(seq, edge + 1)

    c_lo, c_hi = _widened(min(cluster), max(cluster))
    return c_lo, c_hi, _log_abs_int(scale), g


def _certified_side_tail(spec: SeriesSpec, z: complex, edge: int, side: str) -> float:
    """Bound the omitted-mass on one side; `edge` is the first omitted |index|.

    Sound for b = -1, a != 0 per the envelope in the module docstring.
    """
    c_lo, c_hi, log_scale, g = _tail_params(spec, edge, side)
    if g <= 1.0:
        return math.inf
    d = _interval_distance(z, c_lo, c_hi) * (1.0 - 1e-12)
    if d <= 0.0:
        return math.inf
    m = spec.weight
    log_tail = -m * (math.log(d) + log_scale) - math.log1p(-(g**-m))
    if log_tail < -745.0:
        return 0.0
    if log_tail > 709.0:
        return math.inf
    return math.exp(log_tail)


def _heuristic_side_tail(spec: SeriesSpec, z: complex, edge: int, side: str) -> float:
    """Geometric extrapolation of the first omitted terms; no soundness claim."""
    sign = 1 if side == "pos" else -1
    mags = [abs(_term(spec, sign * (edge + i), z)) for i in range(3)]
    if mags[0] == 0.0:
        return 0.0 if max(mags) == 0.0 else math.inf
    q = mags[1] / mags[0]
    if mags[1] > 0.0:
        q = max(q, mags[2] / mags[1])
    if q >= 0.75:
        return math.inf
    return mags[0] / (1.0 - q)


def _plan_window(spec: SeriesSpec, z: complex, tol: float, certified: bool):
    side_tail = _certified_side_tail if certified else _heuristic_side_tail
    J = START_WINDOW
    while True:
        neg = side_tail(spec, z, J + 1, "neg")
        pos = side_tail(spec, z, J + 1, "pos")
        if neg <= tol / 2 and pos <= tol / 2:
            return J, neg, pos
        if J >= MAX_WINDOW:
            raise ToleranceUnreachable(
                f"window cap {MAX_WINDOW} hit with side tails ({neg:.3e}, {pos:.3e}) > {tol:.1e}/2"
            )
        if not certified and J >= 256 and math.isinf(neg + pos):
            # Divergent exploration series: terms are not shrinking.
            raise ToleranceUnreachable("omitted terms are not decaying; series looks divergent here")
        J = min(J * 2, MAX_WINDOW)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate_halves(
    spec: SeriesSpec,
    z: complex,
    tol: float = 1e-10,
    *,
    require_certified: bool = False,
    guard_eps: float = GUARD_EPS,
) -> tuple[SeriesResult, SeriesResult]:
    """Windowed half sums over j <= 0 and j >= 1, each with its own tail bound.

    Each half is accumulated from its far end inward (ascending term
    magnitude) with Kahan compensation; `evaluate` adds the two half values,
    so the decomposition identity holds bit-exactly.
    """
    if not (tol >= MIN_TOL):
        raise ValueError(f"tol must be >= {MIN_TOL}")
    z = complex(z)
    certified = is_certified_spec(spec.seq)
    if require_certified and not certified:
        raise UncertifiedOnly(f"no certified tail bounds for {spec.seq}")
    _check_guard(spec.seq, z, guard_eps)
    J, neg_tail, pos_tail = _plan_window(spec, z, tol, certified)
    minus = _kahan(_term(spec, j, z) for j in range(-J, 1))
    plus = _kahan(_term(spec, j, z) for j in range(J, 0, -1))
    return (
        SeriesResult(minus, neg_tail, -J, 0, certified),
        SeriesResult(plus, pos_tail, 1, J, certified),
    )


def evaluate(
    spec: SeriesSpec,
    z: complex,
    tol: float = 1e-10,
    *,
    require_certified: bool = False,
    guard_eps: float = GUARD_EPS,
) -> SeriesResult:
    """Windowed bilateral sum with |omitted mass| <= tail_bound.

    The value is exactly the sum of the two half results of
    `evaluate_halves` at the same window.
    """
    minus, plus = evaluate_halves(
        spec, z, tol, require_certified=require_certified, guard_eps=guard_eps
    )
    return SeriesResult(
        minus.value + plus.value,
        minus.tail_bound + plus.tail_bound,
        minus.j_min,
        plus.j_max,
        minus.certified,
    )


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _oracle_mp(spec: SeriesSpec, z: complex, J: int) -> mpmath.mpc:
    """Plain symmetric partial sum over |j| <= J at 50 significant digits."""
    if J > ORACLE_CAP:
        raise ValueError(f"oracle window capped at {ORACLE_CAP}")
    with mpmath.workdps(50):
        zz = mpmath.mpc(z)
        total = mpmath.mpc(0)
        for j in range(-J, J + 1):
            c1, c0 = _coeffs(spec, j)
            den = (mpmath.mpf(c1.numerator) / c1.denominator) * zz + (
                mpmath.mpf(c0.numerator) / c0.denominator
            )
            if den == 0:
                raise PoleProximity(f"term {j} denominator vanishes exactly at z = {z}")
            total += den ** (-spec.weight)
        return total


def brute_force_oracle(spec: SeriesSpec, z: complex, J: int) -> complex:
    """Extended-precision symmetric partial sum, rounded to a complex double."""
    return complex(_oracle_mp(spec, z, J))
