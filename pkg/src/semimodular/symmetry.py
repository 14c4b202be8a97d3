"""Moebius action, slash operator, and numerical verification of the
semi-modular invariance laws.

Two identity kinds are checked, both with the weight-2k automorphy
convention (f|M)(z) = (r*z + s)**(-2k) * f((p*z + q)/(r*z + s)):

  * InversionS:  f(-1/z) = z**(2k) * f(z), i.e. f|S = f;
  * MirrorPa(a): f(a - z) = f(z), i.e. f|P_a = f, the mirror around
    Re(z) = a/2 that pairs with the sequence's recursion coefficient a.

`check_identity` samples a reproducible annulus, rejects points too close
to the pole lattice (for the point and its image), and reports per-sample
residuals against a tolerance built from both evaluations' certified tail
bounds plus a rounding floor scaled by the automorphy factor.

The module also exposes the individual half-sum manipulation steps that
make the identities work (shift by the recursion coefficient, negation,
and their unilateral versions, whose +-1 boundary terms and half swaps are
the whole story).  Each step is a standalone numerically checkable claim.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Union

from .errors import InvalidPairing, MobiusPole, OddWeight, UncertifiedOnly
from .gl2 import S as MAT_S
from .gl2 import IntMat2, mirror_matrix
from .lucas import FIBONACCI, SequenceSpec
from .series import (
    SeriesResult,
    SeriesSpec,
    evaluate,
    evaluate_halves,
    pole_distance,
)

SAMPLE_RADIUS_MIN = 0.2
SAMPLE_RADIUS_MAX = 5.0
REJECT_RADIUS = 0.05
# Rounding floor per sample: FLOOR_COEFF * (1 + |z|)**weight.
FLOOR_COEFF = 1e-9


@dataclass(frozen=True)
class InversionS:
    """f(-1/z) = z**(2k) f(z)."""


@dataclass(frozen=True)
class MirrorPa:
    """f(a - z) = f(z), mirror around Re(z) = a/2."""

    a: int


IdentityKind = Union[InversionS, MirrorPa]


@dataclass(frozen=True)
class ResidualReport:
    sample_points: tuple[complex, ...]
    residuals: tuple[float, ...]
    tolerances: tuple[float, ...]
    passed: bool
    seed: int

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def failure_fraction(self) -> float:
        if not self.residuals:
            return 0.0
        bad = sum(1 for r, t in zip(self.residuals, self.tolerances) if r > t)
        return bad / len(self.residuals)


def mobius_apply(mat: IntMat2, z: complex) -> complex:
    """(p*z + q)/(r*z + s); MobiusPole when the denominator vanishes."""
    den = mat.r * z + mat.s
    if den == 0:
        raise MobiusPole(f"denominator {mat.r}*z + {mat.s} vanishes at z = {z}")
    return (mat.p * z + mat.q) / den


def slash(
    spec: SeriesSpec,
    mat: IntMat2,
    z: complex,
    tol: float = 1e-10,
    weight: int | None = None,
) -> complex:
    """(f|mat)(z) = (r*z + s)**(-weight) * f of the transformed point; weight defaults to spec's."""
    m = spec.weight if weight is None else weight
    w = mobius_apply(mat, z)
    factor = (mat.r * z + mat.s) ** (-m)
    return factor * evaluate(spec, w, tol).value


def matrix_for(kind: IdentityKind) -> IntMat2:
    if isinstance(kind, InversionS):
        return MAT_S
    return mirror_matrix(kind.a)


def _sample_annulus(rng: random.Random) -> complex:
    # Area-uniform over the annulus; fully determined by the rng state.
    r = math.sqrt(rng.uniform(SAMPLE_RADIUS_MIN**2, SAMPLE_RADIUS_MAX**2))
    theta = rng.uniform(0.0, 2.0 * math.pi)
    return complex(r * math.cos(theta), r * math.sin(theta))


def check_identity(
    spec: SeriesSpec,
    kind: IdentityKind,
    k: int | None = None,
    n_samples: int = 100,
    seed: int = 0,
    *,
    eval_tol: float = 1e-10,
    force_pairing: bool = False,
) -> ResidualReport:
    """Residual scan of one invariance law over a seeded annulus sample.

    The weight must be even (2k); mirror checks require the mirror
    parameter to equal the sequence's coefficient a unless `force_pairing`
    is set (the deliberate-mismatch mode used by the negative control).
    Only b = -1 sequences carry certified bounds, so others are rejected.
    """
    if spec.weight % 2 != 0:
        raise OddWeight(f"identity checks need even weight, got {spec.weight}")
    if k is not None and 2 * k != spec.weight:
        raise ValueError(f"k = {k} is inconsistent with weight {spec.weight}")
    if spec.seq.b != -1:
        raise UncertifiedOnly("identity checks are only offered in the certified b = -1 regime")
    if isinstance(kind, MirrorPa) and kind.a != spec.seq.a and not force_pairing:
        raise InvalidPairing(
            f"mirror parameter {kind.a} does not match the sequence coefficient a = {spec.seq.a}"
        )

    mat = matrix_for(kind)
    weight = spec.weight
    rng = random.Random(seed)
    points: list[complex] = []
    residuals: list[float] = []
    tolerances: list[float] = []
    attempts = 0
    while len(points) < n_samples:
        attempts += 1
        if attempts > 1000 * n_samples:
            raise RuntimeError("sampling stalled; rejection region too large")
        z = _sample_annulus(rng)
        if pole_distance(spec.seq, z) < REJECT_RADIUS:
            continue
        try:
            image = mobius_apply(mat, z)
        except MobiusPole:
            continue
        if pole_distance(spec.seq, image) < REJECT_RADIUS:
            continue
        factor = (mat.r * z + mat.s) ** (-weight)
        lhs = evaluate(spec, image, eval_tol)
        rhs = evaluate(spec, z, eval_tol)
        residual = abs(factor * lhs.value - rhs.value)
        tolerance = (
            rhs.tail_bound
            + abs(factor) * lhs.tail_bound
            + FLOOR_COEFF * (1.0 + abs(z)) ** weight
        )
        points.append(z)
        residuals.append(residual)
        tolerances.append(tolerance)

    passed = all(r <= t for r, t in zip(residuals, tolerances))
    return ResidualReport(tuple(points), tuple(residuals), tuple(tolerances), passed, seed)


# ---------------------------------------------------------------------------
# Half-sum manipulation steps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepCheck:
    name: str
    z: complex
    lhs: complex
    rhs: complex
    tolerance: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def ok(self) -> bool:
        return self.residual <= self.tolerance


def _floor(z: complex, weight: int) -> float:
    return FLOOR_COEFF * (1.0 + abs(z)) ** weight


def proof_step(
    name: str,
    k: int,
    z: complex,
    seq: SequenceSpec | None = None,
    eval_tol: float = 1e-10,
) -> StepCheck:
    """Evaluate both sides of one half-sum manipulation step at z.

    Fibonacci steps ("half-*" and "full-*") check, for f of weight 2k:

      half-plus-shift    f+(z+1) = z**(-2k) f+(1/z) - 1
      half-minus-shift   f-(z+1) = z**(-2k) f-(1/z) + 1
      full-shift         f(z+1)  = z**(-2k) f(1/z)
      half-minus-negate  f-(-z)  = z**(-2k) f+(1/z)
      half-plus-negate   f+(-z)  = z**(-2k) f-(1/z)
      full-negate        f(-z)   = z**(-2k) f(1/z)

    The "lucas-shift" / "lucas-negate" steps take any b = -1 sequence and
    check the full-sum analogues with the shift z + a in place of z + 1.
    The tolerance combines both sides' certified tails with the rounding
    floor; boundary constants are exact and add nothing.
    """
    weight = 2 * k
    if k < 1:
        raise ValueError("k must be >= 1")

    if name in LUCAS_STEPS:
        if seq is None:
            raise ValueError("lucas steps need an explicit sequence")
        if seq.b != -1:
            raise UncertifiedOnly("half-swap steps hold in the b = -1 regime only")
        spec = SeriesSpec(seq, weight)
        lhs_point = z + seq.a if name == "lucas-shift" else -z
        lhs_res = evaluate(spec, lhs_point, eval_tol)
        rhs_res = evaluate(spec, 1 / z, eval_tol)
        factor = z ** (-weight)
        return StepCheck(
            name,
            z,
            lhs_res.value,
            factor * rhs_res.value,
            lhs_res.tail_bound + abs(factor) * rhs_res.tail_bound + _floor(z, weight),
        )

    if name not in PROOF_STEPS:
        raise ValueError(f"unknown step {name!r}")
    spec = SeriesSpec(seq if seq is not None else FIBONACCI, weight)
    if spec.seq != FIBONACCI:
        raise ValueError("the unilateral steps are specific to the Fibonacci series")
    factor = z ** (-weight)
    lhs_point = z + 1 if "shift" in name else -z
    lm, lp = evaluate_halves(spec, lhs_point, eval_tol)
    rm, rp = evaluate_halves(spec, 1 / z, eval_tol)

    def combined(lhs: SeriesResult, rhs: SeriesResult) -> float:
        return lhs.tail_bound + abs(factor) * rhs.tail_bound + _floor(z, weight)

    if name == "half-plus-shift":
        return StepCheck(name, z, lp.value, factor * rp.value - 1, combined(lp, rp))
    if name == "half-minus-shift":
        return StepCheck(name, z, lm.value, factor * rm.value + 1, combined(lm, rm))
    if name == "half-minus-negate":
        # The halves swap through the inversion.
        return StepCheck(name, z, lm.value, factor * rp.value, combined(lm, rp))
    if name == "half-plus-negate":
        return StepCheck(name, z, lp.value, factor * rm.value, combined(lp, rm))
    # full-shift / full-negate
    full_l = lm.value + lp.value
    full_r = factor * (rm.value + rp.value)
    tol = (lm.tail_bound + lp.tail_bound) + abs(factor) * (
        rm.tail_bound + rp.tail_bound
    ) + _floor(z, weight)
    return StepCheck(name, z, full_l, full_r, tol)


PROOF_STEPS = (
    "half-plus-shift",
    "half-minus-shift",
    "full-shift",
    "half-minus-negate",
    "half-plus-negate",
    "full-negate",
)

LUCAS_STEPS = ("lucas-shift", "lucas-negate")
