"""Sequence values, sign rules, and ratio-interval guarantees."""

from fractions import Fraction

import mpmath as mp
import pytest

from semimodular import (
    FIBONACCI,
    INDEX_CAP,
    IndexCapExceeded,
    Kind,
    LUCAS_NUMBERS,
    RatioBoundUnavailable,
    SequenceSpec,
    growth_info,
    seq_value,
    term,
)

PELL = SequenceSpec(2, -1, Kind.FIRST)

SPECS = [
    FIBONACCI,
    LUCAS_NUMBERS,
    PELL,
    SequenceSpec(3, 2, Kind.FIRST),
    SequenceSpec(-2, -1, Kind.FIRST),
    SequenceSpec(-2, -1, Kind.SECOND),
    SequenceSpec(5, 2, Kind.SECOND),
]


def test_preset_values():
    assert term(FIBONACCI, 10).value == 55
    assert term(FIBONACCI, -4).value == -3
    assert term(LUCAS_NUMBERS, -3).value == -4
    assert term(PELL, 4).value == 12
    assert term(SequenceSpec(3, 2), -1).value == Fraction(-1, 2)


def test_seed_values():
    assert [int(seq_value(FIBONACCI, n)) for n in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    assert [int(seq_value(LUCAS_NUMBERS, n)) for n in range(6)] == [2, 1, 3, 4, 7, 11]


@pytest.mark.parametrize("spec", SPECS)
def test_recursion_closure(spec):
    for n in range(-50, 51):
        lhs = seq_value(spec, n)
        rhs = spec.a * seq_value(spec, n - 1) - spec.b * seq_value(spec, n - 2)
        assert lhs == rhs, (spec, n)


@pytest.mark.parametrize(
    "spec", [s for s in SPECS if s.b == -1]
)
def test_sign_rule(spec):
    for n in range(1, 51):
        if spec.kind is Kind.FIRST:
            assert seq_value(spec, -n) == (-1) ** (n - 1) * seq_value(spec, n)
        else:
            assert seq_value(spec, -n) == (-1) ** n * seq_value(spec, n)


@pytest.mark.parametrize("spec", [s for s in SPECS if abs(s.b) == 1])
def test_integrality(spec):
    for n in range(-40, 41):
        assert seq_value(spec, n).denominator == 1


def test_backward_recursion_cross_check():
    # Negative indices come from the closed-form sign rule; walking the
    # recursion backward must agree exactly, rationals included.
    for spec in SPECS:
        hi, lo = seq_value(spec, 1), seq_value(spec, 0)
        for n in range(-1, -30, -1):
            hi, lo = lo, (spec.a * lo - hi) / spec.b
            assert lo == seq_value(spec, n), (spec, n)


def test_ratio_convergence():
    # |F(n)/F(n-1) - phi| decays like sqrt(5) * phi**(-2n+2); the exponent
    # -2n+4 absorbs the sqrt(5) since sqrt(5) < phi**2.  Checked in mpmath
    # because near n = 40 the gap sits at the double-precision floor.
    with mp.workdps(40):
        phi = (1 + mp.sqrt(5)) / 2
        for n in range(2, 41):
            ratio = mp.mpf(int(seq_value(FIBONACCI, n))) / int(seq_value(FIBONACCI, n - 1))
            assert abs(ratio - phi) < phi ** (-2 * n + 4) * (1 + mp.mpf("1e-12"))


def test_index_cap():
    with pytest.raises(IndexCapExceeded):
        seq_value(FIBONACCI, INDEX_CAP + 1)
    with pytest.raises(IndexCapExceeded):
        seq_value(FIBONACCI, -(INDEX_CAP + 1))
    # Large values stay exact: digit count of F(20000).
    assert len(str(int(seq_value(FIBONACCI, 20000)))) == 4180


def test_invalid_specs():
    with pytest.raises(ValueError):
        SequenceSpec(1, 0)
    with pytest.raises(TypeError):
        SequenceSpec(1.5, -1)  # type: ignore[arg-type]


def test_growth_info_fibonacci():
    info = growth_info(FIBONACCI, 5)
    assert info.dominant_root == pytest.approx(1.6180339887498949, abs=1e-12)
    assert info.limit_ratio_neg == pytest.approx(-0.6180339887498949, abs=1e-12)
    assert info.certified
    inv_phi = Fraction(61803398874989485, 10**17)  # 1/phi to enough places
    assert info.ratio_lo < inv_phi < info.ratio_hi


def test_growth_info_pell():
    info = growth_info(PELL, 5)
    assert info.dominant_root == pytest.approx(1 + 2**0.5, abs=1e-12)


def test_growth_info_unavailable():
    with pytest.raises(RatioBoundUnavailable):
        growth_info(SequenceSpec(1, 1), 5)
    with pytest.raises(RatioBoundUnavailable):
        growth_info(SequenceSpec(0, -1), 5)


def test_growth_info_negative_a_certified():
    info = growth_info(SequenceSpec(-2, -1), 5)
    assert info.certified
    assert info.ratio_hi < 0
    assert info.dominant_root == pytest.approx(-1 - 2**0.5, abs=1e-12)


def test_growth_info_b2_heuristic():
    info = growth_info(SequenceSpec(5, 2), 5)
    assert not info.certified
    assert info.dominant_root == pytest.approx((5 + 17**0.5) / 2, abs=1e-12)


def test_ratio_interval_brackets_later_ratios():
    # The certified hull at J must contain every later ratio (spot check
    # far beyond the sampled window).
    for spec in (FIBONACCI, LUCAS_NUMBERS, SequenceSpec(-2, -1), SequenceSpec(3, -1, Kind.SECOND)):
        info = growth_info(spec, 6)
        for j in range(6, 200):
            r = seq_value(spec, j - 1) / seq_value(spec, j)
            assert info.ratio_lo <= r <= info.ratio_hi, (spec, j)
