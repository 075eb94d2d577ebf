from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from eudoxus.exact_rational import (
    CLASS_ABOVE,
    CLASS_BELOW,
    CLASS_EQUAL,
    EQUAL,
    GREATER,
    LESS,
    FractionCutOracle,
    RealCutOracle,
    classify_fraction,
    compare,
    stern_brocot_bracket,
)


def test_compare_basic():
    assert compare(Fraction(1, 2), Fraction(2, 3)) == LESS
    assert compare(Fraction(3, 4), Fraction(3, 4)) == EQUAL
    assert compare(Fraction(7, 5), Fraction(4, 3)) == GREATER


def test_compare_large_magnitudes_exact():
    big = Fraction(10**40 + 1, 10**40)
    assert compare(big, Fraction(1)) == GREATER
    assert compare(big, big) == EQUAL


def test_classify_fraction_three_classes():
    oracle = FractionCutOracle(Fraction(3, 7))
    assert classify_fraction(Fraction(2, 7), oracle) == CLASS_BELOW
    assert classify_fraction(Fraction(3, 7), oracle) == CLASS_EQUAL
    assert classify_fraction(Fraction(1, 2), oracle) == CLASS_ABOVE


def test_classify_fraction_rejects_nonpositive():
    oracle = FractionCutOracle(Fraction(1, 2))
    try:
        classify_fraction(Fraction(0), oracle)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


def test_sqrt2_bracket_small_denominator():
    # best denominator-5 neighbours of sqrt(2) are 7/5 and 3/2
    lo, hi = stern_brocot_bracket(RealCutOracle(2.0**0.5), max_den=5)
    assert lo == Fraction(7, 5)
    assert hi == Fraction(3, 2)


def test_sqrt2_bracket_contains_target():
    lo, hi = stern_brocot_bracket(RealCutOracle(2.0**0.5), max_den=10**6)
    assert lo * lo < 2 < hi * hi
    assert lo <= Fraction(2.0**0.5) <= hi
    assert hi - lo < Fraction(1, 10**11)


def test_exact_hit_collapses_bracket():
    lo, hi = stern_brocot_bracket(FractionCutOracle(Fraction(2, 3)), max_den=10)
    assert lo == hi == Fraction(2, 3)


@given(num=st.integers(1, 400), den=st.integers(1, 50),
       max_den=st.integers(1, 200))
@settings(max_examples=200, deadline=None)
def test_bracket_properties(num, den, max_den):
    target = Fraction(num, den)
    lo, hi = stern_brocot_bracket(FractionCutOracle(target), max_den)
    assert lo <= target <= hi
    assert lo.denominator <= max_den and hi.denominator <= max_den
    if target.denominator <= max_den:
        assert lo == hi == target
    else:
        # Stern-Brocot neighbours satisfy the unimodular relation
        assert hi - lo == Fraction(1, lo.denominator * hi.denominator)


@given(num=st.integers(1, 100), den=st.integers(1, 100))
@settings(max_examples=100, deadline=None)
def test_classification_matches_comparison(num, den):
    target = Fraction(17, 12)
    oracle = FractionCutOracle(target)
    q = Fraction(num, den)
    expected = {LESS: CLASS_BELOW, EQUAL: CLASS_EQUAL, GREATER: CLASS_ABOVE}
    assert classify_fraction(q, oracle) == expected[compare(q, target)]


def test_max_den_validation():
    try:
        stern_brocot_bracket(FractionCutOracle(Fraction(1)), 0)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
