from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eudoxus.cone_space import ConeSpace, sym_to_vec
from eudoxus.conjunct_product import (
    DEGREE_CAP,
    DimWord,
    Quantity,
    conjunct,
    noncommutative_witness,
    one_dim_collapse_check,
    rectangle_representation_check,
)
from eudoxus.ratio_calculus import JordanOnly, ratio_from_pair

small_fractions = st.fractions(min_value=Fraction(1, 20),
                               max_value=Fraction(20),
                               max_denominator=20)


def test_word_concatenation_free_vs_symmetric():
    cm = DimWord(("cm",), "free")
    s = DimWord(("s",), "free")
    assert (cm * s).symbols == ("cm", "s")
    assert cm * s != s * cm
    cm_s = DimWord(("cm",), "symmetric")
    s_s = DimWord(("s",), "symmetric")
    assert cm_s * s_s == s_s * cm_s


def test_word_exponents_and_degree():
    w = DimWord(("L", "L", "T"), "symmetric")
    assert w.degree == 3
    assert w.exponents() == {"L": 2, "T": 1}
    assert DimWord().degree == 0
    assert repr(DimWord()) == "1"


def test_word_mode_mixing_and_cap():
    with pytest.raises(ValueError):
        DimWord(("a",), "free") * DimWord(("b",), "symmetric")
    with pytest.raises(ValueError):
        DimWord(("x",) * (DEGREE_CAP + 1))


def test_quantity_validation():
    with pytest.raises(ValueError):
        Quantity(-1, DimWord())
    with pytest.raises(TypeError):
        Quantity("two", DimWord())


def test_definition_anchor_products():
    density = Quantity(2, DimWord(("density",)))
    volume2 = Quantity(2, DimWord(("volume",)))
    volume3 = Quantity(3, DimWord(("volume",)))
    velocity = Quantity(2, DimWord(("velocity",)))
    matter = Quantity(2, DimWord(("matter",)))
    assert conjunct(density, volume2).magnitude == 4
    assert conjunct(density, volume3).magnitude == 6
    assert conjunct(velocity, matter).magnitude == 4


def test_conjunct_fraction_magnitudes_exact():
    q = conjunct(Quantity(Fraction(2, 3), DimWord(("a",))),
                 Quantity(Fraction(9, 4), DimWord(("b",))))
    assert q.magnitude == Fraction(3, 2)
    assert q.word == DimWord(("a", "b"))


def test_conjunct_rejects_mixed_magnitudes():
    sp = ConeSpace.orthant(2)
    r = ratio_from_pair(sp, np.array([2.0, 3.0]), np.array([1.0, 1.0]), max_den=64)
    with pytest.raises(ValueError):
        conjunct(Quantity(2, DimWord(("a",))), Quantity(r, DimWord(("b",))))


def test_conjunct_ratio_magnitudes_compose():
    sp = ConeSpace.orthant(2)
    r = ratio_from_pair(sp, np.array([2.0, 3.0]), np.array([1.0, 1.0]), max_den=64)
    s = ratio_from_pair(sp, np.array([5.0, 7.0]), np.array([1.0, 1.0]), max_den=64)
    q = conjunct(Quantity(r, DimWord(("a",))), Quantity(s, DimWord(("b",))))
    assert sorted(q.magnitude.lambdas()) == pytest.approx([10.0, 21.0])


@given(ap=small_fractions, a=small_fractions,
       bp=small_fractions, b=small_fractions)
@settings(max_examples=100, deadline=None)
def test_rectangle_representation(ap, a, bp, b):
    assert rectangle_representation_check(ap, a, bp, b)


def test_one_dim_collapse():
    for d in range(1, 6):
        assert one_dim_collapse_check(d)
    assert one_dim_collapse_check(3, ratio_num=5, ratio_den=2)


def test_noncommutative_witness_scalar_words():
    q12, q21, equal = noncommutative_witness(mode="free")
    assert not equal
    assert q12.magnitude == q21.magnitude == 6
    _, _, equal_sym = noncommutative_witness(mode="symmetric")
    assert equal_sym


def test_noncommutative_witness_ratio_pair():
    sp = ConeSpace.psd_real(2)
    u = sp.canonical_unit()
    r = ratio_from_pair(sp, sym_to_vec(np.diag([1.0, 2.0])), u, max_den=64)
    s = ratio_from_pair(sp, sym_to_vec(np.array([[2.0, 1.0], [1.0, 2.0]])), u,
                        max_den=64)
    q12, q21, equal = noncommutative_witness(delta_pair=(r, s))
    assert not equal
    assert isinstance(q12.magnitude, JordanOnly)


def test_commuting_ratio_pair_is_order_insensitive():
    sp = ConeSpace.orthant(2)
    r = ratio_from_pair(sp, np.array([2.0, 3.0]), np.array([1.0, 1.0]), max_den=64)
    s = ratio_from_pair(sp, np.array([5.0, 7.0]), np.array([1.0, 1.0]), max_den=64)
    _, _, equal = noncommutative_witness(delta_pair=(r, s))
    assert equal
