from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eudoxus.cone_space import ConeSpace, sym_to_vec
from eudoxus.derivation_algebra import Derivation, selfadjoint_derivations
from eudoxus.ratio_calculus import (
    FractionCutOracle,
    JordanOnly,
    NotAnOrderUnit,
    NotComparable,
    Ratio,
    add,
    apply_fraction,
    archimedes_check,
    classic_add,
    classic_compose,
    classic_ratio_equal,
    compose,
    compositio_check,
    cuts_equal,
    eudoxus_equal_three,
    eudoxus_equal_two,
    ex_aequali_check,
    from_derivation,
    iterate,
    partition,
    quadrature_demo,
    quadrature_ratio_demo,
    ratio_equal,
    ratio_from_pair,
    to_derivation,
)

positive_fractions = st.fractions(min_value=Fraction(1, 50),
                                  max_value=Fraction(100),
                                  max_denominator=50)


def _orthant_ratio(lams, sp=None):
    sp = sp or ConeSpace.orthant(len(lams))
    a = np.ones(len(lams))
    return ratio_from_pair(sp, np.array(lams, dtype=float), a, max_den=64)


def test_iterate_and_partition():
    assert iterate(3, Fraction(2, 5)) == Fraction(6, 5)
    assert partition(Fraction(6, 5), 3) == Fraction(2, 5)
    with pytest.raises(ValueError):
        iterate(0, Fraction(1))


@given(n=st.integers(1, 20), d=st.integers(1, 20), a=positive_fractions)
@settings(max_examples=100, deadline=None)
def test_apply_fraction_is_representation_free(n, d, a):
    q = Fraction(n, d)
    assert apply_fraction(q, a) == apply_fraction(Fraction(2 * n, 2 * d), a)
    assert apply_fraction(q, a) == q * a


def test_archimedes_check():
    assert archimedes_check(None, Fraction(1, 10), Fraction(5), 51)
    assert not archimedes_check(None, Fraction(1, 10), Fraction(5), 50)
    sp = ConeSpace.orthant(2)
    assert archimedes_check(sp, np.array([1.0, 1.0]), np.array([3.0, 7.0]), 8)
    assert not archimedes_check(sp, np.array([1.0, 1.0]), np.array([3.0, 7.0]), 3)


def test_ratio_from_pair_orthant():
    sp = ConeSpace.orthant(2)
    r = ratio_from_pair(sp, np.array([2.0, 6.0]), np.array([1.0, 2.0]))
    assert sorted(r.lambdas()) == pytest.approx([2.0, 3.0])
    for lam, bracket, _ in r.decomposition:
        lo, hi = bracket
        assert lo == hi == Fraction(lam)
    assert not r.has_negative


def test_ratio_rejects_non_order_unit_consequent():
    sp = ConeSpace.orthant(2)
    with pytest.raises(NotAnOrderUnit):
        ratio_from_pair(sp, np.array([1.0, 1.0]), np.array([1.0, 0.0]))


def test_ratio_rejects_non_diagonal_antecedent():
    # the antecedent solves a derivation equation, but the consequent
    # diag(1, 2) is not diagonal in that derivation's eigenbasis
    sp = ConeSpace.psd_real(2)
    a = sym_to_vec(np.diag([1.0, 2.0]))
    a_prime = sym_to_vec(np.array([[0.0, 3.0], [3.0, 0.0]]))
    with pytest.raises(NotComparable):
        ratio_from_pair(sp, a_prime, a)


def test_negative_multiplier_is_admitted_but_flagged():
    sp = ConeSpace.orthant(2)
    r = ratio_from_pair(sp, np.array([-1.0, 2.0]), np.array([1.0, 1.0]))
    assert r.has_negative
    lam, bracket, _ = min(r.decomposition, key=lambda e: e[0])
    assert bracket is None


def test_to_derivation_maps_consequent_to_antecedent():
    sp = ConeSpace.orthant(3)
    a = np.array([1.0, 2.0, 1.0])
    a_prime = np.array([0.5, 6.0, 0.5])
    r = ratio_from_pair(sp, a_prime, a)
    d = to_derivation(r)
    assert np.allclose(d(a), a_prime, atol=1e-9)


def test_derivation_roundtrip_all_kinds():
    rng = np.random.default_rng(17)
    for sp in (ConeSpace.orthant(3), ConeSpace.lorentz(3),
               ConeSpace.psd_real(2), ConeSpace.hermitian(2)):
        basis = selfadjoint_derivations(sp)
        for _ in range(10):
            coef = rng.uniform(0.2, 2.0, len(basis))
            d = Derivation(sp, sum(c * b.mat for c, b in zip(coef, basis)))
            r = from_derivation(sp, d, max_den=64)
            back = to_derivation(r)
            assert np.linalg.norm(back.mat - d.mat) < 1e-9 * max(1.0, d.norm())
            assert ratio_equal(from_derivation(sp, back, max_den=64), r)


def test_ratio_equal_and_not_comparable():
    sp = ConeSpace.psd_real(2)
    u = sp.canonical_unit()
    r = ratio_from_pair(sp, sym_to_vec(np.diag([1.0, 2.0])), u)
    s = ratio_from_pair(sp, sym_to_vec(np.array([[2.0, 1.0], [1.0, 2.0]])), u)
    assert ratio_equal(r, r)
    assert ratio_equal(r, r, max_den=1000)
    with pytest.raises(NotComparable):
        ratio_equal(r, s)


def test_ratio_equal_distinguishes_unequal_comparable():
    r = _orthant_ratio([1.0, 2.0])
    s = _orthant_ratio([1.0, 3.0])
    assert not ratio_equal(r, s)
    assert not ratio_equal(r, s, max_den=100)


def test_compose_commuting_ratios():
    r = _orthant_ratio([2.0, 3.0])
    s = _orthant_ratio([5.0, 7.0])
    rs = compose(r, s, max_den=64)
    assert isinstance(rs, Ratio)
    assert sorted(rs.lambdas()) == pytest.approx([10.0, 21.0])


def test_compose_noncommuting_falls_back_to_jordan():
    sp = ConeSpace.psd_real(2)
    u = sp.canonical_unit()
    r = ratio_from_pair(sp, sym_to_vec(np.diag([1.0, 2.0])), u)
    s = ratio_from_pair(sp, sym_to_vec(np.array([[2.0, 1.0], [1.0, 2.0]])), u)
    out = compose(r, s)
    assert isinstance(out, JordanOnly)
    assert out.jb_only
    dr, ds = to_derivation(r).mat, to_derivation(s).mat
    assert np.allclose(out.derivation.mat, (dr @ ds + ds @ dr) / 2, atol=1e-12)


def test_add_ratios():
    r = _orthant_ratio([2.0, 3.0])
    s = _orthant_ratio([5.0, 7.0])
    total = add(r, s, max_den=64)
    assert sorted(total.lambdas()) == pytest.approx([7.0, 10.0])


@given(a=positive_fractions, b=positive_fractions)
@settings(max_examples=100, deadline=None)
def test_cut_equality_variants_agree(a, b):
    o1, o2 = FractionCutOracle(a), FractionCutOracle(b)
    probes = [Fraction(m, n) for m in range(1, 8) for n in range(1, 8)] + [a, b]
    three = eudoxus_equal_three(o1, o2, probes)
    two = eudoxus_equal_two(o1, o2, probes)
    assert three == two
    if a == b:
        assert three
        assert cuts_equal(o1, o2, 100)
    else:
        assert cuts_equal(o1, o2, max(a.denominator, b.denominator)) == (a == b)


@given(a=positive_fractions, b=positive_fractions, c=positive_fractions,
       k=positive_fractions)
@settings(max_examples=100, deadline=None)
def test_ex_aequali_exact(a, b, c, k):
    # perturbed hypothesis: a:b = b':c' and b:c = a':b'
    bp = k * b
    cp = k * b * b / a
    ap = k * b * b / c
    assert ex_aequali_check(a, b, c, ap, bp, cp) is True


def test_ex_aequali_vacuous():
    assert ex_aequali_check(1, 2, 3, 4, 5, 6) == "Vacuous"


@given(ap=positive_fractions, a=positive_fractions, k=positive_fractions)
@settings(max_examples=100, deadline=None)
def test_compositio_exact(ap, a, k):
    assert compositio_check(ap, a, k * ap, k * a) is True


def test_compositio_vacuous():
    assert compositio_check(1, 2, 2, 3) == "Vacuous"


@given(ap=positive_fractions, a=positive_fractions,
       cp=positive_fractions, c=positive_fractions)
@settings(max_examples=100, deadline=None)
def test_classic_add_and_compose_values(ap, a, cp, c):
    num, den = classic_add(ap, a, cp, c)
    assert num / den == ap / a + cp / c
    num, den = classic_compose(ap, a, cp, c)
    assert num / den == (ap / a) * (cp / c)


def test_quadrature_brackets_one_third():
    k = 1024
    lower, upper, gap = quadrature_demo(lambda x: x * x, k)
    # exact step sums of the square
    assert lower == Fraction((k - 1) * k * (2 * k - 1), 6 * k**3)
    assert upper == Fraction(k * (k + 1) * (2 * k + 1), 6 * k**3)
    assert lower < Fraction(1, 3) < upper
    assert upper - lower == Fraction(1, k)
    assert gap == upper / lower - 1


def test_quadrature_bracket_tightens_with_refinement():
    widths = [quadrature_demo(lambda x: x * x, k)[1]
              - quadrature_demo(lambda x: x * x, k)[0]
              for k in (4, 16, 64)]
    assert widths == [Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)]


def test_quadrature_fixed_column_ratio_transfers():
    rho, low_ok, up_ok = quadrature_ratio_demo(lambda x: x * x,
                                               lambda x: 2 * x * x, 128)
    assert rho == 2
    assert low_ok and up_ok


def test_quadrature_rejects_non_monotone():
    with pytest.raises(ValueError):
        quadrature_demo(lambda x: x - x * x, 16)


def test_classic_ratio_equal():
    assert classic_ratio_equal(2, 3, 4, 6)
    assert not classic_ratio_equal(2, 3, 5, 6)
