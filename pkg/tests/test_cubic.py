import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import Z, cubic_maps, map_to_sympy, small_rationals, sympy_sigma, to_sympy
from dynforms.cubic import (
    FpmOutcome,
    SigmaPair,
    classify_partial_fpm,
    cubic_poly_to_sigma,
    curve_C_member,
    curve_C_value,
    fixed_points_are_multipliers,
    form_degeneracy_check,
    lemma4_construct,
    milnor_check_quartic,
    phi_normal_form,
)
from dynforms.errors import InvalidInputError
from dynforms.exactalg import GaloisLabel, UniPoly
from dynforms.projdyn import Mobius, RationalMap, conjugate, multiplier_at, sigma_invariants

EX_2A = RationalMap([0, 0, 2], [-2, 4, -1])
EX_2B = RationalMap([0, 0, 0, 18], [25, 75, 57, -11])
EX_2C = RationalMap([-2, -2, 1, -3], [-4, 4, -5, 1])
NO_FORM = RationalMap([1, 1, 0, 1], [0, 0, 0, 1])
PHI_2C = UniPoly([2, -2, 3, -2, 1])

S1, S3 = sp.symbols("s1 s3")
C_SYM = 4 * S1**3 - 36 * S1**2 + 81 * S1 + 27 * S3 - 54


def on_curve(s1) -> SigmaPair:
    s1 = Fraction(s1)
    return SigmaPair(s1, -(4 * s1**3 - 36 * s1**2 + 81 * s1 - 54) / 27)


def expected(s: SigmaPair) -> tuple:
    return (s.sigma1, 2 * s.sigma1 - 3, s.sigma3, 0)


# -- the curve ---------------------------------------------------------------------------


def test_curve_membership():
    assert curve_C_member(SigmaPair(6, 0)) and curve_C_member(SigmaPair(3, 1))
    assert curve_C_member(SigmaPair(Fraction(3, 2), 0))
    assert not curve_C_member(SigmaPair(0, 0))
    assert curve_C_value(SigmaPair(0, 0)) == -54


@given(small_rationals)
def test_on_curve_helper(s1):
    assert curve_C_member(on_curve(s1))


def test_special_points_plug_second_form_holes():
    # points of the curve the second form cannot reach
    assert {r for r in sp.solve(C_SYM.subs(S3, 0), S1)} == {6, sp.Rational(3, 2)}
    assert sp.solve(C_SYM.subs(S1, 3), S3) == [1]
    assert sp.solve(C_SYM.subs(S1, 6), S3) == [0]


# -- phi ------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "s,poly",
    [((6, 0), [0, 0, 0, 1]), ((3, 1), [0, 1, 0, 1]), ((Fraction(3, 2), 0), [0, Fraction(3, 2), 0, 1])],
)
def test_phi_special_cases(s, poly):
    f = phi_normal_form(SigmaPair(*s))
    assert f == RationalMap.polynomial(poly)
    assert sigma_invariants(f) == expected(SigmaPair(*s))


def test_phi_example_first_form():
    f = phi_normal_form(SigmaPair(1, 0))
    assert f == RationalMap([0, 0, 5, 10], [1, 9, 12, -3])
    # fixed point 2 s1 / 3 - 1 is totally ramified
    x = Fraction(-1, 3)
    assert f(x) == x and multiplier_at(f, x) == 0


def test_phi_example_second_form():
    # (0, 2) lies on the curve: 9z^3 / (2z^3 + 15z^2 - 12z - 16)
    f = phi_normal_form(SigmaPair(0, 2))
    assert f == RationalMap([0, 0, 0, 9], [-16, -12, 15, 2])
    assert f(0) == 0 and multiplier_at(f, 0) == 0


def test_phi_grid_matches_sympy():
    for s1 in range(-5, 6):
        for s3 in range(-5, 6):
            s = SigmaPair(s1, s3)
            f = phi_normal_form(s)
            assert sigma_invariants(f) == expected(s)
            assert sympy_sigma(f) == expected(s)


def test_phi_random_rationals():
    rng = random.Random(2024)
    for _ in range(200):
        s = SigmaPair(*(Fraction(rng.randint(-100, 100), rng.randint(1, 100)) for _ in range(2)))
        assert sigma_invariants(phi_normal_form(s)) == expected(s)


@settings(max_examples=40, deadline=None)
@given(small_rationals)
def test_phi_on_curve(s1):
    s = on_curve(s1)
    assume(s1 not in (3, 6) and s.sigma3 != 0)
    f = phi_normal_form(s)
    assert sigma_invariants(f) == expected(s)
    assert multiplier_at(f, 0) == 0


@settings(max_examples=40, deadline=None)
@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_phi_injective(a1, a3, b1, b3):
    sa, sb = SigmaPair(a1, a3), SigmaPair(b1, b3)
    assume(sa != sb)
    assert sigma_invariants(phi_normal_form(sa)) != sigma_invariants(phi_normal_form(sb))


@settings(max_examples=40, deadline=None)
@given(cubic_maps(polynomial=True))
def test_every_cubic_polynomial_is_hit(f):
    s = cubic_poly_to_sigma(f)
    assert sigma_invariants(phi_normal_form(s)) == sigma_invariants(f)


def test_cubic_poly_to_sigma():
    assert cubic_poly_to_sigma(RationalMap.polynomial([0, 1, 0, 1])) == SigmaPair(3, 1)
    with pytest.raises(InvalidInputError):
        cubic_poly_to_sigma(EX_2B)


# -- degeneracy ------------------------------------------------------------------------------


def test_first_form_resultant_vanishes_exactly_on_curve():
    for s1 in range(-10, 10):
        assert form_degeneracy_check(on_curve(Fraction(s1, 3)), "first") == 0
        off = SigmaPair(Fraction(s1, 3), 7)
        assert (form_degeneracy_check(off, "first") == 0) == curve_C_member(off)


def test_first_form_resultant_is_multiple_of_curve():
    # sympy oracle: Res_z(num, den) as a polynomial in s1, s3 is divisible by C
    num = (12 - 2 * S1) * Z**3 + (2 * S1**2 - 15 * S1 + 18) * Z**2 + 2 * S1 * S3 - 3 * S3
    den = -3 * Z**3 + (9 + 3 * S1) * Z**2 - (18 * S1 - 27) * Z + 4 * S1**2 - 12 * S1 + 3 * S3 + 9
    res = sp.resultant(num, den, Z)
    assert sp.rem(sp.Poly(res, S3), sp.Poly(C_SYM, S3)).is_zero
    s = SigmaPair(Fraction(2, 7), Fraction(-1, 3))
    assert form_degeneracy_check(s, "first") == res.subs({S1: sp.Rational(2, 7), S3: sp.Rational(-1, 3)})


def test_second_form_degenerations():
    assert form_degeneracy_check(SigmaPair(3, 1), "second") == 0
    assert form_degeneracy_check(SigmaPair(6, 0), "second") == 0
    assert form_degeneracy_check(SigmaPair(Fraction(3, 2), 0), "second") == 0
    assert form_degeneracy_check(on_curve(1), "second") != 0
    with pytest.raises(InvalidInputError):
        form_degeneracy_check(SigmaPair(0, 0), "third")


# -- fixed-point multiplier form ----------------------------------------------------------------


def test_milnor_check():
    assert milnor_check_quartic(PHI_2C)
    roots = [0, 2, 3, Fraction(1, 3)]
    assert milnor_check_quartic(UniPoly.from_roots(roots))
    assert not milnor_check_quartic(UniPoly.from_roots([0, 2, 3, 4]))


def test_lemma4_golden():
    F = lemma4_construct(PHI_2C)
    assert F == EX_2C
    # F(z) - z is proportional to phi, and F'(z) - z vanishes mod phi
    expr = sp.together(map_to_sympy(F) - Z)
    assert sp.rem(sp.numer(expr), to_sympy(PHI_2C), Z) == 0
    assert sp.rem(sp.numer(sp.together(sp.diff(map_to_sympy(F), Z) - Z)), to_sympy(PHI_2C), Z) == 0
    assert fixed_points_are_multipliers(F, PHI_2C)


def test_lemma4_rational_roots():
    roots = [0, 2, 3, Fraction(1, 3)]
    F = lemma4_construct(UniPoly.from_roots(roots))
    assert [multiplier_at(F, x) for x in roots] == roots


def test_lemma4_rejects():
    with pytest.raises(InvalidInputError):
        lemma4_construct(UniPoly([-1, 0, 0, 0, 1]))  # 1 is a root
    with pytest.raises(InvalidInputError):
        lemma4_construct(UniPoly.from_roots([0, 2, 3, 4]))
    with pytest.raises(InvalidInputError):
        lemma4_construct(UniPoly.from_roots([2, 2, 3, 0]))


@st.composite
def milnor_roots(draw):
    xs = draw(st.lists(small_rationals.filter(lambda x: x != 1), min_size=3, max_size=3, unique=True))
    total = sum(1 / (1 - x) for x in xs)
    assume(total != 1)
    x4 = 1 - 1 / (1 - total)
    assume(x4 not in xs)
    return xs + [x4]


@settings(max_examples=40, deadline=None)
@given(milnor_roots())
def test_lemma4_property(roots):
    try:
        F = lemma4_construct(UniPoly.from_roots(roots))
    except InvalidInputError:
        assume(False)
    expr = map_to_sympy(F)
    for x in roots:
        xs = sp.Rational(x.numerator, x.denominator)
        assert expr.subs(Z, xs) == xs
        assert sp.diff(expr, Z).subs(Z, xs) == xs
    c = classify_partial_fpm(F)
    assert c.outcome is FpmOutcome.FIXED_POINT_MULTIPLIER_FORM


# -- classification -------------------------------------------------------------------------


def test_classify_2a():
    c = classify_partial_fpm(EX_2A)
    assert c.outcome is FpmOutcome.PARTIAL_VIA_GALOIS_INVARIANT_SET
    assert c.conjugate_count == 1
    assert c.dynatomic_galois is GaloisLabel.Z2
    assert c.evidence["already_full_form"]


def test_classify_2b():
    c = classify_partial_fpm(EX_2B)
    assert c.outcome is FpmOutcome.PARTIAL_VIA_AUTOMORPHISM
    assert c.conjugate_count == 2
    assert c.automorphism == Mobius(1, 0, -2, -1)
    assert conjugate(EX_2B, c.automorphism) == EX_2B


def test_classify_2c():
    c = classify_partial_fpm(EX_2C)
    assert c.outcome is FpmOutcome.FIXED_POINT_MULTIPLIER_FORM
    assert c.conjugate_count == 1
    assert c.dynatomic_galois is GaloisLabel.Z2


def test_classify_no_form():
    c = classify_partial_fpm(NO_FORM)
    assert c.outcome is FpmOutcome.NO_FORM_EXISTS
    assert c.dynatomic_galois is GaloisLabel.Z2xZ2
    assert c.conjugated_map is None


def test_classify_few_fixed_points():
    c = classify_partial_fpm(RationalMap.polynomial([0, 1, 0, 1]))
    assert "count-indeterminate" in c.flags


@settings(max_examples=30, deadline=None)
@given(cubic_maps(), st.integers(1, 3), st.integers(-2, 2))
def test_classification_is_conjugation_invariant(f, a, b):
    m = Mobius(a, b, 0, 1)
    c0, c1 = classify_partial_fpm(f), classify_partial_fpm(conjugate(f, m))
    assert c0.outcome == c1.outcome


@settings(max_examples=30, deadline=None)
@given(cubic_maps())
def test_conjugated_map_witness(f):
    c = classify_partial_fpm(f)
    if c.conjugated_map is not None and c.conjugator is not None:
        assert conjugate(f, c.conjugator) == c.conjugated_map
        assert sigma_invariants(c.conjugated_map) == sigma_invariants(f)
