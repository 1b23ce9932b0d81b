"""Tests for Weierstrass curves, their formal group laws, negation and [n].

Property 1: Curve Laws Satisfy The Axioms
Property 2: Low-Degree Terms Match The Closed Expansion
Property 3: Closed-Form Negation Agrees With Induction
Property 4: Twisting Commutes With Taking The Law
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.config import EngineConfig
from src.core.curve_arith import iter_curves, random_curve
from src.core.errors import FormulaMismatch, NotAFormalGroupLaw, SingularCurve
from src.core.formal_group import (
    FormalGroupLaw,
    WeierstrassCurve,
    additive_law,
    curve_negation,
    generic_negation,
    group_law,
    mark_verified,
    mult_by_n,
    multiplicative_law,
    negation_series,
    s_coordinate,
    s_expansion,
    twist_law,
    verify_axioms,
)
from src.core.galois_field import FieldCtx
from src.core.power_series import TruncSeries, tau, variables
from src.core.types import Axiom, LawKind


SAMPLE_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)]


@st.composite
def curves(draw, fields=SAMPLE_FIELDS):
    ctx = FieldCtx.create(*draw(st.sampled_from(fields)))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_curve(ctx, seed)


def expected_low_degree(curve: WeierstrassCurve) -> TruncSeries:
    """X + Y - a1 XY - a2 (X^2 Y + X Y^2) - (2 a3 X^3 Y + (3 a3 - a1 a2) X^2 Y^2 + 2 a3 X Y^3)."""
    a1, a2, a3, _, _ = curve.coefficients
    return TruncSeries.from_terms(curve.ctx, 2, 5, {
        (1, 0): 1,
        (0, 1): 1,
        (1, 1): -a1,
        (2, 1): -a2,
        (1, 2): -a2,
        (3, 1): -2 * a3,
        (2, 2): -(3 * a3 - a1 * a2),
        (1, 3): -2 * a3,
    })


class TestWeierstrassCurve:
    """Curve construction and invariants."""

    def test_singular_curve_rejected(self, gf5):
        """y^2 = x^3 has zero discriminant."""
        with pytest.raises(SingularCurve):
            WeierstrassCurve.from_coefficients(gf5, [0, 0, 0, 0, 0])

    def test_nonsingular_in_characteristic_two(self, supersingular_gf2, ordinary_gf2):
        """Both reference curves over GF(2) are nonsingular."""
        assert not supersingular_gf2.discriminant.is_zero()
        assert not ordinary_gf2.discriminant.is_zero()

    def test_exhaustive_count_gf2(self, gf2):
        """GF(2) has at most 32 coefficient tuples, and some are singular."""
        count = len(list(iter_curves(gf2)))
        assert 0 < count < 32

    def test_twist_is_coefficient_frobenius(self, gf4):
        """The twist raises every coefficient to the p-th power."""
        g = gf4.gen
        curve = WeierstrassCurve(gf4, g, gf4.zero, gf4.zero, gf4.zero, gf4.one)
        assert curve.twist().a1 == g + 1
        assert curve.twist(2) == curve


class TestSExpansion:
    """The series s(t) with W(t, -1, s) = 0."""

    def test_first_terms(self, gf5):
        """s = t^3 + a1 t^4 + (a1^2 + a2) t^5 + (a1^3 + 2 a1 a2 + a3) t^6 + ..."""
        curve = WeierstrassCurve.from_coefficients(gf5, [1, 2, 3, 1, 1])
        a1, a2, a3 = curve.a1, curve.a2, curve.a3
        S = s_expansion(curve, 8)
        assert S.coeff(3) == 1
        assert S.coeff(4) == a1
        assert S.coeff(5) == a1 * a1 + a2
        assert S.coeff(6) == a1 ** 3 + 2 * a1 * a2 + a3

    @settings(max_examples=30, deadline=None)
    @given(curve=curves())
    def test_s_expansion_solves_the_equation(self, curve):
        """W(t, -1, S(t)) vanishes to the working precision."""
        prec = 10
        t = tau(curve.ctx, prec)
        S = s_expansion(curve, prec)
        minus_one = TruncSeries.constant(curve.ctx, 1, prec, -1)
        assert curve.evaluate(t, minus_one, S).is_zero()

    @settings(max_examples=30, deadline=None)
    @given(curve=curves())
    def test_s_coordinate_matches_composition(self, curve):
        """s_coordinate(f) is S(f) for f of positive order."""
        prec = 9
        t = tau(curve.ctx, prec)
        f = t + curve.a2 * t ** 2
        assert s_coordinate(curve, f) == s_expansion(curve, prec).compose(f)


class TestGroupLaw:
    """Formal group law of a curve."""

    def test_low_degree_terms_gf2(self, ordinary_gf2):
        """The ordinary GF(2) curve starts X + Y + XY + X^2Y + XY^2 + X^2Y^2."""
        F = group_law(ordinary_gf2, 5).F
        assert F == expected_low_degree(ordinary_gf2)

    @settings(max_examples=50, deadline=None)
    @given(curve=curves(fields=[(2, 1), (3, 1), (5, 1), (7, 1)]))
    def test_low_degree_expansion_property(self, curve):
        """
        Property 2: Low-Degree Terms Match The Closed Expansion

        The total-degree <= 4 part of F is exactly the displayed formula.
        """
        F = group_law(curve, 12).F
        assert F.truncate(5) == expected_low_degree(curve)

    def test_axioms_gf2_exhaustive(self, gf2):
        """
        Property 1: Curve Laws Satisfy The Axioms

        Every nonsingular curve over GF(2) gives a law passing all axioms to degree 12.
        """
        for curve in iter_curves(gf2):
            report = verify_axioms(group_law(curve, 12), 12)
            assert report.ok, f"{curve}: {report.failing_axiom} at {report.failing_monomial}"

    def test_axioms_gf3_without_a1_a3(self):
        """Every nonsingular y^2 = x^3 + a2 x^2 + a4 x + a6 over GF(3) passes the axioms to degree 8."""
        curves = [c for c in iter_curves(FieldCtx.create(3)) if c.a1.is_zero() and c.a3.is_zero()]
        assert len(curves) > 0
        for curve in curves:
            report = verify_axioms(group_law(curve, 8), 8)
            assert report.ok, f"{curve}: {report.failing_axiom} at {report.failing_monomial}"

    @pytest.mark.slow
    def test_axioms_gf3_exhaustive(self):
        """Every nonsingular curve over GF(3) passes the axioms to degree 12."""
        for curve in iter_curves(FieldCtx.create(3)):
            assert verify_axioms(group_law(curve, 12), 12).ok

    @pytest.mark.parametrize("p", [5, 7, 13])
    def test_axioms_seeded_random(self, p):
        """Twenty seeded random curves per prime pass the axioms to degree 12."""
        ctx = FieldCtx.create(p)
        rng = np.random.default_rng(1998 + p)
        for _ in range(20):
            curve = random_curve(ctx, rng)
            assert verify_axioms(group_law(curve, 12), 12).ok

    def test_provenance(self, ordinary_gf2):
        """Curve laws remember their curve."""
        law = group_law(ordinary_gf2, 6)
        assert law.provenance.kind is LawKind.CURVE
        assert law.provenance.effective_curve() == ordinary_gf2

    @settings(max_examples=20, deadline=None)
    @given(curve=curves(fields=[(2, 2), (3, 2)]))
    def test_twist_property(self, curve):
        """
        Property 4: Twisting Commutes With Taking The Law

        F^(p) is the law of the twisted curve.
        """
        law = group_law(curve, 8)
        twisted = twist_law(law)
        assert twisted == group_law(curve.twist(), 8)
        assert twisted.provenance.effective_curve() == curve.twist()


class TestAxiomVerifier:
    """verify_axioms on laws and arbitrary series."""

    def test_identity_failure(self, gf5):
        """X + Y + X^2 fails the identity axiom at X^2."""
        X, Y = variables(gf5, 2, 4)
        report = verify_axioms(X + Y + X * X, 4)
        assert not report.identity_ok
        assert report.failing_axiom is Axiom.IDENTITY

    def test_commutativity_failure(self, gf5):
        """X + Y + X^2 Y is not commutative; the first bad monomial is XY^2."""
        X, Y = variables(gf5, 2, 4)
        report = verify_axioms(X + Y + X * X * Y, 4)
        assert report.identity_ok
        assert report.failing_axiom is Axiom.COMMUTATIVITY
        assert report.failing_monomial == (1, 2)

    def test_associativity_failure(self, gf5):
        """X + Y + X^2 Y^2 is commutative but not associative: the first bad monomial is XYZ^2."""
        X, Y = variables(gf5, 2, 6)
        F = X + Y + X * X * Y * Y
        law = FormalGroupLaw(F)
        report = verify_axioms(law, 6)
        assert report.identity_ok and report.commutative_ok
        assert report.failing_axiom is Axiom.ASSOCIATIVITY
        assert report.failing_monomial == (1, 1, 2)
        assert mark_verified(law, report).axiom_checked is None

    def test_constructor_rejects_non_commutative(self, gf5):
        """FormalGroupLaw refuses series that are not commutative."""
        X, Y = variables(gf5, 2, 4)
        with pytest.raises(NotAFormalGroupLaw):
            FormalGroupLaw(X + Y + X * X * Y)

    def test_mark_verified(self, supersingular_gf2):
        """A passing report records the checked degree on the law."""
        law = group_law(supersingular_gf2, 8)
        assert mark_verified(law, verify_axioms(law, 8)).axiom_checked == 8

    def test_standard_laws(self, gf5):
        """The additive and multiplicative laws satisfy the axioms."""
        assert verify_axioms(additive_law(gf5, 8), 8).ok
        assert verify_axioms(multiplicative_law(gf5, 8), 8).ok


class TestNegationAndMultiplication:
    """iota and [n]."""

    def test_multiplicative_three(self, gf5):
        """[3] for X + Y + XY over GF(5) is 3 tau + 3 tau^2 + tau^3."""
        law = multiplicative_law(gf5, 6)
        t = tau(gf5, 6)
        assert mult_by_n(law, 3) == 3 * t + 3 * t ** 2 + t ** 3

    def test_additive_p_vanishes(self, gf5):
        """[p] of the additive law is zero."""
        assert mult_by_n(additive_law(gf5, 30), 5).is_zero()

    def test_minus_one_is_negation(self, ordinary_gf2):
        """[-1] equals the negation series."""
        law = group_law(ordinary_gf2, 10)
        assert mult_by_n(law, -1) == negation_series(law)

    def test_negation_inverts(self, supersingular_gf2):
        """F(tau, iota(tau)) = 0."""
        law = group_law(supersingular_gf2, 10)
        t = tau(law.ctx, 10)
        assert law.add(t, negation_series(law)).is_zero()

    def test_cross_check_mode(self, ordinary_gf2):
        """With cross_check on, both negation formulas run and must agree."""
        law = group_law(ordinary_gf2, 10)
        assert negation_series(law, EngineConfig(cross_check=True)) == curve_negation(ordinary_gf2, 10)

    def test_cross_check_detects_disagreement(self, ordinary_gf2, supersingular_gf2):
        """A law whose provenance names the wrong curve is caught by the cross-check."""
        law = group_law(ordinary_gf2, 8)
        wrong = FormalGroupLaw(law.F, group_law(supersingular_gf2, 8).provenance)
        with pytest.raises(FormulaMismatch):
            negation_series(wrong, EngineConfig(cross_check=True))

    def test_negation_gf2_exhaustive(self, gf2):
        """
        Property 3: Closed-Form Negation Agrees With Induction

        For every curve over GF(2) the closed form equals the inductive solution.
        """
        for curve in iter_curves(gf2):
            law = group_law(curve, 12)
            assert generic_negation(law) == curve_negation(curve, 12)

    @settings(max_examples=40, deadline=None)
    @given(curve=curves(), n=st.integers(-4, 6))
    def test_mult_by_n_additive(self, curve, n):
        """[n + 1] = F([n], tau)."""
        law = group_law(curve, 8)
        t = tau(curve.ctx, 8)
        assert mult_by_n(law, n + 1) == law.add(mult_by_n(law, n), t)
