"""Tests for curve points, chart formulas, point counting and classification.

Property 1: Chart Addition Matches The Chord Construction
Property 2: Trace Mod p Agrees With The Point Count
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from src.core.config import EngineConfig
from src.core.curve_arith import (
    CurveStats,
    ProjectivePoint,
    affine_points,
    chart_add,
    chart_add_series,
    chart_neg,
    classify,
    count_points,
    curve_height,
    curve_stats,
    iter_curves,
    negate,
    on_curve,
    random_curve,
    random_point,
    supersingular_orders,
    trace_mod_p,
)
from src.core.errors import BoundExceeded, HypothesisFailed, InsufficientPrecision
from src.core.formal_group import WeierstrassCurve, group_law
from src.core.galois_field import FieldCtx
from src.core.power_series import tau
from src.core.types import Classification


def chord_sum(curve: WeierstrassCurve, P1: ProjectivePoint, P2: ProjectivePoint) -> ProjectivePoint:
    """Affine chord rule for x1 != x2, written directly from the Weierstrass equation."""
    a1, a2, a3, _, _ = curve.coefficients
    slope = (P2.Y - P1.Y) / (P2.X - P1.X)
    intercept = P1.Y - slope * P1.X
    x3 = slope * slope + a1 * slope - a2 - P1.X - P2.X
    y3 = -(slope + a1) * x3 - intercept - a3
    return ProjectivePoint.affine(x3, y3)


def check_curve_stats(curve: WeierstrassCurve) -> CurveStats:
    stats = curve_stats(curve)
    p = curve.ctx.p
    assert stats.trace % p == stats.trace_mod_p, f"{curve}: {stats}"
    assert (stats.height == 2) == (stats.trace % p == 0)
    assert stats.hasse_ok
    if stats.classification is Classification.SUPERSINGULAR:
        assert stats.order in supersingular_orders(p, curve.ctx.n)
    return stats


@st.composite
def curve_point_pairs(draw):
    ctx = FieldCtx.create(*draw(st.sampled_from([(3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)])))
    curve = random_curve(ctx, draw(st.integers(0, 2 ** 32 - 1)))
    points = affine_points(curve)
    assume(len(points) >= 2)
    i = draw(st.integers(0, len(points) - 1))
    j = draw(st.integers(0, len(points) - 1))
    return curve, points[i], points[j]


class TestPoints:
    """Projective points and the curve equation."""

    def test_identity_on_every_curve(self, supersingular_gf2, ordinary_gf2):
        """(0 : 1 : 0) satisfies every Weierstrass equation."""
        for curve in (supersingular_gf2, ordinary_gf2):
            assert on_curve(curve, ProjectivePoint.infinity(curve.ctx))

    def test_on_curve_examples(self, supersingular_gf2, gf2):
        """(0, 1) lies on y^2 + y = x^3; (1, 0) does not."""
        assert on_curve(supersingular_gf2, ProjectivePoint.affine(gf2.zero, gf2.one))
        assert not on_curve(supersingular_gf2, ProjectivePoint.affine(gf2.one, gf2.zero))

    def test_normalization(self, gf5):
        """Scaling a point gives the same representation."""
        P = ProjectivePoint.create(gf5.element(2), gf5.element(4), gf5.element(2))
        Q = ProjectivePoint.create(gf5.element(1), gf5.element(2), gf5.element(1))
        assert P == Q
        assert P.Z.is_one()

    def test_zero_vector_rejected(self, gf5):
        """(0 : 0 : 0) is not a point."""
        with pytest.raises(ValueError):
            ProjectivePoint.create(gf5.zero, gf5.zero, gf5.zero)

    def test_chart_coordinates(self, gf5):
        """(t, -1, s) round-trips through the chart."""
        P = ProjectivePoint.from_chart(gf5.element(2), gf5.element(3))
        assert P.chart() == (gf5.element(2), gf5.element(3))

    def test_no_chart_when_y_vanishes(self, supersingular_gf2, gf2):
        """(0, 0) has Y = 0."""
        with pytest.raises(HypothesisFailed):
            ProjectivePoint.affine(gf2.zero, gf2.zero).chart()


class TestNegation:
    """Chart negation and its projective fallback."""

    def test_fallback_at_t_zero(self, supersingular_gf2, gf2):
        """(0, 1) has t = 0; the projective formula gives (0, 0)."""
        P = ProjectivePoint.affine(gf2.zero, gf2.one)
        with pytest.raises(HypothesisFailed):
            chart_neg(supersingular_gf2, P)
        assert negate(supersingular_gf2, P) == ProjectivePoint.affine(gf2.zero, gf2.zero)

    def test_infinity_is_its_own_negative(self, ordinary_gf2):
        """-O = O."""
        O = ProjectivePoint.infinity(ordinary_gf2.ctx)
        assert negate(ordinary_gf2, O) == O

    @settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
    @given(data=curve_point_pairs())
    def test_chart_negation_agrees_with_symmetry(self, data):
        """Where the chart formula applies it equals (x, -y - a1 x - a3)."""
        curve, P, _ = data
        try:
            chart = chart_neg(curve, P)
        except HypothesisFailed:
            assume(False)
        expected = ProjectivePoint.affine(P.X, -P.Y - curve.a1 * P.X - curve.a3)
        assert chart == expected
        assert on_curve(curve, chart)


class TestChartAddition:
    """The chord formula in (t, s) coordinates."""

    @settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
    @given(data=curve_point_pairs())
    def test_chart_addition_property(self, data):
        """
        Property 1: Chart Addition Matches The Chord Construction

        For chart points with distinct t and distinct x, chart_add is the chord sum.
        """
        curve, P1, P2 = data
        assume(P1.X != P2.X)
        try:
            total = chart_add(curve, P1, P2)
        except HypothesisFailed:
            assume(False)
        assert on_curve(curve, total)
        assert total == chord_sum(curve, P1, P2)
        assert total == chart_add(curve, P2, P1)

    def test_equal_t_rejected(self, gf5):
        """Chart addition needs t1 != t2."""
        curve = WeierstrassCurve.from_coefficients(gf5, [0, 0, 0, 1, 1])
        P = ProjectivePoint.affine(gf5.zero, gf5.one)
        with pytest.raises(HypothesisFailed):
            chart_add(curve, P, P)

    @pytest.mark.parametrize("pn", [(2, 1), (3, 1), (5, 1), (2, 2)])
    def test_series_sum_is_the_formal_group_law(self, pn):
        """The chart sum of t1 = tau and t2 = tau + tau^2 is F(t1, t2)."""
        curve = random_curve(FieldCtx.create(*pn), 11)
        prec = 10
        t = tau(curve.ctx, prec)
        t1, t2 = t, t + t ** 2
        chart = chart_add_series(curve, t1, t2)
        law = group_law(curve, prec)
        assert chart == law.F.compose(t1, t2).truncate(chart.prec)
        assert chart.prec >= 7


class TestCounting:
    """Brute-force |E(K)|."""

    def test_supersingular_gf2(self, supersingular_gf2):
        """y^2 + y = x^3 has O, (0, 0) and (0, 1)."""
        assert count_points(supersingular_gf2) == 3
        assert len(affine_points(supersingular_gf2)) == 2

    def test_ordinary_gf2(self, ordinary_gf2):
        """y^2 + xy = x^3 + x^2 + 1 has O and (0, 1)."""
        assert count_points(ordinary_gf2) == 2

    def test_supersingular_gf4(self, gf4):
        """y^2 + y = x^3 over GF(4) has 9 points."""
        curve = WeierstrassCurve.from_coefficients(gf4, [0, 0, 1, 0, 0])
        assert count_points(curve) == 9

    def test_threads_agree(self, gf9):
        """Splitting the x-range across workers does not change the count."""
        curve = random_curve(gf9, 5)
        assert count_points(curve, threads=4) == count_points(curve, threads=1)

    def test_count_bound(self, gf9):
        """The field order, not q^2, is held against enumeration_bound."""
        curve = random_curve(gf9, 1)
        with pytest.raises(BoundExceeded):
            count_points(curve, EngineConfig(enumeration_bound=8))
        assert count_points(curve, EngineConfig(enumeration_bound=9)) == count_points(curve)

    def test_count_beyond_square_bound(self):
        """GF(2^11): q^2 is above 2^20 but q is not, so counting goes ahead."""
        ctx = FieldCtx.create(2, 11)
        assert ctx.order ** 2 > EngineConfig().enumeration_bound
        # odd degree: y^2 + y = x^3 keeps trace 0
        supersingular = WeierstrassCurve.from_coefficients(ctx, [0, 0, 1, 0, 0])
        assert count_points(supersingular, threads=4) == ctx.order + 1

        ordinary = WeierstrassCurve.from_coefficients(ctx, [1, 0, 0, 0, 1])
        order = count_points(ordinary, threads=4)
        trace = ctx.order + 1 - order
        assert trace * trace <= 4 * ctx.order
        assert trace % 2 == trace_mod_p(ordinary).to_int()

    def test_random_point_is_on_curve(self, gf9):
        """random_point draws from the affine points."""
        curve = random_curve(gf9, 2)
        rng = np.random.default_rng(1998)
        for _ in range(5):
            assert on_curve(curve, random_point(curve, rng))

    def test_affine_points_sorted_and_distinct(self, gf5):
        """Every listed point is on the curve, with no repeats."""
        curve = random_curve(gf5, 8)
        points = affine_points(curve)
        assert len(set(points)) == len(points)
        assert all(on_curve(curve, P) for P in points)
        assert len(points) + 1 == count_points(curve)


class TestClassification:
    """Height, trace mod p and the ordinary/supersingular split."""

    def test_supersingular_gf2(self, supersingular_gf2):
        """Order 3, trace 0, height 2."""
        stats = curve_stats(supersingular_gf2)
        assert (stats.order, stats.trace, stats.height) == (3, 0, 2)
        assert stats.classification is Classification.SUPERSINGULAR
        assert classify(supersingular_gf2) == (Classification.SUPERSINGULAR, 2)

    def test_ordinary_gf2(self, ordinary_gf2):
        """Order 2, trace 1, height 1."""
        stats = curve_stats(ordinary_gf2)
        assert (stats.order, stats.trace, stats.height) == (2, 1, 1)
        assert stats.classification is Classification.ORDINARY
        assert trace_mod_p(ordinary_gf2).is_one()

    def test_precision_floor(self, ordinary_gf2):
        """Deciding height 2 needs the tau^(p^2) coefficient of [p]."""
        with pytest.raises(InsufficientPrecision):
            curve_height(ordinary_gf2, prec=5)

    def test_trace_residue_is_prime_field_element(self, gf4):
        """trace_mod_p lands in GF(p) even over GF(p^n)."""
        assert trace_mod_p(random_curve(gf4, 4)).ctx.n == 1

    def test_supersingular_orders(self):
        """GF(2): {1, 3, 5}; GF(5): {6}; GF(4): q + 1 + m sqrt(q) for |m| <= 2."""
        assert supersingular_orders(2, 1) == {1, 3, 5}
        assert supersingular_orders(5, 1) == {6}
        assert supersingular_orders(2, 2) == {1, 3, 5, 7, 9}

    @pytest.mark.parametrize("pn", [(2, 1), (3, 1)])
    def test_trace_sweep(self, pn):
        """
        Property 2: Trace Mod p Agrees With The Point Count

        Every curve over the field: residue, classification, Hasse and the allowed orders.
        """
        for curve in iter_curves(FieldCtx.create(*pn)):
            check_curve_stats(curve)

    def test_trace_sample_gf4(self, gf4):
        """Forty seeded curves over GF(4)."""
        rng = np.random.default_rng(1998)
        for _ in range(40):
            check_curve_stats(random_curve(gf4, rng))

    def test_supersingular_gf7(self):
        """y^2 = x^3 + x over GF(7) has q + 1 = 8 points and trace 0."""
        curve = WeierstrassCurve.from_coefficients(FieldCtx.create(7), [0, 0, 0, 1, 0])
        assert count_points(curve) == 8
        assert trace_mod_p(curve).is_zero()
        assert classify(curve) == (Classification.SUPERSINGULAR, 2)

    def test_supersingular_iff_order_eight_gf7(self):
        """Over GF(7) the only supersingular order is 8, and every residue matches the count."""
        gf7 = FieldCtx.create(7)
        assert supersingular_orders(7, 1) == {8}
        rng = np.random.default_rng(7)
        for _ in range(40):
            curve = random_curve(gf7, rng)
            stats = curve_stats(curve)
            supersingular = stats.classification is Classification.SUPERSINGULAR
            assert supersingular == (stats.order == 8), f"{curve}: {stats}"
            assert stats.trace_mod_p == (8 - stats.order) % 7

    @pytest.mark.slow
    @pytest.mark.parametrize("pn", [(2, 2), (5, 1), (2, 3), (3, 2)])
    def test_trace_sweep_slow(self, pn):
        """Every curve over GF(4), GF(5), GF(8) and GF(9)."""
        counts = {Classification.ORDINARY: 0, Classification.SUPERSINGULAR: 0}
        for curve in iter_curves(FieldCtx.create(*pn)):
            counts[check_curve_stats(curve).classification] += 1
        assert counts[Classification.ORDINARY] > 0
        assert counts[Classification.SUPERSINGULAR] > 0

    def test_curve_sweep_bound(self, gf9):
        """Enumerating all curves needs q^5 within the bound."""
        with pytest.raises(BoundExceeded):
            next(iter_curves(gf9, EngineConfig(enumeration_bound=1000)))
