"""Tests for truncated power series in one to three variables.

Property 1: Ring Laws Within Precision
Property 2: Reciprocal Inverts Units
Property 3: Composition Is Associative
"""

import pytest
from hypothesis import given, settings, strategies as st

from src.core.errors import ArityMismatch, CtxMismatch, NonUnit, NonzeroConstantTerm, PrecisionExceeded
from src.core.galois_field import FieldCtx, find_extension
from src.core.power_series import TruncSeries, tau, variables
from src.core.types import INFINITY


FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]


@st.composite
def univariate(draw, unit: bool = False, positive_order: bool = False, ctx: FieldCtx = None):
    if ctx is None:
        ctx = FieldCtx.create(*draw(st.sampled_from(FIELDS)))
    prec = draw(st.integers(1, 10))
    codes = draw(st.lists(st.integers(0, ctx.order - 1), min_size=prec, max_size=prec))
    values = [ctx.from_int(c) for c in codes]
    if unit:
        values[0] = values[0] if not values[0].is_zero() else ctx.one
    if positive_order:
        values[0] = ctx.zero
    return TruncSeries.from_coefficients(ctx, values, prec)


@st.composite
def univariate_pair(draw):
    ctx = FieldCtx.create(*draw(st.sampled_from(FIELDS)))
    return draw(univariate(ctx=ctx)), draw(univariate(ctx=ctx)), draw(univariate(ctx=ctx))


class TestConstruction:
    """Building series and reading coefficients."""

    def test_from_terms_drops_high_degrees(self, gf5):
        """Terms at or above prec are discarded."""
        f = TruncSeries.from_terms(gf5, 2, 3, {(1, 1): 2, (2, 1): 1})
        assert f.coeff((1, 1)) == 2
        assert list(f.terms()) == [((1, 1), gf5.element(2))]

    def test_coefficient_beyond_precision(self, gf5):
        """Asking for a coefficient at or above prec is an error."""
        with pytest.raises(PrecisionExceeded):
            tau(gf5, 4).coeff(4)

    def test_arity_checked(self, gf5):
        """Exponent tuples must match the number of variables."""
        with pytest.raises(ArityMismatch):
            TruncSeries.zero(gf5, 2, 3).coeff(1)
        with pytest.raises(ArityMismatch):
            TruncSeries.zero(gf5, 4, 3)

    def test_order(self, gf5):
        """order() is the lowest nonzero degree, INFINITY for zero."""
        t = tau(gf5, 6)
        assert (t ** 3 + t ** 4).order() == 3
        assert TruncSeries.zero(gf5, 1, 6).order() is INFINITY

    def test_str(self, gf5):
        """Printing lists terms in graded order then the precision."""
        X, Y = variables(gf5, 2, 3)
        assert str(X + 2 * X * Y) == "X + 2XY + O(3)"

    def test_immutable(self, gf5):
        """Series cannot be mutated."""
        with pytest.raises(AttributeError):
            tau(gf5, 3).prec = 4


class TestArithmetic:
    """Ring operations and precision propagation."""

    def test_precision_is_minimum(self, gf5):
        """Sums and products carry the smaller precision."""
        assert (tau(gf5, 3) + tau(gf5, 7)).prec == 3
        assert (tau(gf5, 3) * tau(gf5, 7)).prec == 3

    def test_geometric_series(self, gf5):
        """1 / (1 - tau) = 1 + tau + tau^2 + ..."""
        t = tau(gf5, 8)
        inverse = (1 - t).recip()
        assert inverse.coefficients() == [gf5.one] * 8

    def test_recip_of_non_unit(self, gf5):
        """A series with zero constant term has no reciprocal."""
        with pytest.raises(NonUnit):
            tau(gf5, 4).recip()

    def test_order_shifted_division(self, gf5):
        """(tau^2 + tau^3) / tau = tau + tau^2 with precision one lower."""
        t = tau(gf5, 6)
        quotient = (t ** 2 + t ** 3) / t
        assert quotient == (t + t ** 2).truncate(5)

    def test_mixed_fields_rejected(self, gf5, gf4):
        """Series over different fields do not combine."""
        with pytest.raises(CtxMismatch):
            tau(gf5, 3) + tau(gf4, 3)

    def test_frobenius_in_characteristic_p(self, gf4):
        """(f(tau))^2 equals f^(2)(tau^2) in characteristic 2."""
        g = gf4.gen
        t = tau(gf4, 9)
        f = t + g * t ** 2
        assert f ** 2 == f.frobenius().compose(t ** 2)

    @settings(max_examples=100, deadline=None)
    @given(data=univariate_pair())
    def test_ring_laws_property(self, data):
        """
        Property 1: Ring Laws Within Precision

        Multiplication commutes and distributes over addition.
        """
        f, g, h = data
        assert f * g == g * f
        assert f * (g + h) == f * g + f * h
        assert (f - g) + g == f.truncate(min(f.prec, g.prec))

    @settings(max_examples=100, deadline=None)
    @given(f=univariate(unit=True))
    def test_recip_property(self, f):
        """
        Property 2: Reciprocal Inverts Units

        f * (1/f) = 1 at the precision of f.
        """
        assert f * f.recip() == TruncSeries.one(f.ctx, 1, f.prec)


class TestComposition:
    """Substitution of series into series."""

    def test_nonzero_constant_term_rejected(self, gf5):
        """Substituted series must have zero constant term."""
        with pytest.raises(NonzeroConstantTerm):
            tau(gf5, 4).compose(1 + tau(gf5, 4))

    def test_bivariate_substitution(self, gf5):
        """(X + Y)(tau, tau) = 2 tau."""
        X, Y = variables(gf5, 2, 5)
        t = tau(gf5, 5)
        assert (X + Y).compose(t, t) == 2 * t

    @settings(max_examples=50, deadline=None)
    @given(data=st.data())
    def test_associativity_property(self, data):
        """
        Property 3: Composition Is Associative

        f(g(h)) = (f(g))(h) for h, g of positive order.
        """
        ctx = FieldCtx.create(*data.draw(st.sampled_from(FIELDS)))
        f = data.draw(univariate(ctx=ctx))
        g = data.draw(univariate(ctx=ctx, positive_order=True))
        h = data.draw(univariate(ctx=ctx, positive_order=True))
        left = f.compose(g.compose(h))
        right = f.compose(g).compose(h)
        common = min(left.prec, right.prec)
        assert left.truncate(common) == right.truncate(common)


class TestStructuralOperations:
    """Derivatives, lifting, inflation and embeddings."""

    def test_derivative(self, gf5):
        """d/dtau tau^3 = 3 tau^2, and the precision drops by one."""
        t = tau(gf5, 6)
        d = (t ** 3).derivative()
        assert d.prec == 5
        assert d.coeff(2) == 3

    def test_derivative_vanishes_on_p_powers(self, gf5):
        """d/dtau tau^5 = 0 in characteristic 5."""
        assert (tau(gf5, 8) ** 5).derivative().is_zero()

    def test_lift_and_swap(self, gf5):
        """Lifting with a permuted mapping swaps the variables."""
        X, Y = variables(gf5, 2, 4)
        f = X + 2 * X * X * Y
        assert f.lift(2, [1, 0]) == Y + 2 * Y * Y * X

    def test_inflate_deflate(self, gf5):
        """deflate undoes inflate."""
        t = tau(gf5, 4)
        f = t + 2 * t ** 3
        inflated = f.inflate(5)
        assert inflated.prec == 20
        assert inflated.coeff(15) == 2
        assert inflated.deflate(5) == f

    def test_deflate_rejects_stray_exponents(self, gf5):
        """Deflation needs every exponent to be a multiple of the step."""
        t = tau(gf5, 8)
        with pytest.raises(ValueError):
            (t ** 2 + t ** 3).deflate(2)

    def test_map_coefficients(self, gf2):
        """Embedding coefficients into an extension keeps the shape."""
        big, embedding = find_extension(gf2, 2)
        t = tau(gf2, 5)
        mapped = (t + t ** 3).map_coefficients(embedding)
        assert mapped.ctx == big
        assert mapped == tau(big, 5) + tau(big, 5) ** 3

    def test_first_difference(self, gf5):
        """first_difference names the first monomial where two series differ."""
        X, Y = variables(gf5, 2, 4)
        assert (X + X * Y).first_difference(X + 2 * X * Y) == (1, 1)
        assert X.first_difference(X) is None
