"""Tests for GF(p^n) arithmetic, Frobenius, norms and field embeddings.

Property 1: Field Axioms
Property 2: Frobenius Is A Field Automorphism
Property 3: Norm Lands In The Prime Field
"""

import pytest
from hypothesis import given, settings, strategies as st

from src.core.config import EngineConfig
from src.core.errors import BoundExceeded, CtxMismatch, DivisionByZero, InvalidField
from src.core.galois_field import (
    FieldCtx,
    enumerate_field,
    find_extension,
    iter_field,
    linear_solutions,
)


FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (7, 1), (13, 1)]

field_strategy = st.sampled_from(FIELDS).map(lambda pn: FieldCtx.create(*pn))


@st.composite
def field_with_elements(draw, count: int = 3):
    ctx = draw(field_strategy)
    codes = draw(st.lists(st.integers(0, ctx.order - 1), min_size=count, max_size=count))
    return ctx, [ctx.from_int(c) for c in codes]


class TestFieldConstruction:
    """Default moduli, validation and bounds."""

    def test_default_moduli(self):
        """The smallest irreducible is chosen: x^2+x+1 over GF(2), x^2+1 over GF(3)."""
        assert FieldCtx.create(2, 2).modulus == (1, 1, 1)
        assert FieldCtx.create(3, 2).modulus == (1, 0, 1)
        assert FieldCtx.create(2, 3).modulus == (1, 1, 0, 1)

    def test_reducible_modulus_rejected(self):
        """x^2 + 1 = (x + 1)^2 over GF(2) is not a field modulus."""
        with pytest.raises(InvalidField):
            FieldCtx.create(2, 2, [1, 0, 1])

    def test_composite_characteristic_rejected(self):
        """The characteristic must be prime."""
        with pytest.raises(InvalidField):
            FieldCtx.create(4)

    def test_prime_bound(self):
        """Characteristics above max_prime are refused."""
        with pytest.raises(BoundExceeded):
            FieldCtx.create(17)
        assert FieldCtx.create(17, config=EngineConfig(max_prime=17)).p == 17

    def test_field_order_bound(self):
        """GF(p^n) larger than max_field_order is refused."""
        with pytest.raises(BoundExceeded):
            FieldCtx.create(2, 8, config=EngineConfig(max_field_order=128))


class TestFieldArithmetic:
    """Worked small-field facts."""

    def test_characteristic_two(self, gf2):
        """1 + 1 = 0 in GF(2)."""
        assert gf2.one + gf2.one == gf2.zero

    def test_division_gf5(self, gf5):
        """2 / 3 = 4 in GF(5), since 3 * 4 = 12 = 2."""
        assert gf5.element(2) / gf5.element(3) == gf5.element(4)

    def test_generator_square_gf4(self, gf4):
        """g^2 = g + 1 in GF(2)[x]/(x^2+x+1)."""
        g = gf4.gen
        assert g * g == g + 1

    def test_division_by_zero(self, gf4):
        """Dividing by zero raises DivisionByZero, which is also a ZeroDivisionError."""
        with pytest.raises(DivisionByZero):
            gf4.one / gf4.zero
        with pytest.raises(ZeroDivisionError):
            gf4.zero.inverse()

    def test_cross_field_operations_rejected(self, gf4, gf9):
        """Elements of different fields do not combine."""
        with pytest.raises(CtxMismatch):
            gf4.gen + gf9.gen

    def test_negative_powers(self, gf9):
        """a^-1 is the inverse and a^(q-1) = 1."""
        a = gf9.gen + 1
        assert a ** -1 == a.inverse()
        assert (a ** 8).is_one()

    def test_int_coercion(self, gf5):
        """Integers act through the prime field."""
        assert gf5.element(7) == 2
        assert 3 * gf5.element(2) == gf5.one

    @settings(max_examples=100, deadline=None)
    @given(data=field_with_elements())
    def test_field_axioms_property(self, data):
        """
        Property 1: Field Axioms

        Distributivity and inverses hold for arbitrary elements.
        """
        ctx, (a, b, c) = data
        assert a * (b + c) == a * b + a * c
        assert (a - b) + b == a
        if not b.is_zero():
            assert (a / b) * b == a


class TestFrobenius:
    """The p-th power map."""

    def test_prime_field_fixed(self, gf2):
        """Frobenius fixes 1 in GF(2)."""
        assert gf2.one.frobenius() == gf2.one

    def test_gf4_generator(self, gf4):
        """g^2 = g + 1 in GF(4)."""
        assert gf4.gen.frobenius() == gf4.gen + 1

    def test_gf9_generator(self, gf9):
        """x^3 = -x when x^2 = -1."""
        x = gf9.gen
        assert x.frobenius() == -x

    def test_full_cycle_is_identity(self, gf9):
        """Frobenius applied n times is the identity on GF(p^n)."""
        for a in iter_field(gf9):
            assert a.frobenius().frobenius() == a
            assert a ** gf9.order == a

    @settings(max_examples=100, deadline=None)
    @given(data=field_with_elements(count=2))
    def test_frobenius_automorphism_property(self, data):
        """
        Property 2: Frobenius Is A Field Automorphism

        (a + b)^p = a^p + b^p and (ab)^p = a^p b^p.
        """
        ctx, (a, b) = data
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        assert a.frobenius() == a ** ctx.p


class TestNorm:
    """Norm to the prime field."""

    def test_prime_field_norm_is_identity(self, gf5):
        """On GF(p) the norm is the identity."""
        for a in iter_field(gf5):
            assert a.norm() == a

    def test_gf4_generator_norm(self, gf4):
        """N(g) = g^3 = 1."""
        assert gf4.gen.norm().is_one()

    def test_zero_and_one(self, gf9):
        """N(0) = 0 and N(1) = 1."""
        assert gf9.zero.norm().is_zero()
        assert gf9.one.norm().is_one()

    @settings(max_examples=100, deadline=None)
    @given(data=field_with_elements(count=2))
    def test_norm_multiplicative_property(self, data):
        """
        Property 3: Norm Lands In The Prime Field

        The norm is multiplicative and its value has degree one.
        """
        ctx, (a, b) = data
        assert (a * b).norm() == a.norm() * b.norm()
        assert a.norm().ctx.n == 1


class TestEnumeration:
    """Listing every element."""

    def test_small_fields(self, gf2):
        """GF(2) lists 0, 1 and GF(3) lists 0, 1, 2."""
        assert [a.to_int() for a in enumerate_field(gf2)] == [0, 1]
        gf3 = FieldCtx.create(3)
        assert [a.to_int() for a in enumerate_field(gf3)] == [0, 1, 2]

    def test_gf4_distinct(self, gf4):
        """Four distinct elements, zero first."""
        elements = enumerate_field(gf4)
        assert len(set(elements)) == 4
        assert elements[0].is_zero()

    def test_enumeration_bound(self, gf9):
        """Fields above enumeration_bound are not listed."""
        with pytest.raises(BoundExceeded):
            enumerate_field(gf9, EngineConfig(enumeration_bound=8))


class TestLinearSolutions:
    """GF(p)-linear equations over GF(p^n)."""

    def test_artin_schreier_roots(self, gf4):
        """x^2 + x = 1 has the two roots g, g + 1 in GF(4)."""
        roots = linear_solutions(gf4, lambda x: x.frobenius() + x, gf4.one)
        assert set(roots) == {gf4.gen, gf4.gen + 1}

    def test_no_solution(self, gf2):
        """x^2 + x = 1 has no root in GF(2)."""
        assert linear_solutions(gf2, lambda x: x.frobenius() + x, gf2.one) == []


class TestEmbeddings:
    """find_extension and embeddings."""

    def test_trivial_extension(self, gf4):
        """Degree 1 returns the field itself with the identity embedding."""
        big, embedding = find_extension(gf4, 1)
        assert big == gf4
        assert embedding.is_identity

    def test_embedding_is_a_homomorphism(self, gf4):
        """GF(4) -> GF(16) respects addition and multiplication."""
        big, embedding = find_extension(gf4, 2)
        assert big.order == 16
        for a in iter_field(gf4):
            for b in iter_field(gf4):
                assert embedding(a * b) == embedding(a) * embedding(b)
                assert embedding(a + b) == embedding(a) + embedding(b)

    def test_preimage(self, gf2):
        """Elements in the image pull back; the rest return None."""
        big, embedding = find_extension(gf2, 2)
        assert embedding.preimage(embedding(gf2.one)) == gf2.one
        assert embedding.preimage(big.gen) is None

    def test_composition(self, gf2):
        """GF(2) -> GF(4) -> GF(16) agrees on the prime field."""
        gf4, first = find_extension(gf2, 2)
        _, second = find_extension(gf4, 2)
        composite = first.then(second)
        assert composite(gf2.one).is_one()

    def test_subfield_membership(self, gf2):
        """The image of GF(4) in GF(16) is the subfield fixed by Frobenius^2."""
        gf4, _ = find_extension(gf2, 2)
        big, embedding = find_extension(gf4, 2)
        assert all(embedding(a).in_subfield(2) for a in iter_field(gf4))
        assert not big.gen.in_subfield(2)
