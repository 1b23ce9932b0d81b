"""Shared fixtures: small fields and the two curves over GF(2) used throughout."""

import pytest

from src.core.formal_group import WeierstrassCurve
from src.core.galois_field import FieldCtx


@pytest.fixture
def gf2() -> FieldCtx:
    return FieldCtx.create(2)


@pytest.fixture
def gf4() -> FieldCtx:
    return FieldCtx.create(2, 2)


@pytest.fixture
def gf5() -> FieldCtx:
    return FieldCtx.create(5)


@pytest.fixture
def gf9() -> FieldCtx:
    return FieldCtx.create(3, 2)


@pytest.fixture
def supersingular_gf2(gf2) -> WeierstrassCurve:
    """y^2 + y = x^3: three points, trace 0."""
    return WeierstrassCurve.from_coefficients(gf2, [0, 0, 1, 0, 0])


@pytest.fixture
def ordinary_gf2(gf2) -> WeierstrassCurve:
    """y^2 + xy = x^3 + x^2 + 1: two points, trace 1."""
    return WeierstrassCurve.from_coefficients(gf2, [1, 1, 0, 0, 1])
