"""
Homomorphisms of formal group laws.

A homomorphism F -> F' is a series U of positive order with
U(F(X,Y)) = F'(U(X), U(Y)). This module checks that identity, builds the
standard homomorphisms ([n], Frobenius powers, isogeny expansions), adds
and composes them, and computes heights.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Mapping, Optional, Sequence

from .config import EngineConfig
from .errors import (
    CtxMismatch,
    InsufficientPrecision,
    LawMismatch,
    NotAHomomorphism,
    OriginNotFixed,
)
from .formal_group import (
    FormalGroupLaw,
    WeierstrassCurve,
    group_law,
    mult_by_n,
    negation_series,
    s_expansion,
    twist_law,
)
from .galois_field import FieldCtx, FieldElement
from .power_series import TruncSeries, tau
from .types import INFINITY


logger = logging.getLogger(__name__)


def _valuation(value: int, p: int) -> int:
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k


def series_height(U: TruncSeries, p: int):
    """Largest h with U a series in tau^(p^h); INFINITY for the zero series."""
    if U.nvars != 1:
        raise ValueError("Height is defined for univariate series")
    exponents = [e[0] for e, _ in U.terms()]
    if not exponents:
        if U.prec < p * p + 1:
            raise InsufficientPrecision(
                f"Zero to precision {U.prec}; need {p * p + 1} to tell height >= 2 from zero"
            )
        return INFINITY
    g = 0
    for e in exponents:
        g = gcd(g, e)
    return _valuation(g, p)


def law_height(law: FormalGroupLaw, config: Optional[EngineConfig] = None):
    """Height of [p]_F."""
    return series_height(mult_by_n(law, law.p, config), law.p)


@dataclass(frozen=True)
class HomCheck:
    ok: bool
    checked_to: int
    failing_monomial: Optional[tuple[int, ...]] = None


def hom_precision(U: TruncSeries, source: FormalGroupLaw, target: FormalGroupLaw) -> int:
    """Total degree below which both sides of the homomorphism identity are known."""
    order = U.order()
    right = U.prec if order is INFINITY else min(U.prec, target.prec * order)
    return min(source.prec, U.prec, right)


def check_hom(
    U: TruncSeries,
    source: FormalGroupLaw,
    target: FormalGroupLaw,
    prec: Optional[int] = None,
) -> HomCheck:
    """Compare U(F(X,Y)) with F'(U(X), U(Y)) to total degree prec."""
    if U.nvars != 1:
        raise ValueError("A homomorphism is a univariate series")
    if not (U.ctx == source.ctx == target.ctx):
        raise CtxMismatch(f"Series over {U.ctx}, laws over {source.ctx} and {target.ctx}")
    available = hom_precision(U, source, target)
    prec = available if prec is None else prec
    if prec > available:
        raise InsufficientPrecision(f"Identity known to degree {available}, check requested to {prec}")

    left = U.compose(source.F)
    right = target.add(U.lift(2, [0]), U.lift(2, [1]))
    bad = left.truncate(prec).first_difference(right.truncate(prec))
    return HomCheck(ok=bad is None, checked_to=prec, failing_monomial=bad)


@dataclass(frozen=True, eq=False)
class FglHom:
    """Homomorphism source -> target given by U, checked to degree checked_to."""
    source: FormalGroupLaw
    target: FormalGroupLaw
    U: TruncSeries
    checked_to: Optional[int] = None

    def __post_init__(self):
        if self.U.nvars != 1:
            raise ValueError("A homomorphism is a univariate series")
        if not self.U.has_zero_constant_term():
            raise ValueError("A homomorphism has zero constant term")
        if not (self.U.ctx == self.source.ctx == self.target.ctx):
            raise CtxMismatch("Homomorphism series and laws must share a field")

    @classmethod
    def build(
        cls,
        source: FormalGroupLaw,
        target: FormalGroupLaw,
        U: TruncSeries,
        check: bool = True,
        prec: Optional[int] = None,
    ) -> "FglHom":
        """Wrap U, verifying the identity unless check is False."""
        if not check:
            return cls(source, target, U, None)
        result = check_hom(U, source, target, prec)
        if not result.ok:
            raise NotAHomomorphism(
                f"U(F(X,Y)) != F'(U(X),U(Y)) at monomial {result.failing_monomial}"
            )
        return cls(source, target, U, result.checked_to)

    @property
    def ctx(self) -> FieldCtx:
        return self.U.ctx

    @property
    def prec(self) -> int:
        return self.U.prec

    @cached_property
    def height(self):
        return series_height(self.U, self.ctx.p)

    @property
    def separable(self) -> bool:
        return self.U.prec > 1 and not self.U.coeff(1).is_zero()

    def coefficients(self) -> list[FieldElement]:
        return self.U.coefficients()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FglHom):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.U == other.U

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.U))


def hom_height(hom: FglHom):
    return hom.height


# Standard homomorphisms

def identity_hom(law: FormalGroupLaw) -> FglHom:
    return FglHom(law, law, tau(law.ctx, law.prec), law.prec)


def mult_hom(law: FormalGroupLaw, n: int, config: Optional[EngineConfig] = None) -> FglHom:
    """[n]_F as an endomorphism."""
    return FglHom.build(law, law, mult_by_n(law, n, config))


def negation_hom(law: FormalGroupLaw, config: Optional[EngineConfig] = None) -> FglHom:
    return FglHom.build(law, law, negation_series(law, config))


def frobenius_hom(law: FormalGroupLaw, k: int = 1) -> FglHom:
    """tau^(p^k): F -> F^(p^k)."""
    power = law.p ** k
    U = TruncSeries.monomial(law.ctx, 1, law.prec, (power,))
    return FglHom.build(law, twist_law(law, k), U)


# Structure of Hom

def hom_add(first: FglHom, second: FglHom) -> FglHom:
    """U1 (+)_F' U2 = F'(U1, U2)."""
    if first.source != second.source or first.target != second.target:
        raise LawMismatch("Sum of homomorphisms with different source or target")
    return FglHom.build(first.source, first.target, first.target.add(first.U, second.U))


def hom_neg(hom: FglHom, config: Optional[EngineConfig] = None) -> FglHom:
    """iota' o U."""
    return FglHom.build(hom.source, hom.target, negation_series(hom.target, config).compose(hom.U))


def hom_compose(outer: FglHom, inner: FglHom) -> FglHom:
    """outer o inner: F -> F'' for inner: F -> F', outer: F' -> F''."""
    if inner.target != outer.source:
        raise LawMismatch("Composition requires the inner target to be the outer source")
    return FglHom.build(inner.source, outer.target, outer.U.compose(inner.U))


def v_factor(hom: FglHom) -> FglHom:
    """V: F^(p^k) -> F' with U = V(tau^(p^k)), k the height of U."""
    k = hom.height
    if k is INFINITY:
        raise InsufficientPrecision("The zero homomorphism has no V-factor")
    V = hom.U.deflate(hom.ctx.p ** k)
    source = twist_law(hom.source, k)
    factor = FglHom.build(source, hom.target, V)
    logger.debug(f"V-factor of height-{k} homomorphism: first coefficient {V.first_term()}")
    return factor


# Isogenies

@dataclass(frozen=True)
class HomogeneousPoly:
    """Homogeneous polynomial in X, Y, Z as {(i, j, k): coefficient}."""
    ctx: FieldCtx
    terms: tuple[tuple[tuple[int, int, int], FieldElement], ...]

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: Mapping[tuple[int, int, int], object]) -> "HomogeneousPoly":
        cleaned = {}
        for exps, value in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != 3 or min(exps) < 0:
                raise ValueError(f"Bad exponent {exps}: expected three nonnegative integers")
            c = cleaned.get(exps, ctx.zero) + ctx.element(value)
            cleaned[exps] = c
        kept = tuple(sorted((e, c) for e, c in cleaned.items() if not c.is_zero()))
        degrees = {sum(e) for e, _ in kept}
        if len(degrees) > 1:
            raise ValueError(f"Polynomial is not homogeneous: degrees {sorted(degrees)}")
        return cls(ctx, kept)

    @classmethod
    def monomial(cls, ctx: FieldCtx, exps: tuple[int, int, int]) -> "HomogeneousPoly":
        return cls.from_terms(ctx, {exps: 1})

    @property
    def degree(self) -> Optional[int]:
        return sum(self.terms[0][0]) if self.terms else None

    def evaluate(self, X, Y, Z):
        """Value at a point; arguments may be field elements or series."""
        total = None
        for (i, j, k), c in self.terms:
            term = c * (X ** i) * (Y ** j) * (Z ** k)
            total = term if total is None else total + term
        return total if total is not None else self.ctx.zero

    def at_origin(self) -> FieldElement:
        """Value at (0, 1, 0): the coefficient of Y^d."""
        for exps, c in self.terms:
            if exps[0] == 0 and exps[2] == 0:
                return c
        return self.ctx.zero

    def evaluate_chart(self, S: TruncSeries) -> TruncSeries:
        """P(tau, -1, S(tau))."""
        t = tau(S.ctx, S.prec)
        total = TruncSeries.zero(S.ctx, 1, S.prec)
        t_powers: dict[int, TruncSeries] = {}
        s_powers: dict[int, TruncSeries] = {}
        for (i, j, k), c in self.terms:
            if i not in t_powers:
                t_powers[i] = t ** i
            if k not in s_powers:
                s_powers[k] = S ** k
            sign = -1 if j % 2 else 1
            total = total + (sign * c) * t_powers[i] * s_powers[k]
        return total


def isogeny_to_hom(
    f: Sequence[HomogeneousPoly],
    source: WeierstrassCurve,
    target: WeierstrassCurve,
    prec: int,
    source_law: Optional[FormalGroupLaw] = None,
    target_law: Optional[FormalGroupLaw] = None,
) -> FglHom:
    """Expand (f1 : f2 : f3): E -> E' into the series U with t' = U(t).

    In the chart (t, -1, s) the image point is (f1 : f2 : f3) with f2 a unit,
    so t' = -f1/f2 and s' = -f3/f2 after rescaling the middle coordinate to -1.
    """
    f1, f2, f3 = f
    if not (source.ctx == target.ctx == f1.ctx == f2.ctx == f3.ctx):
        raise CtxMismatch("Isogeny polynomials and curves must share a field")
    if len({p.degree for p in f if p.degree is not None}) > 1:
        raise NotAHomomorphism("Isogeny polynomials must have equal degree")
    if f2.at_origin().is_zero() or not f1.at_origin().is_zero() or not f3.at_origin().is_zero():
        raise OriginNotFixed("Isogeny must map (0,1,0) to (0,1,0)")

    S = s_expansion(source, max(prec, 4)).truncate(prec)
    denominator = f2.evaluate_chart(S)
    U = -(f1.evaluate_chart(S) / denominator)
    s_image = -(f3.evaluate_chart(S) / denominator)

    if U.is_zero():
        on_target = s_image.is_zero()
    else:
        expected = s_expansion(target, max(prec, 4)).truncate(prec).compose(U)
        common = min(expected.prec, s_image.prec)
        on_target = expected.truncate(common) == s_image.truncate(common)
    if not on_target:
        raise NotAHomomorphism("Triple does not map the curve chart into the target curve")

    source_law = source_law or group_law(source, prec)
    target_law = target_law or group_law(target, prec)
    hom = FglHom.build(source_law, target_law, U)
    logger.debug(f"Isogeny expanded to precision {prec}: separable={hom.separable}")
    return hom
