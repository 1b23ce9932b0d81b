"""
Formal group laws: additive, multiplicative and the law of a Weierstrass
curve, with the axiom verifier, negation and multiplication-by-n series.

The curve law is built in the bivariate truncated ring around the origin
chart (t, s) = (-X/Y, -Z/Y): the chord through two points of the s-expansion
meets the curve in a third point whose negation gives F(t1, t2).
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from .config import DEFAULT_CONFIG, EngineConfig
from .errors import (
    CtxMismatch,
    FormulaMismatch,
    InsufficientPrecision,
    NotAFormalGroupLaw,
    SingularCurve,
)
from .galois_field import Embedding, FieldCtx, FieldElement
from .power_series import TruncSeries, layout, tau, variables
from .types import Axiom, LawKind


logger = logging.getLogger(__name__)

Coefficient = Union[int, Sequence[int], FieldElement]


@dataclass(frozen=True)
class WeierstrassCurve:
    """Y^2 Z + a1 XYZ + a3 YZ^2 = X^3 + a2 X^2 Z + a4 XZ^2 + a6 Z^3, nonsingular."""
    ctx: FieldCtx
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    def __post_init__(self):
        for a in self.coefficients:
            if a.ctx != self.ctx:
                raise CtxMismatch(f"Curve coefficient {a} is not in {self.ctx}")
        if self.discriminant.is_zero():
            raise SingularCurve(f"Singular curve {self}: discriminant is zero")

    @classmethod
    def from_coefficients(cls, ctx: FieldCtx, values: Sequence[Coefficient]) -> "WeierstrassCurve":
        """Curve from [a1, a2, a3, a4, a6]."""
        if len(values) != 5:
            raise ValueError(f"Expected 5 coefficients a1, a2, a3, a4, a6, got {len(values)}")
        return cls(ctx, *(ctx.element(v) for v in values))

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # Standard invariants; the discriminant formula holds in every characteristic.

    @cached_property
    def b2(self) -> FieldElement:
        return self.a1 * self.a1 + 4 * self.a2

    @cached_property
    def b4(self) -> FieldElement:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> FieldElement:
        return self.a3 * self.a3 + 4 * self.a6

    @cached_property
    def b8(self) -> FieldElement:
        a1, a2, a3, a4, a6 = self.coefficients
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @cached_property
    def discriminant(self) -> FieldElement:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def evaluate(self, X, Y, Z):
        """W(X, Y, Z); works on field elements and on series alike."""
        a1, a2, a3, a4, a6 = self.coefficients
        return (
            Y * Y * Z + a1 * X * Y * Z + a3 * Y * Z * Z
            - (X * X * X + a2 * X * X * Z + a4 * X * Z * Z + a6 * Z * Z * Z)
        )

    def twist(self, k: int = 1) -> "WeierstrassCurve":
        """Curve with every a_i raised to the p^k-th power."""
        return WeierstrassCurve(self.ctx, *(a.frobenius(k) for a in self.coefficients))

    def map(self, embedding: Embedding) -> "WeierstrassCurve":
        return WeierstrassCurve(embedding.target, *(embedding(a) for a in self.coefficients))

    def __str__(self) -> str:
        names = ("a1", "a2", "a3", "a4", "a6")
        coeffs = ", ".join(f"{n}={a}" for n, a in zip(names, self.coefficients))
        return f"E[{coeffs}] over {self.ctx}"


@dataclass(frozen=True)
class Provenance:
    """Where a law came from: a named law, a curve, or a twist of another law."""
    kind: LawKind
    curve: Optional[WeierstrassCurve] = None
    base: Optional["Provenance"] = None
    twists: int = 0

    def effective_curve(self) -> Optional[WeierstrassCurve]:
        """The curve whose law this is, following twists."""
        if self.kind is LawKind.CURVE:
            return self.curve
        if self.kind is LawKind.TWIST and self.base is not None:
            curve = self.base.effective_curve()
            return curve.twist(self.twists) if curve is not None else None
        return None

    def twisted(self, k: int) -> "Provenance":
        if self.kind is LawKind.TWIST:
            return replace(self, twists=self.twists + k)
        return Provenance(LawKind.TWIST, base=self, twists=k)

    def mapped(self, embedding: Embedding) -> "Provenance":
        return Provenance(
            self.kind,
            self.curve.map(embedding) if self.curve is not None else None,
            self.base.mapped(embedding) if self.base is not None else None,
            self.twists,
        )

    def describe(self) -> str:
        if self.kind is LawKind.CURVE:
            return f"curve {self.curve}"
        if self.kind is LawKind.TWIST:
            return f"twist^{self.twists} of {self.base.describe()}"
        return self.kind.value


def _identity_violation(F: TruncSeries) -> Optional[tuple[int, ...]]:
    """First monomial of F(X,0) - X or F(0,Y) - Y that is nonzero."""
    lay = F.layout
    exps = lay.exps
    on_axis = (exps[:, 0] == 0) | (exps[:, 1] == 0)
    expected = np.zeros_like(F.coeffs)
    for unit in ((1, 0), (0, 1)):
        if F.prec > 1:
            expected[lay.index(unit), 0] = 1
    bad = on_axis & (F.coeffs != expected).any(axis=1)
    rows = np.nonzero(bad)[0]
    if not rows.size:
        return None
    return tuple(int(e) for e in exps[rows[0]])


def _swap(F: TruncSeries) -> TruncSeries:
    return F.lift(2, [1, 0])


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    """Bivariate series F = X + Y + XY G(X, Y), known below total degree prec."""
    F: TruncSeries
    provenance: Provenance = field(default_factory=lambda: Provenance(LawKind.SERIES))
    axiom_checked: Optional[int] = None

    def __post_init__(self):
        if self.F.nvars != 2:
            raise NotAFormalGroupLaw(f"A formal group law is bivariate, got {self.F.nvars} variables")
        bad = _identity_violation(self.F)
        if bad is not None:
            raise NotAFormalGroupLaw(f"F(X,0) = X or F(0,Y) = Y fails at monomial {bad}")
        bad = self.F.first_difference(_swap(self.F))
        if bad is not None:
            raise NotAFormalGroupLaw(f"F(X,Y) = F(Y,X) fails at monomial {bad}")

    @property
    def ctx(self) -> FieldCtx:
        return self.F.ctx

    @property
    def prec(self) -> int:
        return self.F.prec

    @property
    def p(self) -> int:
        return self.F.ctx.p

    def add(self, g: TruncSeries, h: TruncSeries) -> TruncSeries:
        """g (+)_F h = F(g, h)."""
        return self.F.compose(g, h)

    def truncate(self, prec: int) -> "FormalGroupLaw":
        checked = None if self.axiom_checked is None else min(self.axiom_checked, prec)
        return FormalGroupLaw(self.F.truncate(prec), self.provenance, checked)

    def map(self, embedding: Embedding) -> "FormalGroupLaw":
        return FormalGroupLaw(
            self.F.map_coefficients(embedding),
            self.provenance.mapped(embedding),
            self.axiom_checked,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalGroupLaw):
            return NotImplemented
        return self.F == other.F

    def __hash__(self) -> int:
        return hash(self.F)

    def __str__(self) -> str:
        return f"FormalGroupLaw({self.provenance.describe()}, prec {self.prec})"


# Constructions

def additive_law(ctx: FieldCtx, prec: int) -> FormalGroupLaw:
    X, Y = variables(ctx, 2, prec)
    return FormalGroupLaw(X + Y, Provenance(LawKind.ADDITIVE))


def multiplicative_law(ctx: FieldCtx, prec: int) -> FormalGroupLaw:
    X, Y = variables(ctx, 2, prec)
    return FormalGroupLaw(X + Y + X * Y, Provenance(LawKind.MULTIPLICATIVE))


def s_expansion(curve: WeierstrassCurve, prec: int) -> TruncSeries:
    """S(tau) with W(tau, -1, S) = 0: s_3 = 1 and the recursion for n >= 4."""
    if prec < 4:
        raise ValueError(f"s-expansion needs precision >= 4, got {prec}")
    ctx = curve.ctx
    a1, a2, a3, a4, a6 = curve.coefficients
    zero = ctx.zero
    s = [zero, zero, zero, ctx.one]
    square = [zero] * max(prec, 4)     # square[n] = sum_{i+j=n} s_i s_j

    # s_i = 0 for i < 3, so square[n] only needs s_3 .. s_(n-3)
    for n in range(4, prec):
        square[n] = sum((s[i] * s[n - i] for i in range(3, n - 2)), zero)
        cube = sum((s[i] * square[n - i] for i in range(3, n - 5)), zero)
        s.append(
            a1 * s[n - 1] + a2 * s[n - 2] + a3 * square[n] + a4 * square[n - 1] + a6 * cube
        )
    return TruncSeries.from_coefficients(ctx, s[:prec], prec)


def s_coordinate(curve: WeierstrassCurve, f: TruncSeries) -> TruncSeries:
    """The unique g of positive order with W(f, -1, g) = 0, by fixed-point iteration."""
    if f.nvars != 1 or not f.has_zero_constant_term():
        raise ValueError("s_coordinate needs a univariate series of positive order")
    a1, a2, a3, a4, a6 = curve.coefficients
    f2 = f * f
    f3 = f2 * f
    g = TruncSeries.zero(f.ctx, 1, f.prec)
    for _ in range(f.prec + 1):
        g2 = g * g
        nxt = f3 + a1 * f * g + a2 * f2 * g + a3 * g2 + a4 * f * g2 + a6 * g2 * g
        if nxt == g:
            break
        g = nxt
    return g


def group_law(curve: WeierstrassCurve, prec: int) -> FormalGroupLaw:
    """Formal group law of the curve to total degree prec."""
    if prec < 2:
        raise ValueError(f"Group law needs precision >= 2, got {prec}")
    ctx = curve.ctx
    a1, a2, a3, a4, a6 = curve.coefficients
    S = s_expansion(curve, max(prec + 1, 4))
    X, Y = variables(ctx, 2, prec)

    # slope m = sum_i s_i (X^(i-1) + X^(i-2) Y + ... + Y^(i-1)): coefficient at (a, b) is s_(a+b+1)
    s_coeffs = S.coeffs
    lay = layout(2, prec)
    m = TruncSeries(ctx, 2, prec, s_coeffs[lay.degrees + 1])
    SX = S.truncate(prec).lift(2, [0])
    b = SX - m * X

    m2 = m * m
    A = 1 + a2 * m + a4 * m2 + a6 * m2 * m
    mb = m * b
    numerator = a1 * m + a2 * b + a3 * m2 + 2 * a4 * mb + 3 * a6 * m2 * b
    t3 = -X - Y - numerator * A.recip()
    s3 = m * t3 + b
    F = -t3 * (1 - a1 * t3 - a3 * s3).recip()
    logger.debug(f"Built group law of {curve} to precision {prec}")
    return FormalGroupLaw(F, Provenance(LawKind.CURVE, curve=curve))


def twist_law(law: FormalGroupLaw, k: int = 1) -> FormalGroupLaw:
    """F^(p^k): every coefficient raised to the p^k-th power."""
    return FormalGroupLaw(law.F.frobenius(k), law.provenance.twisted(k), law.axiom_checked)


# Axioms

@dataclass(frozen=True)
class AxiomReport:
    identity_ok: bool
    commutative_ok: bool
    associative_ok: bool
    checked_to: int
    failing_axiom: Optional[Axiom] = None
    failing_monomial: Optional[tuple[int, ...]] = None

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.commutative_ok and self.associative_ok


def verify_axioms(law: Union[FormalGroupLaw, TruncSeries], prec: int) -> AxiomReport:
    """Check identity, commutativity and associativity to total degree prec."""
    F = law.F if isinstance(law, FormalGroupLaw) else law
    if F.nvars != 2:
        raise NotAFormalGroupLaw(f"Axioms concern bivariate series, got {F.nvars} variables")
    if F.prec < prec:
        raise InsufficientPrecision(f"Law known to precision {F.prec}, axioms requested to {prec}")
    F = F.truncate(prec)

    failures: list[tuple[Axiom, tuple[int, ...]]] = []
    identity_bad = _identity_violation(F)
    if identity_bad is not None:
        failures.append((Axiom.IDENTITY, identity_bad))

    commutative_bad = F.first_difference(_swap(F))
    if commutative_bad is not None:
        failures.append((Axiom.COMMUTATIVITY, commutative_bad))

    if not F.has_zero_constant_term():
        associative_bad = (0, 0, 0)
    else:
        X, Y, Z = variables(F.ctx, 3, prec)
        left = F.compose(F.lift(3, [0, 1]), Z)
        right = F.compose(X, F.lift(3, [1, 2]))
        associative_bad = left.first_difference(right)
    if associative_bad is not None:
        failures.append((Axiom.ASSOCIATIVITY, associative_bad))

    failing_axiom, failing_monomial = failures[0] if failures else (None, None)
    return AxiomReport(
        identity_ok=identity_bad is None,
        commutative_ok=commutative_bad is None,
        associative_ok=associative_bad is None,
        checked_to=prec,
        failing_axiom=failing_axiom,
        failing_monomial=failing_monomial,
    )


def mark_verified(law: FormalGroupLaw, report: AxiomReport) -> FormalGroupLaw:
    if not report.ok:
        return law
    return replace(law, axiom_checked=report.checked_to)


# Negation and multiplication by n

def generic_negation(law: FormalGroupLaw) -> TruncSeries:
    """Solve F(tau, iota) = 0 degree by degree, starting from iota = -tau."""
    t = tau(law.ctx, law.prec)
    iota = -t
    for _ in range(law.prec):
        residual = law.add(t, iota)
        term = residual.first_term()
        if term is None:
            break
        (k,), c = term
        # dF/dY = 1 + O(tau), so subtracting c tau^k clears degree k
        iota = iota - TruncSeries.monomial(law.ctx, 1, law.prec, (k,), c)
    return iota


def curve_negation(curve: WeierstrassCurve, prec: int) -> TruncSeries:
    """Closed form -tau / (1 - a1 tau - a3 S(tau))."""
    t = tau(curve.ctx, prec)
    S = s_expansion(curve, max(prec, 4)).truncate(prec)
    return -t * (1 - curve.a1 * t - curve.a3 * S).recip()


def negation_series(law: FormalGroupLaw, config: Optional[EngineConfig] = None) -> TruncSeries:
    """iota with F(tau, iota(tau)) = 0; closed form for curve laws."""
    config = config or DEFAULT_CONFIG
    curve = law.provenance.effective_curve()
    if curve is None:
        return generic_negation(law)
    closed = curve_negation(curve, law.prec)
    if config.cross_check:
        generic = generic_negation(law)
        if generic != closed:
            raise FormulaMismatch(
                f"Closed-form negation differs from induction at τ^{closed.first_difference(generic)}"
            )
    return closed


def mult_by_n(law: FormalGroupLaw, n: int, config: Optional[EngineConfig] = None) -> TruncSeries:
    """[n]_F by [k+1] = F([k], tau); negative n via iota o [-n]."""
    t = tau(law.ctx, law.prec)
    result = TruncSeries.zero(law.ctx, 1, law.prec)
    for _ in range(abs(n)):
        result = law.add(result, t)
    if n < 0:
        result = negation_series(law, config).compose(result)
    return result
