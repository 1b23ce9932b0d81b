"""
Points of a Weierstrass curve over GF(p^n): chart addition and negation,
brute-force point counting, and classification through the formal group.

Chart points are written (t, -1, s), i.e. t = -X/Y and s = -Z/Y. The chart
formulas need t1 != t2 and a nonzero cubic A(m) = 1 + a2 m + a4 m^2 + a6 m^3;
outside those hypotheses they raise HypothesisFailed. Only negation has a
projective fallback: -(X : Y : Z) = (X : -Y - a1 X - a3 Z : Z).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Optional, Union

import numpy as np

from .config import DEFAULT_CONFIG, EngineConfig, default_precision
from .errors import (
    BoundExceeded,
    ClassificationMismatch,
    HeightOutOfRange,
    HypothesisFailed,
    InsufficientPrecision,
    SingularCurve,
)
from .formal_group import FormalGroupLaw, WeierstrassCurve, group_law, mult_by_n, s_expansion
from .galois_field import FieldCtx, FieldElement
from .homomorphism import series_height
from .power_series import TruncSeries
from .types import Classification


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectivePoint:
    """(X : Y : Z) scaled so the first nonzero of Z, Y, X is 1."""
    X: FieldElement
    Y: FieldElement
    Z: FieldElement

    @classmethod
    def create(cls, X: FieldElement, Y: FieldElement, Z: FieldElement) -> "ProjectivePoint":
        for pivot in (Z, Y, X):
            if not pivot.is_zero():
                scale = pivot.inverse()
                return cls(X * scale, Y * scale, Z * scale)
        raise ValueError("(0 : 0 : 0) is not a projective point")

    @classmethod
    def infinity(cls, ctx: FieldCtx) -> "ProjectivePoint":
        return cls(ctx.zero, ctx.one, ctx.zero)

    @classmethod
    def affine(cls, x: FieldElement, y: FieldElement) -> "ProjectivePoint":
        return cls(x, y, x.ctx.one)

    @classmethod
    def from_chart(cls, t: FieldElement, s: FieldElement) -> "ProjectivePoint":
        return cls.create(t, -t.ctx.one, s)

    @property
    def ctx(self) -> FieldCtx:
        return self.X.ctx

    def is_infinity(self) -> bool:
        return self.Z.is_zero() and self.X.is_zero()

    def chart(self) -> tuple[FieldElement, FieldElement]:
        """(t, s) = (-X/Y, -Z/Y)."""
        if self.Y.is_zero():
            raise HypothesisFailed(f"{self} has Y = 0 and no chart coordinates")
        inv = -self.Y.inverse()
        return self.X * inv, self.Z * inv

    def __str__(self) -> str:
        return f"({self.X} : {self.Y} : {self.Z})"


def on_curve(curve: WeierstrassCurve, P: ProjectivePoint) -> bool:
    return curve.evaluate(P.X, P.Y, P.Z).is_zero()


def _slope_cubic(curve: WeierstrassCurve, m):
    return 1 + curve.a2 * m + curve.a4 * m * m + curve.a6 * m * m * m


def chart_neg(curve: WeierstrassCurve, P: ProjectivePoint) -> ProjectivePoint:
    """-(t, -1, s) = (-t/D, -1, -s/D) with D = 1 - a1 t - a3 s."""
    t, s = P.chart()
    if t.is_zero():
        raise HypothesisFailed("Chart negation needs t != 0")
    if _slope_cubic(curve, s / t).is_zero():
        raise HypothesisFailed(f"A(m) = 0 for m = {s / t}")
    D = 1 - curve.a1 * t - curve.a3 * s
    if D.is_zero():
        raise HypothesisFailed("1 - a1 t - a3 s = 0")
    return ProjectivePoint.from_chart(-t / D, -s / D)


def projective_neg(curve: WeierstrassCurve, P: ProjectivePoint) -> ProjectivePoint:
    return ProjectivePoint.create(P.X, -P.Y - curve.a1 * P.X - curve.a3 * P.Z, P.Z)


def negate(curve: WeierstrassCurve, P: ProjectivePoint) -> ProjectivePoint:
    """Chart negation where its hypotheses hold, the projective symmetry otherwise."""
    if P.is_infinity():
        return P
    try:
        return chart_neg(curve, P)
    except HypothesisFailed as exc:
        logger.debug(f"Chart negation of {P} unavailable ({exc}); using projective formula")
        return projective_neg(curve, P)


def _third_point(curve: WeierstrassCurve, t1, s1, t2, s2):
    """Third intersection (t3, s3) of the chord through two chart points."""
    m = (s1 - s2) / (t1 - t2)
    b = s1 - m * t1
    A = _slope_cubic(curve, m)
    if isinstance(A, FieldElement) and A.is_zero():
        raise HypothesisFailed(f"A(m) = 0 for m = {m}: third intersection is (1 : 0 : m)")
    a1, a2, a3, a4, a6 = curve.coefficients
    numerator = a1 * m + a2 * b + a3 * m * m + 2 * a4 * m * b + 3 * a6 * m * m * b
    t3 = -t1 - t2 - numerator / A
    return t3, m * t3 + b


def chart_add(curve: WeierstrassCurve, P1: ProjectivePoint, P2: ProjectivePoint) -> ProjectivePoint:
    """P1 + P2 = -(t3, -1, m t3 + b) for chart points with t1 != t2."""
    t1, s1 = P1.chart()
    t2, s2 = P2.chart()
    if t1 == t2:
        raise HypothesisFailed("Chart addition needs t1 != t2")
    t3, s3 = _third_point(curve, t1, s1, t2, s2)
    return negate(curve, ProjectivePoint.from_chart(t3, s3))


def chart_add_series(curve: WeierstrassCurve, t1: TruncSeries, t2: TruncSeries) -> TruncSeries:
    """t-coordinate of the chart sum with t1, t2 univariate series of positive order.

    Agrees with F(t1, t2) below the returned precision.
    """
    prec = min(t1.prec, t2.prec)
    S = s_expansion(curve, max(prec, 4)).truncate(prec)
    s1, s2 = S.compose(t1), S.compose(t2)
    t3, s3 = _third_point(curve, t1, s1, t2, s2)
    return -t3 / (1 - curve.a1 * t3 - curve.a3 * s3)


# Counting

def _check_count_bound(ctx: FieldCtx, config: EngineConfig) -> None:
    if ctx.order > config.enumeration_bound:
        raise BoundExceeded(
            f"Counting over {ctx} scans {ctx.order} x-coordinates, bound is {config.enumeration_bound}"
        )


def _affine_mask(curve: WeierstrassCurve, x: FieldElement, ys: np.ndarray, y_squares: np.ndarray) -> np.ndarray:
    """Boolean mask of the y in ys with W(x, y, 1) = 0."""
    ctx = curve.ctx
    linear = curve.a1 * x + curve.a3
    rhs = ((x + curve.a2) * x + curve.a4) * x + curve.a6
    values = (y_squares + ys @ ctx.mul_matrix(linear) - np.asarray(rhs.rep, dtype=np.int64)) % ctx.p
    return ~values.any(axis=1)


def _y_squares(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    ys = ctx.element_array
    return ys, np.einsum("ai,aj,ijk->ak", ys, ys, ctx.mul_tensor) % ctx.p


def affine_points(curve: WeierstrassCurve, config: Optional[EngineConfig] = None) -> list[ProjectivePoint]:
    """Every point with Z = 1, ordered by (x, y)."""
    config = config or DEFAULT_CONFIG
    ctx = curve.ctx
    _check_count_bound(ctx, config)
    ys, squares = _y_squares(ctx)
    points = []
    for row in ctx.element_array:
        x = FieldElement(ctx, tuple(int(c) for c in row))
        for y_row in ys[_affine_mask(curve, x, ys, squares)]:
            points.append(ProjectivePoint.affine(x, FieldElement(ctx, tuple(int(c) for c in y_row))))
    return points


def count_points(
    curve: WeierstrassCurve,
    config: Optional[EngineConfig] = None,
    threads: Optional[int] = None,
) -> int:
    """|E(K)|: the point at infinity plus the affine solutions."""
    config = config or DEFAULT_CONFIG
    threads = threads or config.threads
    ctx = curve.ctx
    _check_count_bound(ctx, config)
    ys, squares = _y_squares(ctx)
    xs = ctx.element_array

    def count_slice(rows: np.ndarray) -> int:
        total = 0
        for row in rows:
            x = FieldElement(ctx, tuple(int(c) for c in row))
            total += int(_affine_mask(curve, x, ys, squares).sum())
        return total

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            affine = sum(pool.map(count_slice, np.array_split(xs, threads)))
    else:
        affine = count_slice(xs)
    return affine + 1


# Classification through [p]

def _p_series(curve: WeierstrassCurve, prec: Optional[int], config: EngineConfig,
              law: Optional[FormalGroupLaw]) -> TruncSeries:
    p = curve.ctx.p
    prec = prec or default_precision(p)
    if prec < p * p + 2:
        raise InsufficientPrecision(f"Precision {prec} < p^2 + 2 = {p * p + 2}")
    law = law if law is not None else group_law(curve, prec)
    return mult_by_n(law.truncate(prec), p, config)


def curve_height(
    curve: WeierstrassCurve,
    prec: Optional[int] = None,
    config: Optional[EngineConfig] = None,
    law: Optional[FormalGroupLaw] = None,
) -> int:
    """Height of the formal group: 1 or 2."""
    config = config or DEFAULT_CONFIG
    h = series_height(_p_series(curve, prec, config, law), curve.ctx.p)
    if h not in (1, 2):
        raise HeightOutOfRange(f"Formal group of {curve} has height {h}")
    return h


def trace_mod_p(
    curve: WeierstrassCurve,
    prec: Optional[int] = None,
    config: Optional[EngineConfig] = None,
    law: Optional[FormalGroupLaw] = None,
) -> FieldElement:
    """Trace of Frobenius mod p, as an element of GF(p).

    Height 1: the norm to GF(p) of the tau^p coefficient of [p].
    Height 2: zero, since p divides the trace of a supersingular curve.
    """
    config = config or DEFAULT_CONFIG
    p = curve.ctx.p
    series = _p_series(curve, prec, config, law)
    h = series_height(series, p)
    if h == 1:
        return series.coeff(p).norm()
    if h == 2:
        return curve.ctx.prime_field.zero
    raise HeightOutOfRange(f"Formal group of {curve} has height {h}")


def classify(
    curve: WeierstrassCurve,
    prec: Optional[int] = None,
    config: Optional[EngineConfig] = None,
    law: Optional[FormalGroupLaw] = None,
    order: Optional[int] = None,
) -> tuple[Classification, int]:
    """(classification, height); checked against |E(K)| = 1 mod p when an order is known or cheap."""
    config = config or DEFAULT_CONFIG
    h = curve_height(curve, prec, config, law)
    classification = Classification.ORDINARY if h == 1 else Classification.SUPERSINGULAR

    if order is None and curve.ctx.order <= config.enumeration_bound:
        order = count_points(curve, config)
    if order is not None:
        supersingular = order % curve.ctx.p == 1
        if supersingular != (classification is Classification.SUPERSINGULAR):
            raise ClassificationMismatch(
                f"{curve}: height {h} but |E(K)| = {order} is {'' if supersingular else 'not '}1 mod p"
            )
    return classification, h


@dataclass(frozen=True)
class CurveStats:
    q: int
    order: int
    trace_mod_p: int
    classification: Classification
    height: int

    @property
    def trace(self) -> int:
        return self.q + 1 - self.order

    @property
    def hasse_ok(self) -> bool:
        return self.trace * self.trace <= 4 * self.q


def curve_stats(
    curve: WeierstrassCurve,
    prec: Optional[int] = None,
    config: Optional[EngineConfig] = None,
    threads: Optional[int] = None,
) -> CurveStats:
    config = config or DEFAULT_CONFIG
    prec = prec or default_precision(curve.ctx.p)
    law = group_law(curve, prec)
    order = count_points(curve, config, threads)
    classification, h = classify(curve, prec, config, law, order)
    residue = trace_mod_p(curve, prec, config, law)
    return CurveStats(curve.ctx.order, order, residue.rep[0], classification, h)


def supersingular_orders(p: int, n: int) -> set[int]:
    """Orders a supersingular curve over GF(p^n) can have."""
    q = p ** n
    if n % 2 == 0:
        root = isqrt(q)
        return {q + 1 + m * root for m in range(-2, 3)}
    if p >= 5:
        return {q + 1}
    root = isqrt(p * q)
    return {q + 1 - root, q + 1, q + 1 + root}


# Sweeps

def iter_curves(ctx: FieldCtx, config: Optional[EngineConfig] = None) -> Iterator[WeierstrassCurve]:
    """Every nonsingular (a1, a2, a3, a4, a6) over ctx, in enumeration order."""
    config = config or DEFAULT_CONFIG
    if ctx.order ** 5 > config.enumeration_bound:
        raise BoundExceeded(f"{ctx.order ** 5} coefficient tuples over {ctx}, bound is {config.enumeration_bound}")
    elements = [FieldElement(ctx, tuple(int(c) for c in row)) for row in ctx.element_array]
    for a1 in elements:
        for a2 in elements:
            for a3 in elements:
                for a4 in elements:
                    for a6 in elements:
                        try:
                            yield WeierstrassCurve(ctx, a1, a2, a3, a4, a6)
                        except SingularCurve:
                            continue


def random_element(ctx: FieldCtx, rng: np.random.Generator) -> FieldElement:
    return FieldElement(ctx, tuple(int(c) for c in rng.integers(0, ctx.p, size=ctx.n)))


def random_curve(ctx: FieldCtx, rng: Union[np.random.Generator, int]) -> WeierstrassCurve:
    """A uniformly drawn nonsingular curve."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    while True:
        try:
            return WeierstrassCurve(ctx, *(random_element(ctx, rng) for _ in range(5)))
        except SingularCurve:
            continue


def random_point(curve: WeierstrassCurve, rng: np.random.Generator,
                 config: Optional[EngineConfig] = None) -> ProjectivePoint:
    points = affine_points(curve, config)
    if not points:
        return ProjectivePoint.infinity(curve.ctx)
    return points[int(rng.integers(0, len(points)))]
