"""
Coefficient relations for homomorphisms between formal group laws of equal
height, their solution tree, and certification of solutions.

Let [p]_F = V(tau^q) and [p]_F' = V'(tau^q) with q = p^h, and let v1, v1'
be the first coefficients of V, V'. For a homomorphism U = sum u_i tau^i:

  * at an index i that is not a power of p, u_i is forced by u_1..u_(i-1):
    it is read off the tau^i part of U(F(X,Y)) - F'(U(X),U(Y)) computed
    with u_i = 0;
  * at i = p^k, u_i is a root of v1' x^q - v1^i x + M_i, where M_i is the
    sigma^i coefficient of V'(U^(q)(sigma)) - U(V(sigma)) with u_i = 0.

Relations are never materialized as polynomials; they are evaluated as
residuals and the dependence on u_i is read off analytically.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .config import DEFAULT_CONFIG, EngineConfig
from .errors import (
    BoundExceeded,
    BudgetExceeded,
    CtxMismatch,
    HeightMismatch,
    HeightNotOne,
    InsufficientPrecision,
    NoBranchSurvives,
    NoUnitBinomial,
    RelationInconsistent,
)
from .formal_group import FormalGroupLaw, mult_by_n
from .galois_field import Embedding, FieldCtx, FieldElement, find_extension, linear_solutions
from .homomorphism import FglHom, check_hom, series_height
from .power_series import TruncSeries
from .types import INFINITY


logger = logging.getLogger(__name__)


def is_p_power(i: int, p: int) -> bool:
    if i < 1:
        return False
    while i % p == 0:
        i //= p
    return i == 1


def largest_p_power(bound: int, p: int) -> int:
    power = 1
    while power * p <= bound:
        power *= p
    return power


def branching_indices(bound: int, p: int) -> list[int]:
    """Powers of p up to bound: 1, p, p^2, ..."""
    out = []
    power = 1
    while power <= bound:
        out.append(power)
        power *= p
    return out


def unit_binomial(i: int, p: int) -> int:
    """Least m >= 1 with C(i, m) a unit mod p."""
    for m in range(1, i):
        if comb(i, m) % p:
            return m
    raise NoUnitBinomial(f"No unit binomial coefficient C({i}, m) mod {p}; {i} is a power of {p}")


def required_precision(degree: int, p: int, q: int) -> int:
    """Law precision needed to solve for u_1 .. u_degree."""
    if degree < 1:
        return 2
    return max(degree + 1, q * largest_p_power(degree, p) + 1)


@dataclass(frozen=True)
class RelationCtx:
    """Everything the relations need for a pair of laws of equal height."""
    source: FormalGroupLaw
    target: FormalGroupLaw
    height: int
    V: TruncSeries
    V_target: TruncSeries

    @classmethod
    def create(
        cls,
        source: FormalGroupLaw,
        target: FormalGroupLaw,
        config: Optional[EngineConfig] = None,
    ) -> "RelationCtx":
        if source.ctx != target.ctx:
            raise CtxMismatch(f"Laws over {source.ctx} and {target.ctx}")
        p = source.p
        mult_source = mult_by_n(source, p, config)
        mult_target = mult_by_n(target, p, config)
        h = series_height(mult_source, p)
        h_target = series_height(mult_target, p)
        if h != h_target:
            raise HeightMismatch(f"Source height {h} differs from target height {h_target}")
        if h is INFINITY:
            raise HeightMismatch("Relations need laws of finite height")
        q = p ** h
        V = mult_source.deflate(q)
        V_target = mult_target.deflate(q)
        logger.debug(f"Relation context: height {h}, q = {q}, V known to σ^{V.prec - 1}")
        return cls(source, target, h, V, V_target)

    @property
    def field(self) -> FieldCtx:
        return self.source.ctx

    @property
    def p(self) -> int:
        return self.source.p

    @property
    def q(self) -> int:
        return self.p ** self.height

    @property
    def v1(self) -> FieldElement:
        return self.V.coeff(1)

    @property
    def v1_target(self) -> FieldElement:
        return self.V_target.coeff(1)

    @property
    def prec(self) -> int:
        return min(self.source.prec, self.target.prec)

    @property
    def max_degree(self) -> int:
        """Largest bound the available precision supports."""
        degree = 0
        while required_precision(degree + 1, self.p, self.q) <= self.prec:
            degree += 1
        return degree

    def require(self, degree: int) -> None:
        needed = required_precision(degree, self.p, self.q)
        if needed > self.prec:
            raise InsufficientPrecision(
                f"Solving to degree {degree} needs law precision {needed}, have {self.prec}"
            )

    def extend(self, embedding: Embedding) -> "RelationCtx":
        """The same context with coefficients pushed into a larger field."""
        if embedding.is_identity:
            return self
        if embedding.source != self.field:
            raise CtxMismatch(f"Embedding from {embedding.source} applied to context over {self.field}")
        return RelationCtx(
            self.source.map(embedding),
            self.target.map(embedding),
            self.height,
            self.V.map_coefficients(embedding),
            self.V_target.map_coefficients(embedding),
        )


@dataclass(frozen=True)
class PartialSolution:
    """Coefficients u_1 .. u_(i-1) satisfying every relation up to i - 1."""
    field: FieldCtx
    coeffs: tuple[FieldElement, ...] = ()

    @property
    def next_index(self) -> int:
        return len(self.coeffs) + 1

    def series(self, prec: Optional[int] = None) -> TruncSeries:
        """sum u_j tau^j with prec defaulting to next_index (so u_next = 0)."""
        prec = self.next_index if prec is None else prec
        values = [self.field.zero] + list(self.coeffs)
        return TruncSeries.from_coefficients(self.field, values[:prec], prec)

    def extended(self, value: FieldElement) -> "PartialSolution":
        return PartialSolution(self.field, self.coeffs + (value,))

    def vanishes_below(self, index: int) -> bool:
        return all(c.is_zero() for c in self.coeffs[:index - 1])

    def sort_key(self) -> tuple:
        return tuple(c.rep for c in self.coeffs)

    def map(self, embedding: Embedding) -> "PartialSolution":
        return PartialSolution(embedding.target, tuple(embedding(c) for c in self.coeffs))


def _defect(ctx: RelationCtx, U: TruncSeries, prec: int) -> TruncSeries:
    """U(F(X,Y)) - F'(U(X), U(Y)) to total degree prec."""
    F = ctx.source.truncate(prec)
    G = ctx.target.truncate(prec)
    U = U.truncate(prec)
    return U.compose(F.F) - G.add(U.lift(2, [0]), U.lift(2, [1]))


def _frobenius_defect(ctx: RelationCtx, U: TruncSeries, prec: int) -> TruncSeries:
    """V'(U^(q)(sigma)) - U(V(sigma)) to sigma-degree prec."""
    if ctx.V.prec < prec or ctx.V_target.prec < prec:
        raise InsufficientPrecision(
            f"[p] known to σ^{min(ctx.V.prec, ctx.V_target.prec) - 1}, need σ^{prec - 1}"
        )
    U = U.truncate(prec)
    Uq = U.frobenius(ctx.height)
    return ctx.V_target.truncate(prec).compose(Uq) - U.compose(ctx.V.truncate(prec))


def next_coeff_generic(ctx: RelationCtx, partial: PartialSolution, i: int) -> FieldElement:
    """The forced coefficient u_i at an index that is not a power of p."""
    if is_p_power(i, ctx.p):
        raise NoUnitBinomial(f"Index {i} is a power of {ctx.p}")
    if partial.next_index != i:
        raise ValueError(f"Partial solution covers u_1..u_{partial.next_index - 1}, asked for u_{i}")
    ctx.require(i)
    m = unit_binomial(i, ctx.p)
    D = _defect(ctx, partial.series(i + 1), i + 1)
    u = -D.coeff((i - m, m)) / comb(i, m)

    # u_i enters the degree-i part as u_i ((X+Y)^i - X^i - Y^i); every term must now vanish
    for j in range(i + 1):
        shift = comb(i, j) * u if 0 < j < i else ctx.field.zero
        if not (D.coeff((i - j, j)) + shift).is_zero():
            raise RelationInconsistent(f"Relation at index {i} leaves a residual at X^{i - j}Y^{j}")
    return u


def next_coeff_ppower(ctx: RelationCtx, partial: PartialSolution, i: int) -> list[FieldElement]:
    """All roots of v1' x^q - v1^i x + M_i in the context's field, sorted."""
    if not is_p_power(i, ctx.p):
        raise ValueError(f"Index {i} is not a power of {ctx.p}")
    if partial.next_index != i:
        raise ValueError(f"Partial solution covers u_1..u_{partial.next_index - 1}, asked for u_{i}")
    ctx.require(i)
    M = _frobenius_defect(ctx, partial.series(i + 1), i + 1).coeff(i)
    v1_power = ctx.v1 ** i
    slope = ctx.v1_target

    def linearized(x: FieldElement) -> FieldElement:
        return slope * x.frobenius(ctx.height) - v1_power * x

    return linear_solutions(ctx.field, linearized, -M)


@dataclass(frozen=True)
class StepDeficit:
    """A p-power step that found fewer than q roots."""
    index: int
    prefix: tuple[FieldElement, ...]
    roots: int


@dataclass
class EnumerationResult:
    bound: int
    field: FieldCtx
    embedding: Embedding
    solutions: list[PartialSolution]
    expected: int
    short_steps: list[StepDeficit] = field(default_factory=list)

    @property
    def splitting_deficit(self) -> int:
        return self.expected - len(self.solutions)

    @property
    def solve_degree(self) -> int:
        return self.field.n // self.embedding.source.n


def _explore(
    ctx: RelationCtx,
    partial: PartialSolution,
    bound: int,
    budget: int,
    solutions: list,
    short: list,
) -> None:
    stack = [partial]
    while stack:
        node = stack.pop()
        i = node.next_index
        if i > bound:
            solutions.append(node)
            if len(solutions) > budget:
                raise BudgetExceeded(f"More than {budget} solutions")
            continue
        if is_p_power(i, ctx.p):
            roots = next_coeff_ppower(ctx, node, i)
            if len(roots) < ctx.q:
                short.append(StepDeficit(i, node.coeffs, len(roots)))
            # reversed so the smallest root is explored first
            stack.extend(node.extended(r) for r in reversed(roots))
        else:
            stack.append(node.extended(next_coeff_generic(ctx, node, i)))


def enumerate_truncations(
    ctx: RelationCtx,
    bound: int,
    embedding: Optional[Embedding] = None,
    config: Optional[EngineConfig] = None,
    threads: Optional[int] = None,
) -> EnumerationResult:
    """Every solution (u_1 .. u_bound) with coefficients in the solve field."""
    config = config or DEFAULT_CONFIG
    embedding = embedding or Embedding.identity(ctx.field)
    threads = threads or config.threads
    expected = ctx.q ** len(branching_indices(bound, ctx.p))
    if expected > config.solution_budget:
        raise BudgetExceeded(f"{expected} solutions expected, budget is {config.solution_budget}")
    ctx.require(bound)
    working = ctx.extend(embedding)
    root = PartialSolution(working.field)

    solutions: list[PartialSolution] = []
    short: list[StepDeficit] = []
    if bound < 1:
        solutions.append(root)
    elif threads > 1:
        # branch on u_1, the first p-power index
        first = next_coeff_ppower(working, root, 1)
        if len(first) < working.q:
            short.append(StepDeficit(1, (), len(first)))

        def run(value: FieldElement):
            found, deficits = [], []
            _explore(working, root.extended(value), bound, config.solution_budget, found, deficits)
            return found, deficits

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for found, deficits in pool.map(run, first):
                solutions.extend(found)
                short.extend(deficits)
        if len(solutions) > config.solution_budget:
            raise BudgetExceeded(f"More than {config.solution_budget} solutions")
    else:
        _explore(working, root, bound, config.solution_budget, solutions, short)

    solutions.sort(key=PartialSolution.sort_key)
    short.sort(key=lambda s: (s.index, tuple(c.rep for c in s.prefix)))
    logger.debug(
        f"Enumerated {len(solutions)}/{expected} solutions to bound {bound} over {working.field}"
    )
    return EnumerationResult(bound, working.field, embedding, solutions, expected, short)


def _grow(base: FieldCtx, degree: int, config: EngineConfig) -> tuple[FieldCtx, Embedding]:
    if degree > config.max_solve_degree:
        raise BudgetExceeded(f"Solve field degree {degree} exceeds budget {config.max_solve_degree}")
    try:
        return find_extension(base, degree, config)
    except BoundExceeded as exc:
        raise BudgetExceeded(f"Solve field of degree {degree} is too large: {exc}") from exc


def solve_with_growth(
    ctx: RelationCtx,
    bound: int,
    start_degree: int = 1,
    config: Optional[EngineConfig] = None,
    threads: Optional[int] = None,
) -> EnumerationResult:
    """Enumerate over GF(p^(n*m)) for m = start, 2*start, 3*start, ... until every step splits."""
    config = config or DEFAULT_CONFIG
    start_degree = max(start_degree, 1)
    multiple = 1
    while True:
        degree = start_degree * multiple
        _, embedding = _grow(ctx.field, degree, config)
        result = enumerate_truncations(ctx, bound, embedding, config, threads)
        if result.splitting_deficit == 0:
            return result
        logger.info(
            f"Solve degree {degree}: {len(result.solutions)}/{result.expected} solutions, growing"
        )
        multiple += 1


def relation_residuals(
    ctx: RelationCtx,
    coeffs: Sequence[FieldElement],
    upto: Optional[int] = None,
) -> list[tuple[int, FieldElement]]:
    """(i, residual of relation i) for i = 1 .. upto at the given coefficients.

    For a generic index the residual is the first nonzero coefficient of the
    degree-i part of U(F) - F'(U, U); for a p-power index it is
    v1' u_i^q - v1^i u_i + M_i.
    """
    upto = len(coeffs) if upto is None else min(upto, len(coeffs))
    ctx.require(upto)
    field_ctx = ctx.field
    U = TruncSeries.from_coefficients(field_ctx, [field_ctx.zero] + list(coeffs[:upto]), upto + 1)
    D = _defect(ctx, U, upto + 1)
    E = _frobenius_defect(ctx, U, largest_p_power(upto, ctx.p) + 1) if upto else None

    residuals = []
    for i in range(1, upto + 1):
        if is_p_power(i, ctx.p):
            residuals.append((i, E.coeff(i)))
        else:
            value = field_ctx.zero
            for j in range(i + 1):
                c = D.coeff((i - j, j))
                if not c.is_zero():
                    value = c
                    break
            residuals.append((i, value))
    return residuals


def certify_solution(
    ctx: RelationCtx,
    solution: PartialSolution,
    extend_to: int,
    config: Optional[EngineConfig] = None,
) -> FglHom:
    """Extend a solution to u_1 .. u_extend_to and check it is a homomorphism.

    The identity is checked at every degree p^j and at the end; a p-power
    step without roots grows the field and retries.
    """
    config = config or DEFAULT_CONFIG
    if solution.field != ctx.field:
        raise CtxMismatch(f"Solution over {solution.field}, context over {ctx.field}")
    ctx.require(extend_to)

    working, current = ctx, solution
    base_field = ctx.field
    multiple = 1
    while True:
        starved = [False]
        found = _certify_branch(working, current, extend_to, starved)
        if found is not None:
            hom = FglHom.build(working.source, working.target, found.series(extend_to + 1))
            logger.debug(f"Certified solution to degree {extend_to} over {working.field}")
            return hom
        if not starved[0]:
            raise NoBranchSurvives(f"No extension of the solution to degree {extend_to} is a homomorphism")
        multiple += 1
        _, embedding = _grow(base_field, multiple, config)
        working = ctx.extend(embedding)
        current = solution.map(embedding)
        logger.info(f"Certification grew the field to {working.field}")


def _certify_branch(
    ctx: RelationCtx,
    partial: PartialSolution,
    extend_to: int,
    starved: list,
) -> Optional[PartialSolution]:
    i = partial.next_index
    if i > 1 and (is_p_power(i, ctx.p) or i > extend_to):
        if not check_hom(partial.series(i), ctx.source, ctx.target, i).ok:
            return None
    if i > extend_to:
        return partial
    if is_p_power(i, ctx.p):
        roots = next_coeff_ppower(ctx, partial, i)
        if not roots:
            starved[0] = True
        for root in roots:
            found = _certify_branch(ctx, partial.extended(root), extend_to, starved)
            if found is not None:
                return found
        return None
    return _certify_branch(ctx, partial.extended(next_coeff_generic(ctx, partial, i)), extend_to, starved)


def rationality_filter(
    ctx: RelationCtx,
    result: EnumerationResult,
    k: int,
    strict: bool = False,
) -> list[PartialSolution]:
    """Solutions vanishing below tau^(p^k) whose coefficients lie in the base field.

    Returned over the base field. With strict set, a vanishing solution
    outside the base field raises.
    """
    if ctx.height != 1:
        raise HeightNotOne(f"Rationality holds for height 1, context has height {ctx.height}")
    threshold = ctx.p ** k
    kept = []
    for solution in result.solutions:
        if not solution.vanishes_below(threshold):
            continue
        preimages = [result.embedding.preimage(c) for c in solution.coeffs]
        if any(c is None for c in preimages):
            if strict:
                raise RelationInconsistent(
                    f"Solution vanishing below τ^{threshold} has coefficients outside {ctx.field}"
                )
            continue
        kept.append(PartialSolution(ctx.field, tuple(preimages)))
    return kept
