"""
Exact arithmetic in GF(p^n) for small p.

Elements are coefficient vectors over GF(p) in the polynomial basis
1, x, ..., x^(n-1) modulo a monic irreducible polynomial. Scalar arithmetic
goes through sympy's dense GF(p)[x] routines (big-endian lists); the
vectorized views (multiplication tensor, Frobenius matrix) feed the numpy
series kernels.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np
from sympy import isprime
from sympy.polys.domains import GF, ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_gcdex,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
    gf_strip,
    gf_sub,
)
from sympy.polys.matrices import DomainMatrix

from .config import DEFAULT_CONFIG, EngineConfig
from .errors import (
    BoundExceeded,
    CtxMismatch,
    DivisionByZero,
    InvalidField,
    NoIrreducibleFound,
)


logger = logging.getLogger(__name__)


def _to_gf(rep: Sequence[int]) -> list[int]:
    """Little-endian coefficient vector to a stripped big-endian list."""
    return gf_strip([int(c) for c in reversed(rep)])


def _from_gf(poly: Sequence[int], n: int, p: int) -> tuple[int, ...]:
    coeffs = [int(c) % p for c in reversed(poly)]
    coeffs += [0] * (n - len(coeffs))
    return tuple(coeffs[:n])


def _digits(code: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        code, r = divmod(code, p)
        out.append(r)
    return out


@lru_cache(maxsize=None)
def _is_irreducible(p: int, modulus: tuple[int, ...]) -> bool:
    """Exhaustive search for a monic factor of degree 1..n/2."""
    f = _to_gf(modulus)
    n = len(modulus) - 1
    for d in range(1, n // 2 + 1):
        for code in range(p ** d):
            g = _to_gf(_digits(code, p, d) + [1])
            if not gf_rem(f, g, p, ZZ):
                return False
    return True


@lru_cache(maxsize=None)
def _default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n, ordered by sum c_i p^i."""
    for code in range(p ** n):
        candidate = tuple(_digits(code, p, n) + [1])
        if _is_irreducible(p, candidate):
            logger.debug(f"Default modulus for GF({p}^{n}): {candidate}")
            return candidate
    raise NoIrreducibleFound(f"No irreducible polynomial of degree {n} over GF({p})")


def solve_mod_p(matrix: np.ndarray, rhs: Sequence[int], p: int):
    """Solve matrix @ x = rhs over GF(p).

    Returns:
        (particular, kernel) where particular is a list or None when the
        system is inconsistent, and kernel is a list of basis vectors.
    """
    rows, cols = matrix.shape
    K = GF(p)
    aug = [
        [K(int(v) % p) for v in matrix[r]] + [K(int(rhs[r]) % p)]
        for r in range(rows)
    ]
    reduced, pivots = DomainMatrix(aug, (rows, cols + 1), K).rref()
    reduced = reduced.to_Matrix()

    if cols in pivots:
        return None, []

    particular = [0] * cols
    for r, c in enumerate(pivots):
        particular[c] = int(reduced[r, cols]) % p

    kernel = []
    for free in (c for c in range(cols) if c not in pivots):
        vec = [0] * cols
        vec[free] = 1
        for r, c in enumerate(pivots):
            vec[c] = (-int(reduced[r, free])) % p
        kernel.append(vec)
    return particular, kernel


@dataclass(frozen=True)
class FieldCtx:
    """GF(p^n) = GF(p)[x] / (modulus).

    The modulus is stored little-endian with modulus[n] == 1.
    """
    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not isprime(self.p):
            raise InvalidField(f"Characteristic {self.p} is not prime")
        if self.n < 1:
            raise InvalidField(f"Extension degree must be >= 1, got {self.n}")
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise InvalidField(f"Modulus {list(self.modulus)} is not monic of degree {self.n}")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise InvalidField(f"Modulus coefficients must lie in [0, {self.p})")
        if not _is_irreducible(self.p, self.modulus):
            raise InvalidField(f"Modulus {list(self.modulus)} is reducible over GF({self.p})")

    @classmethod
    def create(
        cls,
        p: int,
        n: int = 1,
        modulus: Optional[Sequence[int]] = None,
        config: Optional[EngineConfig] = None,
    ) -> "FieldCtx":
        """Build a field, searching the default modulus when none is given."""
        config = config or DEFAULT_CONFIG
        if not isprime(p):
            raise InvalidField(f"Characteristic {p} is not prime")
        if p > config.max_prime:
            raise BoundExceeded(f"Characteristic {p} exceeds configured bound {config.max_prime}")
        if n < 1:
            raise InvalidField(f"Extension degree must be >= 1, got {n}")
        if p ** n > config.max_field_order:
            raise BoundExceeded(f"GF({p}^{n}) exceeds field order bound {config.max_field_order}")
        if modulus is None:
            modulus = _default_modulus(p, n)
        return cls(p, n, tuple(int(c) for c in modulus))

    @property
    def order(self) -> int:
        return self.p ** self.n

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    @cached_property
    def prime_field(self) -> "FieldCtx":
        if self.n == 1 and self.modulus == (0, 1):
            return self
        return FieldCtx(self.p, 1, (0, 1))

    @cached_property
    def gf_modulus(self) -> list[int]:
        return _to_gf(self.modulus)

    # Element construction

    def element(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        """Coerce an int (scalar multiple of 1), coefficient vector or element."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise CtxMismatch(f"Element of {value.ctx} used in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.n - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            if any(coeffs[self.n:]):
                raise InvalidField(f"Coefficient vector {list(value)} longer than degree {self.n}")
            coeffs = coeffs[:self.n]
        return FieldElement(self, tuple(coeffs + [0] * (self.n - len(coeffs))))

    def from_int(self, code: int) -> "FieldElement":
        """Element whose base-p digits (c0 least significant) are code."""
        return FieldElement(self, tuple(_digits(code, self.p, self.n)))

    @cached_property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.n)

    @cached_property
    def one(self) -> "FieldElement":
        return self.element(1)

    @cached_property
    def gen(self) -> "FieldElement":
        """Class of x."""
        if self.n == 1:
            return self.element(-self.modulus[0])
        return FieldElement(self, (0, 1) + (0,) * (self.n - 2))

    # Vectorized views

    @cached_property
    def power_reduction(self) -> np.ndarray:
        """Row k holds the coordinates of x^k, for k < 2n-1."""
        n, p = self.n, self.p
        rows = []
        for k in range(2 * n - 1):
            mono = [1] + [0] * k
            rows.append(_from_gf(gf_rem(mono, self.gf_modulus, p, ZZ), n, p))
        matrix = np.array(rows, dtype=np.int64).reshape(2 * n - 1, n)
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def mul_tensor(self) -> np.ndarray:
        """T[i, j, :] = coordinates of x^(i+j)."""
        n = self.n
        tensor = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                tensor[i, j] = self.power_reduction[i + j]
        tensor.setflags(write=False)
        return tensor

    def mul_matrix(self, a: "FieldElement") -> np.ndarray:
        """M with b_rep @ M = (a*b)_rep (mod p)."""
        return np.einsum("i,ijk->jk", np.asarray(a.rep, dtype=np.int64), self.mul_tensor) % self.p

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Rows are coordinates of (x^j)^p."""
        rows = [
            FieldElement(self, tuple(1 if k == j else 0 for k in range(self.n))).frobenius().rep
            for j in range(self.n)
        ]
        matrix = np.array(rows, dtype=np.int64).reshape(self.n, self.n)
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def element_array(self) -> np.ndarray:
        """All elements as a (q, n) array, in enumeration order."""
        array = np.array(list(itertools.product(range(self.p), repeat=self.n)), dtype=np.int64)
        array = array.reshape(self.order, self.n)
        array.setflags(write=False)
        return array

    def __str__(self) -> str:
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Immutable element of a FieldCtx."""
    ctx: FieldCtx
    rep: tuple[int, ...]

    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise CtxMismatch(f"Cannot combine elements of {self.ctx} and {other.ctx}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx.element(int(other))
        return None

    def _poly(self) -> list[int]:
        return _to_gf(self.rep)

    def _wrap(self, poly: Sequence[int]) -> "FieldElement":
        return FieldElement(self.ctx, _from_gf(poly, self.ctx.n, self.ctx.p))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(gf_add(self._poly(), other._poly(), self.ctx.p, ZZ))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._wrap(gf_sub(self._poly(), other._poly(), self.ctx.p, ZZ))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return self._wrap(gf_neg(self._poly(), self.ctx.p, ZZ))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product = gf_mul(self._poly(), other._poly(), self.ctx.p, ZZ)
        return self._wrap(gf_rem(product, self.ctx.gf_modulus, self.ctx.p, ZZ))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero(f"Inverse of zero in {self.ctx}")
        s, _, h = gf_gcdex(self._poly(), self.ctx.gf_modulus, self.ctx.p, ZZ)
        assert list(map(int, h)) == [1], "modulus is irreducible"
        return self._wrap(gf_rem(s, self.ctx.gf_modulus, self.ctx.p, ZZ))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return self.ctx.one
        return self._wrap(gf_pow_mod(self._poly(), exponent, self.ctx.gf_modulus, self.ctx.p, ZZ))

    def frobenius(self, k: int = 1) -> "FieldElement":
        """a^(p^k)."""
        result = self
        for _ in range(k % self.ctx.n):
            result = result ** self.ctx.p
        return result

    def norm(self) -> "FieldElement":
        """Product of the n conjugates, as an element of the prime field."""
        product = self.ctx.one
        conjugate = self
        for _ in range(self.ctx.n):
            product = product * conjugate
            conjugate = conjugate.frobenius()
        assert not any(product.rep[1:]), "norm lies in the prime field"
        return self.ctx.prime_field.element(product.rep[0])

    def in_prime_field(self) -> bool:
        return not any(self.rep[1:])

    def in_subfield(self, degree: int) -> bool:
        """True when a^(p^degree) = a, i.e. a lies in GF(p^degree)."""
        value = self
        for _ in range(degree):
            value = value ** self.ctx.p
        return value == self

    def is_zero(self) -> bool:
        return not any(self.rep)

    def is_one(self) -> bool:
        return self.rep[0] == 1 and not any(self.rep[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def to_int(self) -> int:
        return sum(c * self.ctx.p ** i for i, c in enumerate(self.rep))

    def sort_key(self) -> tuple[int, ...]:
        return self.rep

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.rep == other.rep
        if isinstance(other, (int, np.integer)):
            return self.rep == self.ctx.element(int(other)).rep
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.rep))

    def __str__(self) -> str:
        if self.ctx.n == 1:
            return str(self.rep[0])
        terms = []
        for i in reversed(range(self.ctx.n)):
            c = self.rep[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.ctx})"


def enumerate_field(ctx: FieldCtx, config: Optional[EngineConfig] = None) -> list[FieldElement]:
    """All elements, lexicographic on the coefficient vector."""
    config = config or DEFAULT_CONFIG
    if ctx.order > config.enumeration_bound:
        raise BoundExceeded(f"{ctx} has {ctx.order} elements, bound is {config.enumeration_bound}")
    return [FieldElement(ctx, tuple(int(c) for c in row)) for row in ctx.element_array]


def iter_field(ctx: FieldCtx) -> Iterator[FieldElement]:
    for coeffs in itertools.product(range(ctx.p), repeat=ctx.n):
        yield FieldElement(ctx, coeffs)


def linear_solution_space(
    ctx: FieldCtx,
    linear_map: Callable[[FieldElement], FieldElement],
    rhs: FieldElement,
):
    """Particular solution and kernel basis of a GF(p)-linear equation L(x) = rhs."""
    columns = []
    for j in range(ctx.n):
        basis = FieldElement(ctx, tuple(1 if k == j else 0 for k in range(ctx.n)))
        columns.append(linear_map(basis).rep)
    matrix = np.array(columns, dtype=np.int64).reshape(ctx.n, ctx.n).T
    particular, kernel = solve_mod_p(matrix, rhs.rep, ctx.p)
    if particular is None:
        return None, []
    return FieldElement(ctx, tuple(particular)), [FieldElement(ctx, tuple(v)) for v in kernel]


def linear_solutions(
    ctx: FieldCtx,
    linear_map: Callable[[FieldElement], FieldElement],
    rhs: FieldElement,
) -> list[FieldElement]:
    """Every x with L(x) = rhs for a GF(p)-linear L, sorted by coefficient vector."""
    particular, kernel = linear_solution_space(ctx, linear_map, rhs)
    if particular is None:
        return []
    solutions = set()
    for combo in itertools.product(range(ctx.p), repeat=len(kernel)):
        x = particular
        for c, v in zip(combo, kernel):
            if c:
                x = x + c * v
        solutions.add(x)
    return sorted(solutions, key=FieldElement.sort_key)


def _evaluate(poly_little_endian: Sequence[int], x: FieldElement) -> FieldElement:
    acc = x.ctx.zero
    for c in reversed(poly_little_endian):
        acc = acc * x + int(c)
    return acc


@dataclass(frozen=True)
class Embedding:
    """Field homomorphism source -> target fixed by the image of the generator."""
    source: FieldCtx
    target: FieldCtx
    image_of_gen: FieldElement

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "Embedding":
        return cls(ctx, ctx, ctx.gen)

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.image_of_gen == self.source.gen

    @cached_property
    def matrix(self) -> np.ndarray:
        """Row j holds the coordinates of image_of_gen^j."""
        if self.source.n == 1:
            rows = [self.target.one.rep]
        else:
            rows = [(self.image_of_gen ** j).rep for j in range(self.source.n)]
        matrix = np.array(rows, dtype=np.int64).reshape(self.source.n, self.target.n)
        matrix.setflags(write=False)
        return matrix

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.ctx != self.source:
            raise CtxMismatch(f"Embedding from {self.source} applied to element of {a.ctx}")
        rep = np.asarray(a.rep, dtype=np.int64) @ self.matrix % self.target.p
        return FieldElement(self.target, tuple(int(c) for c in rep))

    def apply_array(self, coeffs: np.ndarray) -> np.ndarray:
        """Map a (..., n_source) coefficient array to (..., n_target)."""
        return coeffs @ self.matrix % self.target.p

    def preimage(self, b: FieldElement) -> Optional[FieldElement]:
        """The unique a with embedding(a) = b, or None when b is not in the image."""
        if b.ctx != self.target:
            raise CtxMismatch(f"Preimage of element of {b.ctx} under embedding into {self.target}")
        particular, _ = solve_mod_p(self.matrix.T, b.rep, self.target.p)
        if particular is None:
            return None
        return FieldElement(self.source, tuple(particular))

    def then(self, other: "Embedding") -> "Embedding":
        """Composite: apply self, then other."""
        if other.source != self.target:
            raise CtxMismatch(f"Cannot compose embedding into {self.target} with one from {other.source}")
        return Embedding(self.source, other.target, other(self.image_of_gen))


def find_extension(
    ctx: FieldCtx,
    m: int,
    config: Optional[EngineConfig] = None,
) -> tuple[FieldCtx, Embedding]:
    """GF(p^(n*m)) together with an embedding of ctx into it."""
    if m < 1:
        raise InvalidField(f"Extension degree must be >= 1, got {m}")
    if m == 1:
        return ctx, Embedding.identity(ctx)

    big = FieldCtx.create(ctx.p, ctx.n * m, config=config)

    def fixed_by_frobenius(x: FieldElement) -> FieldElement:
        return x.frobenius(ctx.n) - x

    # GF(p^n) inside the big field is the kernel of Frob^n - 1
    for candidate in linear_solutions(big, fixed_by_frobenius, big.zero):
        if _evaluate(ctx.modulus, candidate).is_zero():
            logger.debug(f"Embedding {ctx} -> {big}: generator maps to {candidate}")
            return big, Embedding(ctx, big, candidate)
    raise NoIrreducibleFound(f"No root of {list(ctx.modulus)} in {big}")
