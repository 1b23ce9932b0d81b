"""
Dense truncated power series in one, two or three variables over GF(p^n).

Coefficients are stored as an (M, n) integer array, one row per monomial of
total degree below the precision, in graded order (total degree first, then
lexicographic on the exponent tuple). Truncating to a lower precision is a
prefix slice of that array.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Mapping, Optional, Sequence, Union

import numpy as np

from .errors import (
    ArityMismatch,
    CtxMismatch,
    NonUnit,
    NonzeroConstantTerm,
    PrecisionExceeded,
)
from .galois_field import Embedding, FieldCtx, FieldElement
from .types import INFINITY


logger = logging.getLogger(__name__)

VARIABLE_NAMES = {1: ("τ",), 2: ("X", "Y"), 3: ("X", "Y", "Z")}

Scalar = Union[int, FieldElement]


@dataclass(frozen=True)
class _Layout:
    nvars: int
    prec: int
    exps: np.ndarray        # (M, nvars)
    degrees: np.ndarray     # (M,)
    starts: np.ndarray      # starts[d] = first row of degree d; starts[prec] = M
    codes: np.ndarray       # mixed radix code of each exponent, radix prec
    lookup: np.ndarray      # code -> row

    @property
    def size(self) -> int:
        return len(self.degrees)

    def code(self, exps: Sequence[int]) -> int:
        return sum(int(e) * self.prec ** j for j, e in enumerate(exps))

    def index(self, exps: Sequence[int]) -> int:
        return int(self.lookup[self.code(exps)])


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of a given total degree, lexicographically ascending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for v in combo:
            exps[v] += 1
        out.append(tuple(exps))
    return sorted(out)


@lru_cache(maxsize=128)
def layout(nvars: int, prec: int) -> _Layout:
    rows = []
    starts = [0]
    for d in range(prec):
        block = _monomials(nvars, d)
        rows.extend(block)
        starts.append(len(rows))
    exps = np.array(rows, dtype=np.int64).reshape(len(rows), nvars)
    degrees = exps.sum(axis=1)
    radix = max(prec, 1) ** np.arange(nvars, dtype=np.int64)
    codes = exps @ radix
    lookup = np.full(max(prec, 1) ** nvars, -1, dtype=np.int64)
    lookup[codes] = np.arange(len(rows), dtype=np.int64)
    for array in (exps, degrees, codes, lookup):
        array.setflags(write=False)
    return _Layout(nvars, prec, exps, degrees, np.array(starts, dtype=np.int64), codes, lookup)


def _mul_univariate(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    size, n = a.shape
    full = np.zeros((size, 2 * n - 1), dtype=np.int64)
    for i in range(n):
        if not a[:, i].any():
            continue
        for j in range(n):
            if b[:, j].any():
                full[:, i + j] += np.convolve(a[:, i], b[:, j])[:size]
    return (full % ctx.p) @ ctx.power_reduction % ctx.p


def _mul_graded(ctx: FieldCtx, lay: _Layout, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated product: rows of a of degree d meet the rows of b below prec - d."""
    size, n = a.shape
    p = ctx.p
    acc = np.zeros((size, n), dtype=np.float64)
    b_nonzero = b.any(axis=1)
    for d in range(lay.prec):
        lo, hi = lay.starts[d], lay.starts[d + 1]
        rows = np.nonzero(a[lo:hi].any(axis=1))[0] + lo
        if not rows.size:
            continue
        limit = lay.starts[lay.prec - d]
        cols = np.nonzero(b_nonzero[:limit])[0]
        if not cols.size:
            continue
        prod = np.einsum("ai,bj,ijk->abk", a[rows], b[cols], ctx.mul_tensor) % p
        targets = lay.lookup[lay.codes[rows][:, None] + lay.codes[cols][None, :]].ravel()
        for k in range(n):
            acc[:, k] += np.bincount(targets, weights=prod[..., k].ravel(), minlength=size)
    return np.rint(acc).astype(np.int64) % p


class TruncSeries:
    """Power series known modulo total degree prec.

    Values are immutable; arithmetic returns new series whose precision is
    the minimum of the operand precisions.
    """

    __slots__ = ("ctx", "nvars", "prec", "coeffs")

    def __init__(self, ctx: FieldCtx, nvars: int, prec: int, coeffs: np.ndarray):
        if nvars not in (1, 2, 3):
            raise ArityMismatch(f"Series must have 1, 2 or 3 variables, got {nvars}")
        if prec < 0:
            raise ValueError(f"Precision must be nonnegative, got {prec}")
        expected = (layout(nvars, prec).size, ctx.n)
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != expected:
            raise ValueError(f"Coefficient array shape {coeffs.shape} != {expected}")
        coeffs = coeffs % ctx.p
        coeffs.setflags(write=False)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    # Construction

    @classmethod
    def zero(cls, ctx: FieldCtx, nvars: int, prec: int) -> "TruncSeries":
        return cls(ctx, nvars, prec, np.zeros((layout(nvars, prec).size, ctx.n), dtype=np.int64))

    @classmethod
    def constant(cls, ctx: FieldCtx, nvars: int, prec: int, value: Scalar) -> "TruncSeries":
        return cls.from_terms(ctx, nvars, prec, {(0,) * nvars: value})

    @classmethod
    def one(cls, ctx: FieldCtx, nvars: int, prec: int) -> "TruncSeries":
        return cls.constant(ctx, nvars, prec, 1)

    @classmethod
    def variable(cls, ctx: FieldCtx, nvars: int, prec: int, index: int = 0) -> "TruncSeries":
        exps = tuple(1 if j == index else 0 for j in range(nvars))
        return cls.from_terms(ctx, nvars, prec, {exps: 1})

    @classmethod
    def monomial(
        cls, ctx: FieldCtx, nvars: int, prec: int, exps: Sequence[int], value: Scalar = 1
    ) -> "TruncSeries":
        return cls.from_terms(ctx, nvars, prec, {tuple(exps): value})

    @classmethod
    def from_terms(
        cls,
        ctx: FieldCtx,
        nvars: int,
        prec: int,
        terms: Mapping[tuple[int, ...], Scalar],
    ) -> "TruncSeries":
        """Series from {exponent tuple: coefficient}; terms at or above prec are dropped."""
        lay = layout(nvars, prec)
        coeffs = np.zeros((lay.size, ctx.n), dtype=np.int64)
        for exps, value in terms.items():
            if len(exps) != nvars:
                raise ArityMismatch(f"Exponent {exps} does not match {nvars} variables")
            if sum(exps) >= prec:
                continue
            coeffs[lay.index(exps)] += ctx.element(value).rep
        return cls(ctx, nvars, prec, coeffs)

    @classmethod
    def from_coefficients(
        cls, ctx: FieldCtx, values: Sequence[Scalar], prec: Optional[int] = None
    ) -> "TruncSeries":
        """Univariate series sum values[i] tau^i."""
        prec = len(values) if prec is None else prec
        return cls.from_terms(ctx, 1, prec, {(i,): v for i, v in enumerate(values) if i < prec})

    # Structure

    @property
    def layout(self) -> _Layout:
        return layout(self.nvars, self.prec)

    def _element(self, row: np.ndarray) -> FieldElement:
        return FieldElement(self.ctx, tuple(int(c) for c in row))

    def coeff(self, exps: Union[int, Sequence[int]]) -> FieldElement:
        if isinstance(exps, (int, np.integer)):
            exps = (int(exps),)
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ArityMismatch(f"Exponent {exps} does not match {self.nvars} variables")
        if min(exps) < 0:
            raise ValueError(f"Negative exponent in {exps}")
        if sum(exps) >= self.prec:
            raise PrecisionExceeded(f"Coefficient of degree {sum(exps)} requested at precision {self.prec}")
        return self._element(self.coeffs[self.layout.index(exps)])

    def coefficients(self) -> list[FieldElement]:
        """Univariate coefficient list of length prec."""
        if self.nvars != 1:
            raise ArityMismatch("coefficients() is defined for univariate series")
        return [self._element(row) for row in self.coeffs]

    def terms(self) -> Iterator[tuple[tuple[int, ...], FieldElement]]:
        """Nonzero terms in graded order."""
        lay = self.layout
        for row in np.nonzero(self.coeffs.any(axis=1))[0]:
            yield tuple(int(e) for e in lay.exps[row]), self._element(self.coeffs[row])

    def first_term(self) -> Optional[tuple[tuple[int, ...], FieldElement]]:
        return next(self.terms(), None)

    def order(self):
        """Smallest total degree with a nonzero coefficient, INFINITY for zero."""
        nonzero = np.nonzero(self.coeffs.any(axis=1))[0]
        if not nonzero.size:
            return INFINITY
        return int(self.layout.degrees[nonzero[0]])

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def constant_term(self) -> FieldElement:
        if self.prec == 0:
            return self.ctx.zero
        return self._element(self.coeffs[0])

    def has_zero_constant_term(self) -> bool:
        return self.prec == 0 or not self.coeffs[0].any()

    def truncate(self, prec: int) -> "TruncSeries":
        """Drop everything of degree >= prec (no-op when prec >= self.prec)."""
        if prec >= self.prec:
            return self
        return TruncSeries(self.ctx, self.nvars, prec, self.coeffs[:layout(self.nvars, prec).size])

    def padded(self, prec: int) -> "TruncSeries":
        """Treat the stored terms as an exact polynomial and restate it at prec."""
        if prec <= self.prec:
            return self.truncate(prec)
        coeffs = np.zeros((layout(self.nvars, prec).size, self.ctx.n), dtype=np.int64)
        coeffs[:self.layout.size] = self.coeffs
        return TruncSeries(self.ctx, self.nvars, prec, coeffs)

    # Arithmetic

    def _align(self, other: "TruncSeries") -> tuple[np.ndarray, np.ndarray, int]:
        if other.ctx != self.ctx:
            raise CtxMismatch(f"Series over {self.ctx} combined with series over {other.ctx}")
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars}-variable series combined with {other.nvars}-variable series")
        prec = min(self.prec, other.prec)
        size = layout(self.nvars, prec).size
        return self.coeffs[:size], other.coeffs[:size], prec

    def _scalar(self, value) -> Optional[FieldElement]:
        if isinstance(value, FieldElement):
            if value.ctx != self.ctx:
                raise CtxMismatch(f"Element of {value.ctx} combined with series over {self.ctx}")
            return value
        if isinstance(value, (int, np.integer)):
            return self.ctx.element(int(value))
        return None

    def _with(self, coeffs: np.ndarray, prec: Optional[int] = None) -> "TruncSeries":
        return TruncSeries(self.ctx, self.nvars, self.prec if prec is None else prec, coeffs)

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            a, b, prec = self._align(other)
            return self._with(a + b, prec)
        scalar = self._scalar(other)
        if scalar is None:
            return NotImplemented
        if self.prec == 0:
            return self
        coeffs = self.coeffs.copy()
        coeffs[0] += scalar.rep
        return self._with(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return self._with(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, TruncSeries):
            a, b, prec = self._align(other)
            return self._with(a - b, prec)
        scalar = self._scalar(other)
        if scalar is None:
            return NotImplemented
        return self + (-scalar)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value: Scalar) -> "TruncSeries":
        scalar = self.ctx.element(value) if not isinstance(value, FieldElement) else value
        if scalar.ctx != self.ctx:
            raise CtxMismatch(f"Element of {scalar.ctx} scaling series over {self.ctx}")
        return self._with(self.coeffs @ self.ctx.mul_matrix(scalar))

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            a, b, prec = self._align(other)
            if self.nvars == 1:
                return self._with(_mul_univariate(self.ctx, a, b), prec)
            return self._with(_mul_graded(self.ctx, layout(self.nvars, prec), a, b), prec)
        scalar = self._scalar(other)
        if scalar is None:
            return NotImplemented
        return self.scale(scalar)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "TruncSeries":
        if exponent < 0:
            return self.recip() ** (-exponent)
        result = TruncSeries.one(self.ctx, self.nvars, self.prec)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def recip(self) -> "TruncSeries":
        """Multiplicative inverse by Newton iteration r <- r(2 - u r)."""
        if self.prec == 0:
            return self
        c0 = self.constant_term()
        if c0.is_zero():
            raise NonUnit(f"Series with zero constant term is not invertible")
        r = TruncSeries.constant(self.ctx, self.nvars, 1, c0.inverse())
        current = 1
        while current < self.prec:
            current = min(2 * current, self.prec)
            r = r.padded(current)
            r = r * (2 - self.truncate(current) * r)
        return r

    def shift_down(self, k: int) -> "TruncSeries":
        """Univariate f / tau^k for f of order >= k; precision drops by k."""
        if self.nvars != 1:
            raise ArityMismatch("shift_down is defined for univariate series")
        if self.coeffs[:k].any():
            raise NonUnit(f"Series of order {self.order()} is not divisible by τ^{k}")
        return TruncSeries(self.ctx, 1, max(self.prec - k, 0), self.coeffs[k:])

    def shift_up(self, k: int) -> "TruncSeries":
        """Univariate tau^k f; precision grows by k."""
        if self.nvars != 1:
            raise ArityMismatch("shift_up is defined for univariate series")
        pad = np.zeros((k, self.ctx.n), dtype=np.int64)
        return TruncSeries(self.ctx, 1, self.prec + k, np.vstack([pad, self.coeffs]))

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            if other.nvars == 1 and self.nvars == 1:
                k = other.order()
                if k is INFINITY:
                    raise NonUnit("Division by the zero series")
                if k > 0:
                    return self.shift_down(k) / other.shift_down(k)
            return self * other.recip()
        scalar = self._scalar(other)
        if scalar is None:
            return NotImplemented
        return self.scale(scalar.inverse())

    def __rtruediv__(self, other):
        scalar = self._scalar(other)
        if scalar is None:
            return NotImplemented
        return self.recip().scale(scalar)

    # Calculus

    def compose(self, *args: "TruncSeries") -> "TruncSeries":
        """Substitute args for the variables; every arg needs zero constant term.

        The result is reliable below min(arg precisions, self.prec * smallest
        arg order), and that is the precision it carries.
        """
        if len(args) != self.nvars:
            raise ArityMismatch(f"{self.nvars}-variable series composed with {len(args)} arguments")
        target_vars = args[0].nvars
        for g in args:
            if g.ctx != self.ctx:
                raise CtxMismatch(f"Argument over {g.ctx} composed into series over {self.ctx}")
            if g.nvars != target_vars:
                raise ArityMismatch("Composition arguments must share their number of variables")
            if not g.has_zero_constant_term():
                raise NonzeroConstantTerm(f"Argument has constant term {g.constant_term()}")

        arg_prec = min(g.prec for g in args)
        orders = [g.order() for g in args]
        min_order = min(orders)
        if min_order is INFINITY:
            return TruncSeries.constant(self.ctx, target_vars, arg_prec, self.constant_term())
        prec = min(arg_prec, self.prec * min_order)
        args = [g.truncate(prec) for g in args]

        # exponent degrees d with d * min_order >= prec contribute nothing
        bound = min(self.prec, -(-prec // min_order))
        dense = self._dense(bound)
        n = self.ctx.n

        last = args[-1]
        powers = [TruncSeries.one(self.ctx, target_vars, prec)]
        for _ in range(1, bound):
            powers.append(powers[-1] * last)
        power_table = np.stack([q.coeffs for q in powers])

        inner = np.einsum("...bi,bmj,ijk->...mk", dense, power_table, self.ctx.mul_tensor) % self.ctx.p
        return self._horner(inner, args[:-1], prec, target_vars)

    def _horner(self, table: np.ndarray, args: list, prec: int, nvars: int) -> "TruncSeries":
        if not args:
            return TruncSeries(self.ctx, nvars, prec, table)
        acc = TruncSeries.zero(self.ctx, nvars, prec)
        for a in reversed(range(table.shape[0])):
            acc = acc * args[0] + self._horner(table[a], args[1:], prec, nvars)
        return acc

    def _dense(self, bound: int) -> np.ndarray:
        """Coefficient tensor indexed by exponents, total degree < bound."""
        dense = np.zeros((bound,) * self.nvars + (self.ctx.n,), dtype=np.int64)
        lay = self.layout
        rows = lay.starts[min(bound, self.prec)]
        if rows:
            dense[tuple(lay.exps[:rows].T)] = self.coeffs[:rows]
        return dense

    def derivative(self, var: int = 0) -> "TruncSeries":
        """Formal partial derivative; precision drops by one."""
        if not 0 <= var < self.nvars:
            raise ArityMismatch(f"Variable index {var} out of range for {self.nvars} variables")
        new_prec = max(self.prec - 1, 0)
        target = layout(self.nvars, new_prec)
        coeffs = np.zeros((target.size, self.ctx.n), dtype=np.int64)
        lay = self.layout
        rows = np.nonzero(lay.exps[:, var] > 0)[0]
        if rows.size and new_prec:
            shifted = lay.exps[rows].copy()
            shifted[:, var] -= 1
            radix = new_prec ** np.arange(self.nvars, dtype=np.int64)
            dest = target.lookup[shifted @ radix]
            coeffs[dest] = self.coeffs[rows] * (lay.exps[rows, var] % self.ctx.p)[:, None]
        return TruncSeries(self.ctx, self.nvars, new_prec, coeffs)

    def frobenius(self, k: int = 1) -> "TruncSeries":
        """Raise every coefficient to the p^k-th power."""
        coeffs = self.coeffs
        for _ in range(k % self.ctx.n):
            coeffs = coeffs @ self.ctx.frobenius_matrix % self.ctx.p
        return self._with(coeffs)

    def map_coefficients(self, embedding: Embedding) -> "TruncSeries":
        """Push the coefficients through a field embedding."""
        if embedding.source != self.ctx:
            raise CtxMismatch(f"Embedding from {embedding.source} applied to series over {self.ctx}")
        return TruncSeries(embedding.target, self.nvars, self.prec, embedding.apply_array(self.coeffs))

    def lift(self, nvars: int, mapping: Sequence[int]) -> "TruncSeries":
        """Rename variable j to variable mapping[j] of an nvars-variable ring."""
        if len(mapping) != self.nvars:
            raise ArityMismatch(f"Mapping {mapping} does not cover {self.nvars} variables")
        lay = self.layout
        target = layout(nvars, self.prec)
        exps = np.zeros((lay.size, nvars), dtype=np.int64)
        for j, v in enumerate(mapping):
            exps[:, v] += lay.exps[:, j]
        coeffs = np.zeros((target.size, self.ctx.n), dtype=np.int64)
        if lay.size:
            radix = max(self.prec, 1) ** np.arange(nvars, dtype=np.int64)
            coeffs[target.lookup[exps @ radix]] = self.coeffs
        return TruncSeries(self.ctx, nvars, self.prec, coeffs)

    def inflate(self, step: int) -> "TruncSeries":
        """Univariate f(tau^step); precision multiplies by step."""
        if self.nvars != 1:
            raise ArityMismatch("inflate is defined for univariate series")
        coeffs = np.zeros((self.prec * step, self.ctx.n), dtype=np.int64)
        coeffs[::step] = self.coeffs
        return TruncSeries(self.ctx, 1, self.prec * step, coeffs)

    def deflate(self, step: int) -> "TruncSeries":
        """Univariate g with g(tau^step) = f; every exponent must be a multiple of step."""
        if self.nvars != 1:
            raise ArityMismatch("deflate is defined for univariate series")
        if step < 1:
            raise ValueError(f"Deflation step must be positive, got {step}")
        mask = np.ones(self.prec, dtype=bool)
        mask[::step] = False
        if self.coeffs[mask].any():
            raise ValueError(f"Series has exponents that are not multiples of {step}")
        return TruncSeries(self.ctx, 1, -(-self.prec // step), self.coeffs[::step])

    def first_difference(self, other: "TruncSeries") -> Optional[tuple[int, ...]]:
        """Exponent of the first monomial (graded order) where the series differ."""
        term = (self - other).first_term()
        return term[0] if term else None

    # Comparison and display

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.nvars == other.nvars
            and self.prec == other.prec
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.nvars, self.prec, self.coeffs.tobytes()))

    def __str__(self) -> str:
        names = VARIABLE_NAMES[self.nvars]
        parts = []
        for exps, c in self.terms():
            mono = "".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exps) if e
            )
            coeff = str(c)
            if self.ctx.n > 1 and "+" in coeff:
                coeff = f"({coeff})"
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            else:
                parts.append(f"{coeff}{mono}")
        parts.append(f"O({self.prec})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TruncSeries({self})"


def tau(ctx: FieldCtx, prec: int) -> TruncSeries:
    """The univariate variable."""
    return TruncSeries.variable(ctx, 1, prec)


def variables(ctx: FieldCtx, nvars: int, prec: int) -> tuple[TruncSeries, ...]:
    return tuple(TruncSeries.variable(ctx, nvars, prec, j) for j in range(nvars))
