"""Truncated formal power series over the exact coefficient tower.

A series carries a fixed truncation order N and exactly N+1 coefficients;
binary arithmetic demands equal orders so precision loss is always explicit.
Multiplication is routed through a single convolution seam (``_convolve``)
so a faster kernel can be swapped in without touching callers.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    BadConstantTerm,
    NonInvertibleConstantTerm,
    NonzeroInnerConstant,
    NotReversible,
    OrderMismatch,
)
from .exact import ONE, ZERO, FieldElement, FieldLike, fe, format_field

CoeffLike = Union[int, Fraction, FieldElement]


def _convolve(a: Sequence[FieldElement], b: Sequence[FieldElement],
              order: int) -> list[FieldElement]:
    """Cauchy product truncated at `order`; the multiplication seam."""
    out = [ZERO] * (order + 1)
    for i, ai in enumerate(a):
        if i > order or ai.is_zero():
            continue
        top = min(order - i, len(b) - 1)
        for j in range(top + 1):
            bj = b[j]
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


class Series:
    """Power series truncated at a fixed order N (N+1 stored coefficients)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[CoeffLike]):
        coeffs = [fe(c) for c in coeffs]
        if len(coeffs) > order + 1:
            raise OrderMismatch(f"{len(coeffs)} coefficients for order {order}")
        coeffs.extend([ZERO] * (order + 1 - len(coeffs)))
        self.order = order
        self.coeffs = tuple(coeffs)

    @staticmethod
    def constant(value: CoeffLike, order: int) -> "Series":
        return Series(order, [fe(value)])

    @staticmethod
    def identity(order: int) -> "Series":
        """The series t."""
        return Series(order, [ZERO, ONE])

    @staticmethod
    def from_function(f: Callable[[int], CoeffLike], order: int) -> "Series":
        return Series(order, [fe(f(n)) for n in range(order + 1)])

    def __getitem__(self, n: int) -> FieldElement:
        return self.coeffs[n] if 0 <= n <= self.order else ZERO

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return Series(order, self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _match(self, other: "Series") -> None:
        if self.order != other.order:
            raise OrderMismatch(f"order {self.order} vs {other.order}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other: "Series") -> "Series":
        self._match(other)
        return Series(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Series") -> "Series":
        self._match(other)
        return Series(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Series":
        return Series(self.order, [-a for a in self.coeffs])

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            self._match(other)
            return Series(self.order, _convolve(self.coeffs, other.coeffs, self.order))
        return self.scale(other)

    def __rmul__(self, other) -> "Series":
        return self.scale(other)

    def scale(self, c: CoeffLike) -> "Series":
        c = fe(c)
        return Series(self.order, [c * a for a in self.coeffs])

    def map_index(self, f: Callable[[int, FieldElement], FieldElement]) -> "Series":
        return Series(self.order, [f(n, c) for n, c in enumerate(self.coeffs)])

    def alternate(self) -> "Series":
        """Substitute t -> -t."""
        return Series(self.order,
                      [c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs)])

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero() and not (n == 0 and self.order == 0):
                continue
            text = format_field(c)
            if any(ch in text for ch in "+- ") and n > 0:
                text = f"({text})"
            if n == 0:
                parts.append(text)
            elif n == 1:
                parts.append(f"{text}*t")
            else:
                parts.append(f"{text}*t^{n}")
        if not parts:
            parts = ["0"]
        return " + ".join(parts) + f" + O(t^{self.order + 1})"

    def __repr__(self):
        return f"Series(order={self.order}, {self})"


def series_arith(op: str, f: Series, g: Series) -> Series:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def inverse(f: Series) -> Series:
    """Multiplicative inverse: g with f*g = 1 up to the order."""
    c0 = f[0]
    if c0.is_zero():
        raise NonInvertibleConstantTerm("constant term is zero")
    inv0 = ONE / c0
    out = [inv0] + [ZERO] * f.order
    for n in range(1, f.order + 1):
        acc = ZERO
        for j in range(1, n + 1):
            fj = f[j]
            if not fj.is_zero():
                acc = acc + fj * out[n - j]
        out[n] = -inv0 * acc
    return Series(f.order, out)


def derivative(f: Series) -> Series:
    """Term-by-term derivative; the order drops by one."""
    if f.order == 0:
        return Series(0, [ZERO])
    return Series(f.order - 1, [f[n + 1] * (n + 1) for n in range(f.order)])


def antiderivative(f: Series) -> Series:
    """Term-by-term antiderivative with constant term 0; order grows by one."""
    return Series(f.order + 1,
                  [ZERO] + [f[n] / (n + 1) for n in range(f.order + 1)])


def compose(g: Series, f: Series) -> Series:
    """g(f(t)) by Horner's rule; requires f(0) = 0."""
    if not f[0].is_zero():
        raise NonzeroInnerConstant("inner series must have zero constant term")
    order = min(g.order, f.order)
    f = f.truncate(order)
    acc = Series.constant(g[g.order], order)
    for n in range(g.order - 1, -1, -1):
        acc = acc * f + Series.constant(g[n], order)
    return acc


def log1(f: Series) -> Series:
    """log of a series with constant term 1."""
    if f[0] != 1:
        raise BadConstantTerm("log requires constant term 1")
    if f.order == 0:
        return Series(0, [ZERO])
    quot = derivative(f) * inverse(f).truncate(f.order - 1)
    return antiderivative(quot)


def exp0(f: Series) -> Series:
    """exp of a series with constant term 0, via the g' = f'g recurrence."""
    if not f[0].is_zero():
        raise BadConstantTerm("exp requires constant term 0")
    out = [ONE] + [ZERO] * f.order
    for n in range(1, f.order + 1):
        acc = ZERO
        for j in range(1, n + 1):
            fj = f[j]
            if not fj.is_zero():
                acc = acc + (fj * j) * out[n - j]
        out[n] = acc / n
    return Series(f.order, out)


def pow_general(f: Series, alpha: FieldLike) -> Series:
    """f**alpha for f with constant term 1; alpha may be symbolic."""
    if f[0] != 1:
        raise BadConstantTerm("general power requires constant term 1")
    alpha = fe(alpha)
    if alpha.is_rational() and alpha.as_rational().denominator == 1:
        k = int(alpha.as_rational())
        base = f if k >= 0 else inverse(f)
        k = abs(k)
        acc = Series.constant(1, f.order)
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc
    return exp0(log1(f).scale(alpha))


def _compose_check(F: Series, G: Series) -> Series:
    return compose(F, G)


def reversion(F: Series) -> Series:
    """Compositional inverse G with F(G(x)) = x, by Newton iteration."""
    if not F[0].is_zero():
        raise NotReversible("series must have zero constant term")
    if F.order < 1 or F[1].is_zero():
        raise NotReversible("coefficient of t must be invertible")
    N = F.order
    g = Series(1, [ZERO, ONE / F[1]])
    order = 1
    while order < N:
        order = min(2 * order, N)
        g = Series(order, g.coeffs)
        Ft = F.truncate(order)
        err = compose(Ft, g) - Series.identity(order)
        # F' padded past its stored order: the padding only feeds terms that
        # are truncated away after multiplying by err (valuation > order/2).
        dF = Series(order, derivative(F).coeffs[: order + 1])
        g = g - err * inverse(compose(dF, g))
    return g


def star(f: Series) -> Series:
    """The involution f* = (t f(t))^<-1> / t on invertibly-headed series."""
    if f[0].is_zero():
        raise NonInvertibleConstantTerm("constant term is zero")
    tf = Series(f.order + 1, (ZERO,) + f.coeffs)
    g = reversion(tf)
    return Series(f.order, g.coeffs[1:])


def lagrange_coeff(phi: Series, f: Series, n: int,
                   variant: str = "plain") -> FieldElement:
    """Coefficient extraction for the compositional inverse G of t*f(t).

    plain:    [x^n] phi(G(x))          = [t^n] (1 + t f'/f) phi / f^n
    weighted: [x^n] phi(G(x)) G'(x)/G(x) = [t^(n+1)] phi / f^(n+1)
    """
    if f[0].is_zero():
        raise NonInvertibleConstantTerm("constant term of f is zero")
    if variant == "plain":
        if n < 0:
            return ZERO
        if phi.order < n or f.order < n:
            raise OrderMismatch(f"need order >= {n}")
        order = n
        phi_t, f_t = phi.truncate(order), f.truncate(order)
        finv = inverse(f_t)
        fpow = _int_power(finv, n)
        tfp = Series(order, [f_t[j] * j for j in range(order + 1)])  # t f'(t)
        weight = Series.constant(1, order) + tfp * finv
        return (weight * phi_t * fpow)[n]
    if variant == "weighted":
        m = n + 1
        if phi.order < m or f.order < m:
            raise OrderMismatch(f"need order >= {m}")
        phi_t, f_t = phi.truncate(m), f.truncate(m)
        return (phi_t * _int_power(inverse(f_t), m))[m]
    raise ValueError(f"unknown variant {variant!r}")


def _int_power(f: Series, k: int) -> Series:
    acc = Series.constant(1, f.order)
    base = f
    while k:
        if k & 1:
            acc = acc * base
        k >>= 1
        if k:
            base = base * base
    return acc


def geometric(order: int) -> Series:
    """1/(1-t)."""
    return Series(order, [ONE] * (order + 1))


def exp_t(order: int) -> Series:
    """e^t."""
    return Series(order, [fe(Fraction(1, math.factorial(n))) for n in range(order + 1)])


def log_one_plus(order: int) -> Series:
    """log(1+t)."""
    return Series(order, [ZERO] + [fe(Fraction((-1) ** (n - 1), n))
                                   for n in range(1, order + 1)])
