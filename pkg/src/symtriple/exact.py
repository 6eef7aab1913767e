"""Coefficient tower: arbitrary-precision rationals, dense univariate polynomials
over the rationals, and their fraction field.

Every value is immutable and normalized on construction, so equality is
structural.  A ``FieldElement`` is either a plain rational or a reduced ratio
of polynomials in one shared symbol; a ratio whose denominator is 1 and whose
numerator is constant collapses back to the rational tag.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, ParseError, PoleAtPoint, SymbolMismatch

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class UniPoly:
    """Dense univariate polynomial over Fraction; index = degree."""

    __slots__ = ("symbol", "coeffs")

    def __init__(self, symbol: str, coeffs: Iterable[Union[int, Fraction]]):
        self.symbol = symbol
        self.coeffs = _trim([Fraction(c) for c in coeffs])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else _ZERO

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            if self.coeffs != other.coeffs:
                return False
            return self.is_constant() or other.is_constant() or self.symbol == other.symbol
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant())
        return hash((self.symbol, self.coeffs))

    def _same_symbol(self, other: "UniPoly") -> str:
        if self.is_constant():
            return other.symbol
        if other.is_constant():
            return self.symbol
        if self.symbol != other.symbol:
            raise SymbolMismatch(f"{self.symbol!r} vs {other.symbol!r}")
        return self.symbol

    def __add__(self, other: "UniPoly") -> "UniPoly":
        sym = self._same_symbol(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(sym, out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.symbol, [-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        sym = self._same_symbol(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(sym, ())
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return UniPoly(sym, out)

    def scale(self, c: Fraction) -> "UniPoly":
        return UniPoly(self.symbol, [x * c for x in self.coeffs])

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("UniPoly power must be nonnegative")
        result = UniPoly(self.symbol, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        sym = self._same_symbol(other)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(sym, ()), self
        quo = [_ZERO] * (dq + 1)
        lead = other.leading()
        for i in range(dq, -1, -1):
            top = rem[i + other.degree]
            if top:
                q = top / lead
                quo[i] = q
                for j, c in enumerate(other.coeffs):
                    rem[i + j] -= q * c
        return UniPoly(sym, quo), UniPoly(sym, rem)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return self if lead == 1 else self.scale(1 / lead)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def evaluate(self, x: Fraction) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"UniPoly({self.symbol!r}, {format_poly(self)!r})"


FieldLike = Union[int, Fraction, UniPoly, "FieldElement"]


class FieldElement:
    """Tagged tower element: a Fraction, or a reduced ratio of UniPoly."""

    __slots__ = ("rat", "num", "den")

    def __init__(self, rat=None, num=None, den=None):
        self.rat = rat
        self.num = num
        self.den = den

    @staticmethod
    def from_rational(q: Union[int, Fraction]) -> "FieldElement":
        return FieldElement(rat=Fraction(q))

    @staticmethod
    def from_poly(p: UniPoly) -> "FieldElement":
        if p.is_constant():
            return FieldElement(rat=p.constant())
        return FieldElement(num=p, den=UniPoly(p.symbol, (1,)))

    @staticmethod
    def from_ratio(num: UniPoly, den: UniPoly) -> "FieldElement":
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        sym = num._same_symbol(den)
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        if den.degree == 0 and num.is_constant():
            return FieldElement(rat=num.constant())
        num = UniPoly(sym, num.coeffs)
        den = UniPoly(sym, den.coeffs)
        return FieldElement(num=num, den=den)

    # -- inspection ---------------------------------------------------------

    def is_rational(self) -> bool:
        return self.rat is not None

    def is_zero(self) -> bool:
        return self.rat == 0

    def as_rational(self) -> Fraction:
        if self.rat is None:
            raise ValueError("not a rational element")
        return self.rat

    def as_poly(self, symbol: str | None = None) -> UniPoly:
        """The element as a polynomial; raises if the denominator is nontrivial."""
        if self.rat is not None:
            return UniPoly(symbol or "_", (self.rat,))
        if self.den.degree != 0 or self.den.constant() != 1:
            raise ValueError("element has a nontrivial denominator")
        return self.num

    @property
    def symbol(self) -> str | None:
        return None if self.rat is not None else self.num._same_symbol(self.den)

    # -- arithmetic ---------------------------------------------------------

    def _parts(self, symbol: str) -> tuple[UniPoly, UniPoly]:
        if self.rat is not None:
            return UniPoly(symbol, (self.rat,)), UniPoly(symbol, (1,))
        return self.num, self.den

    def _binary(self, other: FieldLike, op: str) -> "FieldElement":
        other = fe(other)
        if self.rat is not None and other.rat is not None:
            a, b = self.rat, other.rat
            if op == "add":
                return FieldElement(rat=a + b)
            if op == "sub":
                return FieldElement(rat=a - b)
            if op == "mul":
                return FieldElement(rat=a * b)
            if b == 0:
                raise DivisionByZero("division by zero")
            return FieldElement(rat=a / b)
        sym = self.symbol or other.symbol
        if self.symbol and other.symbol and self.symbol != other.symbol:
            raise SymbolMismatch(f"{self.symbol!r} vs {other.symbol!r}")
        n1, d1 = self._parts(sym)
        n2, d2 = other._parts(sym)
        if op == "add":
            return FieldElement.from_ratio(n1 * d2 + n2 * d1, d1 * d2)
        if op == "sub":
            return FieldElement.from_ratio(n1 * d2 - n2 * d1, d1 * d2)
        if op == "mul":
            return FieldElement.from_ratio(n1 * n2, d1 * d2)
        if n2.is_zero():
            raise DivisionByZero("division by zero")
        return FieldElement.from_ratio(n1 * d2, d1 * n2)

    def __add__(self, other):
        return self._binary(other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, "sub")

    def __rsub__(self, other):
        return fe(other)._binary(self, "sub")

    def __mul__(self, other):
        return self._binary(other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, "div")

    def __rtruediv__(self, other):
        return fe(other)._binary(self, "div")

    def __neg__(self):
        if self.rat is not None:
            return FieldElement(rat=-self.rat)
        return FieldElement(num=-self.num, den=self.den)

    def __pow__(self, k: int) -> "FieldElement":
        if self.rat is not None:
            if k < 0 and self.rat == 0:
                raise DivisionByZero("0 ** negative")
            return FieldElement(rat=self.rat ** k)
        if k < 0:
            return FieldElement.from_ratio(self.den ** (-k), self.num ** (-k))
        return FieldElement.from_ratio(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.rat is not None and self.rat == other
        if isinstance(other, UniPoly):
            other = FieldElement.from_poly(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if (self.rat is None) != (other.rat is None):
            return False
        if self.rat is not None:
            return self.rat == other.rat
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.rat is not None:
            return hash(self.rat)
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"FieldElement({format_field(self)!r})"


def fe(value: FieldLike) -> FieldElement:
    """Coerce an int, Fraction, or UniPoly into the tower."""
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, UniPoly):
        return FieldElement.from_poly(value)
    if isinstance(value, (int, Fraction)):
        return FieldElement.from_rational(value)
    raise TypeError(f"cannot coerce {type(value).__name__} into FieldElement")


def fe_sym(symbol: str) -> FieldElement:
    """The tower element for the bare symbol itself."""
    return FieldElement.from_poly(UniPoly(symbol, (0, 1)))


def fe_poly(symbol: str, coeffs: Iterable[Union[int, Fraction]]) -> FieldElement:
    return FieldElement.from_poly(UniPoly(symbol, coeffs))


ZERO = fe(0)
ONE = fe(1)


def field_arith(op: str, a: FieldLike, b: FieldLike) -> FieldElement:
    """Dispatch form of +, -, *, / used by the service layer."""
    if op not in ("add", "sub", "mul", "div"):
        raise ValueError(f"unknown op {op!r}")
    return fe(a)._binary(b, op)


def binom_general(alpha: FieldLike, k: int) -> FieldElement:
    """Generalized binomial coefficient alpha(alpha-1)...(alpha-k+1)/k!."""
    if k < 0:
        return ZERO
    alpha = fe(alpha)
    acc = ONE
    for i in range(k):
        acc = acc * (alpha - i)
    return acc / math.factorial(k)


def specialize(a: FieldLike, value: Union[int, Fraction]) -> Fraction:
    """Exact evaluation of a tower element at a rational point."""
    a = fe(a)
    value = Fraction(value)
    if a.rat is not None:
        return a.rat
    den = a.den.evaluate(value)
    if den == 0:
        raise PoleAtPoint(f"denominator vanishes at {value}")
    return a.num.evaluate(value) / den


# -- text serialization -----------------------------------------------------

def format_rational(q: Fraction) -> str:
    return str(q)


def format_poly(p: UniPoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = p.symbol if k == 1 else f"{p.symbol}^{k}"
        else:
            body = f"{mag}*{p.symbol}" if k == 1 else f"{mag}*{p.symbol}^{k}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def format_field(a: FieldLike) -> str:
    a = fe(a)
    if a.rat is not None:
        return format_rational(a.rat)
    if a.den.degree == 0 and a.den.constant() == 1:
        return format_poly(a.num)
    return f"({format_poly(a.num)})/({format_poly(a.den)})"


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^()/]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        pos = m.end()
        for kind in ("number", "name", "op"):
            val = m.group(kind)
            if val is not None:
                tokens.append((kind, val))
                break
    return tokens


class _Parser:
    """Recursive-descent parser for the printed FieldElement forms."""

    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val!r}")

    def parse_element(self) -> FieldElement:
        if self.peek() == ("op", "("):
            save = self.pos
            self.take()
            num = self.parse_poly()
            self.expect(")")
            if self.peek() == ("op", "/"):
                self.take()
                self.expect("(")
                den = self.parse_poly()
                self.expect(")")
                self._done()
                return fe(num) / fe(den)
            self.pos = save
        result = self.parse_poly()
        self._done()
        return fe(result)

    def _done(self):
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.tokens[self.pos]}")

    def parse_poly(self) -> FieldElement:
        total = fe(0)
        sign = 1
        kind, val = self.peek()
        if (kind, val) in (("op", "+"), ("op", "-")):
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            total = total + self.parse_term(sign)
            kind, val = self.peek()
            if (kind, val) == ("op", "+"):
                self.take()
                sign = 1
            elif (kind, val) == ("op", "-"):
                self.take()
                sign = -1
            else:
                return total

    def parse_term(self, sign: int) -> FieldElement:
        kind, val = self.peek()
        coeff = Fraction(sign)
        if kind == "number":
            self.take()
            coeff *= Fraction(val)
            if self.peek() == ("op", "*"):
                self.take()
            else:
                return fe(coeff)
        kind, val = self.take()
        if kind != "name":
            raise ParseError(f"expected symbol, got {val!r}")
        symbol = val
        power = 1
        if self.peek() == ("op", "^"):
            self.take()
            kind, exp = self.take()
            if kind != "number" or "/" in exp:
                raise ParseError(f"bad exponent {exp!r}")
            power = int(exp)
        coeffs = [Fraction(0)] * power + [coeff]
        return fe_poly(symbol, coeffs)


def parse_field(text: str) -> FieldElement:
    """Inverse of format_field; raises ParseError on malformed input."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    return _Parser(tokens).parse_element()


# -- deterministic sampling -------------------------------------------------

def sample_rational(rng, bound: int = 9, nonzero: bool = False) -> Fraction:
    """Small random rational with numerator in [-bound, bound]."""
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q != 0 or not nonzero:
            return q


def sample_field(rng, symbol: str | None = None, degree: int = 2,
                 bound: int = 9) -> FieldElement:
    """Random tower element: rational, or a low-degree polynomial in symbol."""
    if symbol is None or rng.random() < 0.5:
        return fe(sample_rational(rng, bound))
    coeffs = [sample_rational(rng, bound) for _ in range(rng.randint(1, degree + 1))]
    return fe_poly(symbol, coeffs)
