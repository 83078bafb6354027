"""Exact rational functions of chart coordinates x1..xN.

An Expr is a quotient of two sparse integer-coefficient polynomials kept in
a canonical form:

  * numerator and denominator share no polynomial factor (full GCD
    cancellation) and no common integer content,
  * the denominator has a positive leading coefficient under graded
    lexicographic order,
  * zero is 0/1.

Two Exprs denote the same function exactly when their canonical forms are
identical, so equality and zero-testing are decidable with no tolerances.
Values are immutable and all operations are pure; instances can be shared
freely across threads.

The accepted grammar (also what the printer emits):

  expr     := term (('+' | '-') term)*
  term     := factor (('*' | '/') factor)*
  factor   := '-' factor | power
  power    := atom ['^' exponent]
  atom     := INTEGER | COORDINATE | '(' expr ')'
  exponent := ['-'] INTEGER | '(' ['-'] INTEGER ')'

Coordinates are written x1..xN; exponents are integer literals (negative
exponents land in the denominator), which keeps the language closed under
differentiation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import poly
from .poly import PolyDict


class ExprError(Exception):
    """Base class for expression errors."""


class ExprSyntaxError(ExprError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PoleError(ExprError):
    """Evaluation at a point where the denominator vanishes."""


Scalar = Union[int, Fraction]


def _normalize(num: PolyDict, den: PolyDict, arity: int) -> Tuple[PolyDict, PolyDict]:
    if poly.is_zero(den):
        raise ZeroDivisionError("division by the zero function")
    if poly.is_zero(num):
        return {}, poly.one(arity)
    cn = poly.int_content(num)
    cd = poly.int_content(den)
    num = poly.scale(num, 1 / cn)
    den = poly.scale(den, 1 / cd)
    ratio = cn / cd
    if ratio.numerator != 1:
        num = poly.scale(num, ratio.numerator)
    if ratio.denominator != 1:
        den = poly.scale(den, ratio.denominator)
    # common monomial factor
    mn = poly.min_exponents(num)
    md = poly.min_exponents(den)
    m = tuple(min(a, b) for a, b in zip(mn, md))
    if any(m):
        num = poly.shift_down(num, m)
        den = poly.shift_down(den, m)
    if not poly.is_const(den):
        if poly.is_const(num):
            pass  # nothing beyond content can cancel
        else:
            h = poly.gcd_int(num, den)
            if not poly.is_const(h):
                num = poly.divexact(num, h)
                den = poly.divexact(den, h)
    _, lc = poly.leading(den)
    if lc < 0:
        num = poly.neg(num)
        den = poly.neg(den)
    return num, den


class Expr:
    """Canonical exact rational function over coordinates x1..x{arity}."""

    __slots__ = ("arity", "_num", "_den", "_hash")

    def __init__(self, arity: int, num: PolyDict, den: PolyDict, _canonical: bool = False):
        if not _canonical:
            num, den = _normalize(num, den, arity)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Expr is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(arity: int, value: Scalar) -> "Expr":
        c = Fraction(value)
        if c == 0:
            return Expr(arity, {}, poly.one(arity), _canonical=True)
        return Expr(
            arity,
            poly.const(arity, c.numerator),
            poly.const(arity, c.denominator),
            _canonical=True,
        )

    @staticmethod
    def coordinate(arity: int, index: int) -> "Expr":
        """The coordinate function x{index+1} (0-based index)."""
        return Expr(arity, poly.variable(arity, index), poly.one(arity), _canonical=True)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._num

    def is_one(self) -> bool:
        return poly.is_const(self._num) and poly.is_const(self._den) and self._num == self._den

    def is_constant(self) -> bool:
        return poly.is_const(self._num) and poly.is_const(self._den)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("expression is not constant")
        if not self._num:
            return Fraction(0)
        return poly.const_value(self._num) / poly.const_value(self._den)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Expr") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "Expr") -> "Expr":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self._den == other._den:
            return Expr(self.arity, poly.add(self._num, other._num), self._den)
        num = poly.add(
            poly.mul(self._num, other._den), poly.mul(other._num, self._den)
        )
        den = poly.mul(self._den, other._den)
        return Expr(self.arity, num, den)

    def __sub__(self, other: "Expr") -> "Expr":
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return -other
        if self._den == other._den:
            return Expr(self.arity, poly.sub(self._num, other._num), self._den)
        num = poly.sub(
            poly.mul(self._num, other._den), poly.mul(other._num, self._den)
        )
        den = poly.mul(self._den, other._den)
        return Expr(self.arity, num, den)

    def __neg__(self) -> "Expr":
        return Expr(self.arity, poly.neg(self._num), self._den, _canonical=True)

    def __mul__(self, other: "Expr") -> "Expr":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Expr.const(self.arity, 0)
        if self.is_one():
            return other
        if other.is_one():
            return self
        return Expr(
            self.arity,
            poly.mul(self._num, other._num),
            poly.mul(self._den, other._den),
        )

    def __truediv__(self, other: "Expr") -> "Expr":
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        if self.is_zero():
            return self
        return Expr(
            self.arity,
            poly.mul(self._num, other._den),
            poly.mul(self._den, other._num),
        )

    def scale(self, c: Scalar) -> "Expr":
        c = Fraction(c)
        if c == 0 or self.is_zero():
            return Expr.const(self.arity, 0)
        if c == 1:
            return self
        return Expr(
            self.arity,
            poly.scale(self._num, c.numerator),
            poly.scale(self._den, c.denominator),
        )

    def __pow__(self, k: int) -> "Expr":
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k == 0:
            if self.is_zero():
                raise ZeroDivisionError("0^0 of the zero function")
            return Expr.const(self.arity, 1)
        if k < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of the zero function")
            return Expr(
                self.arity, poly.pow_(self._den, -k), poly.pow_(self._num, -k)
            )
        return Expr(
            self.arity, poly.pow_(self._num, k), poly.pow_(self._den, k), _canonical=True
        )

    # -- calculus / evaluation ----------------------------------------------

    def diff(self, index: int) -> "Expr":
        """Exact partial derivative with respect to x{index+1} (0-based)."""
        if not 0 <= index < self.arity:
            raise ValueError(f"coordinate index {index} out of range")
        dn = poly.diff(self._num, index)
        if poly.is_const(self._den):
            return Expr(self.arity, dn, self._den)
        dd = poly.diff(self._den, index)
        num = poly.sub(poly.mul(dn, self._den), poly.mul(self._num, dd))
        den = poly.mul(self._den, self._den)
        return Expr(self.arity, num, den)

    def eval_at(self, point: Sequence[Scalar]) -> Fraction:
        """Exact rational value at a rational point; PoleError on poles."""
        if len(point) != self.arity:
            raise ValueError(f"point has length {len(point)}, expected {self.arity}")
        pt = [Fraction(x) for x in point]
        d = poly.eval_at(self._den, pt)
        if d == 0:
            raise PoleError(f"denominator vanishes at {tuple(pt)}")
        if not self._num:
            return Fraction(0)
        return poly.eval_at(self._num, pt) / d

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return (
            self.arity == other.arity
            and self._num == other._num
            and self._den == other._den
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(
                (
                    self.arity,
                    frozenset(self._num.items()),
                    frozenset(self._den.items()),
                )
            )
            object.__setattr__(self, "_hash", h)
        return h

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        num_s = poly.to_str(self._num)
        if poly.is_const(self._den) and poly.const_value(self._den) == 1:
            return num_s
        den_s = poly.to_str(self._den)
        if len(self._num) > 1:
            num_s = f"({num_s})"
        if not (_is_bare_symbol(self._den) or poly.is_const(self._den)):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"Expr({self})"


def _is_bare_symbol(p: PolyDict) -> bool:
    """True for a single variable with coefficient 1 and exponent 1."""
    if len(p) != 1:
        return False
    (mono, coeff), = p.items()
    return coeff == 1 and sum(mono) == 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOK_INT = "int"
_TOK_COORD = "coord"
_TOK_OP = "op"
_TOK_END = "end"


def _tokenize(text: str, arity: int) -> List[Tuple[str, object, int]]:
    tokens: List[Tuple[str, object, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append((_TOK_INT, int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExprSyntaxError("coordinate symbol needs an index", i)
            k = int(text[i + 1 : j])
            if not 1 <= k <= arity:
                raise ExprSyntaxError(
                    f"coordinate x{k} exceeds arity {arity}", i
                )
            tokens.append((_TOK_COORD, k - 1, i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((_TOK_OP, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append((_TOK_END, None, n))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Tuple[str, object, int]], arity: int):
        self.tokens = tokens
        self.pos = 0
        self.arity = arity

    def peek(self) -> Tuple[str, object, int]:
        return self.tokens[self.pos]

    def take(self) -> Tuple[str, object, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, value, at = self.take()
        if kind != _TOK_OP or value != op:
            raise ExprSyntaxError(f"expected {op!r}", at)

    def parse(self) -> Expr:
        e = self.expr()
        kind, _, at = self.peek()
        if kind != _TOK_END:
            raise ExprSyntaxError("trailing input", at)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == _TOK_OP and value in "+-":
                self.take()
                rhs = self.term()
                e = e + rhs if value == "+" else e - rhs
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, value, at = self.peek()
            if kind == _TOK_OP and value in "*/":
                self.take()
                rhs = self.factor()
                if value == "*":
                    e = e * rhs
                else:
                    if rhs.is_zero():
                        raise ExprSyntaxError("division by zero", at)
                    e = e / rhs
            else:
                return e

    def factor(self) -> Expr:
        kind, value, _ = self.peek()
        if kind == _TOK_OP and value == "-":
            self.take()
            return -self.factor()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == _TOK_OP and value == "^":
            self.take()
            k = self.exponent()
            if k < 0 and base.is_zero():
                raise ZeroDivisionError("negative power of the zero function")
            return base**k
        return base

    def exponent(self) -> int:
        kind, value, at = self.peek()
        if kind == _TOK_OP and value == "(":
            self.take()
            k = self._signed_int()
            self.expect_op(")")
            return k
        return self._signed_int()

    def _signed_int(self) -> int:
        kind, value, at = self.take()
        sign = 1
        if kind == _TOK_OP and value == "-":
            sign = -1
            kind, value, at = self.take()
        if kind != _TOK_INT:
            raise ExprSyntaxError("exponent must be an integer literal", at)
        return sign * value

    def atom(self) -> Expr:
        kind, value, at = self.take()
        if kind == _TOK_INT:
            return Expr.const(self.arity, value)
        if kind == _TOK_COORD:
            return Expr.coordinate(self.arity, value)
        if kind == _TOK_OP and value == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ExprSyntaxError("expected integer, coordinate or '('", at)


def parse_expr(text: str, arity: int) -> Expr:
    """Parse an expression string over coordinates x1..x{arity}."""
    return _Parser(_tokenize(text, arity), arity).parse()
