"""Exact rationals and cyclotomic field arithmetic.

Elements of Q(zeta_N) are stored densely in the power basis 1, z, ..., z^(phi(N)-1)
as an integer numerator vector over a positive common denominator, reduced modulo
the N-th cyclotomic polynomial.  Mixed-order operands are embedded into
Q(zeta_L), L = lcm of the orders.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction

__all__ = [
    "Rational",
    "Cyclotomic",
    "Number",
    "cyclotomic_polynomial",
    "root_of_unity",
    "cyclo_of_root_of_unity",
    "sqrt_embed",
    "euler_phi",
    "parse_number",
    "to_number",
    "is_rational",
]


def euler_phi(n: int) -> int:
    result, m, q = n, n, 2
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# dense univariate helpers over Q (coefficient lists, lowest degree first)

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b):
    a = [Fraction(c) for c in a]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        c = a[-1] / lb
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
    return _trim(q), _trim(a)


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed by exact division of x^n - 1 by the product of Phi_d over the
    proper divisors d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in _divisors(n)[:-1]:
        den = _pmul(den, list(cyclotomic_polynomial(d)))
    q, r = _pdivmod(num, den)
    assert not r
    assert all(c.denominator == 1 for c in q)
    return tuple(int(c) for c in q)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced power-basis vectors of z^k for 0 <= k < n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z, then fold the overflow coefficient back using Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Vectors of z^k for deg <= k < 2*deg - 1, used to fold products."""
    deg = euler_phi(n)
    table = _power_table(n)
    return tuple(table[k % n] for k in range(deg, max(2 * deg - 1, deg)))


@lru_cache(maxsize=None)
def _embedding(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Images of 1, z_n, ..., z_n^(phi(n)-1) in Q(zeta_m), m a multiple of n."""
    step = m // n
    table = _power_table(m)
    return tuple(table[(k * step) % m] for k in range(euler_phi(n)))


def _normalize(num, den):
    g = math.gcd(den, *num)
    if den < 0:
        g = -g
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class Cyclotomic:
    """An element of the cyclotomic field Q(zeta_N).

    Instances are immutable.  Equality with another order embeds both sides
    into the compositum; hashing is only coherent between elements stored
    at the same order (plus rational values, which hash like Fraction).
    """

    __slots__ = ("order", "num", "den")

    def __init__(self, order: int, coeffs=None, den: int = 1, *, _raw: bool = False):
        if _raw:
            self.order = order
            self.num = coeffs
            self.den = den
            return
        if order < 1:
            raise ValueError("order must be positive")
        deg = euler_phi(order)
        if coeffs is None:
            coeffs = [0] * deg
        coeffs = list(coeffs)
        if len(coeffs) > deg:
            # accept an unreduced vector and fold it
            vec = [Fraction(0)] * deg
            table = _power_table(order)
            for k, c in enumerate(coeffs):
                if c:
                    row = table[k % order]
                    for i in range(deg):
                        if row[i]:
                            vec[i] += c * row[i]
            coeffs = vec
        coeffs = coeffs + [0] * (deg - len(coeffs))
        fr = [Fraction(c) for c in coeffs]
        lcm = 1
        for c in fr:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        lcm *= den
        num = [c.numerator * (lcm // den // c.denominator) for c in fr]
        self.num, self.den = _normalize(num, lcm)
        self.order = order

    # construction helpers

    @classmethod
    def from_rational(cls, value, order: int = 1) -> "Cyclotomic":
        v = Fraction(value)
        deg = euler_phi(order)
        num = [v.numerator] + [0] * (deg - 1)
        return cls(order, tuple(num), v.denominator, _raw=True)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        return root_of_unity(n, k)

    # structural queries

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def embed(self, order: int) -> "Cyclotomic":
        """Image under zeta_N -> zeta_M^(M/N); requires N | M."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) into Q(zeta_{order})")
        deg = euler_phi(order)
        out = [0] * deg
        for c, row in zip(self.num, _embedding(self.order, order)):
            if c:
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        num, den = _normalize(out, self.den)
        return Cyclotomic(order, num, den, _raw=True)

    # arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(other)
        return NotImplemented

    @staticmethod
    def _common(a: "Cyclotomic", b: "Cyclotomic"):
        if a.order == b.order:
            return a, b
        if b.is_rational():
            return a, Cyclotomic.from_rational(b.rational_value(), a.order)
        if a.is_rational():
            return Cyclotomic.from_rational(a.rational_value(), b.order), b
        m = math.lcm(a.order, b.order)
        return a.embed(m), b.embed(m)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(self, other)
        if a.den == b.den:
            num, den = _normalize([x + y for x, y in zip(a.num, b.num)], a.den)
        else:
            num, den = _normalize(
                [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den
            )
        return Cyclotomic(a.order, num, den, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.num), self.den, _raw=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            v = Fraction(other)
            num, den = _normalize([c * v.numerator for c in self.num], self.den * v.denominator)
            return Cyclotomic(self.order, num, den, _raw=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            return self * other.rational_value()
        if self.is_rational():
            return other * self.rational_value()
        a, b = self._common(self, other)
        n = a.order
        deg = len(a.num)
        prod = [0] * (2 * deg - 1)
        bnum = b.num
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(bnum):
                    if y:
                        prod[i + j] += x * y
        out = prod[:deg]
        for k, row in enumerate(_reduction_rows(n)):
            c = prod[deg + k]
            if c:
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        num, den = _normalize(out, a.den * b.den)
        return Cyclotomic(n, num, den, _raw=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.rational_value(), self.order)
        # extended Euclid: u*a + v*Phi = 1
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = _trim([Fraction(c, self.den) for c in self.num])
        r0, r1 = phi, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_psub(s0, _pmul(q, s1)))
        inv = [c / r1[0] for c in s1]
        return Cyclotomic(self.order, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugate: zeta_N -> zeta_N^(N-1)."""
        n = self.order
        table = _power_table(n)
        out = [0] * len(self.num)
        for k, c in enumerate(self.num):
            if c:
                for i, r in enumerate(table[(-k) % n]):
                    if r:
                        out[i] += c * r
        num, den = _normalize(out, self.den)
        return Cyclotomic(n, num, den, _raw=True)

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.order == other.order:
            return self.den == other.den and self.num == other.num
        a, b = self._common(self, other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.order, self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        z = complex(math.cos(2 * math.pi / self.order), math.sin(2 * math.pi / self.order))
        return sum(c * z**k for k, c in enumerate(self.num)) / self.den

    def __repr__(self):
        return f"Cyclotomic({format_number(self)!r})"

    def __str__(self):
        return format_number(self)


def _psub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


Number = Union[Fraction, Cyclotomic]


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k as an element of Q(zeta_n)."""
    if n < 1:
        raise ValueError("root_of_unity needs n >= 1")
    row = _power_table(n)[k % n]
    return Cyclotomic(n, row, 1, _raw=True)


cyclo_of_root_of_unity = root_of_unity


def sqrt_embed(n: int) -> Cyclotomic:
    """Positive square root of 2 or 5 inside a cyclotomic field."""
    if n == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    if n == 5:
        return 1 + 2 * root_of_unity(5, 1) + 2 * root_of_unity(5, 4)
    raise ValueError("sqrt_embed supports n in {2, 5}")


def is_rational(x) -> bool:
    if isinstance(x, Cyclotomic):
        return x.is_rational()
    return isinstance(x, (int, Fraction))


def to_number(x) -> Number:
    """Coerce to a canonical coefficient: Fraction when rational."""
    if isinstance(x, Cyclotomic):
        return x.rational_value() if x.is_rational() else x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_number(x)
    raise TypeError(f"not an exact number: {x!r}")


def format_number(x) -> str:
    """Render a number in the literal grammar (zeta(N)^k, integers, p/q)."""
    if isinstance(x, Cyclotomic):
        if x.is_rational():
            return format_number(x.rational_value())
        parts = []
        for k, c in enumerate(x.num):
            if not c:
                continue
            v = Fraction(c, x.den)
            mono = "" if k == 0 else (f"zeta({x.order})" if k == 1 else f"zeta({x.order})^{k}")
            if not mono:
                body = str(abs(v))
            elif abs(v) == 1:
                body = mono
            else:
                body = f"{abs(v)}*{mono}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out
    return str(Fraction(x))


# literal parser shared with the polynomial grammar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),]))")


class ParseError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class ExprParser:
    """Recursive-descent parser for + - * / ^ over numbers and named atoms.

    ``variable`` maps an identifier to a value (or raises ParseError); values
    only need the arithmetic operators.
    """

    def __init__(self, text: str, variable=None):
        self.toks = tokenize(text)
        self.i = 0
        self.variable = variable

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at token {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                value = self.divide(value, rhs)
        return value

    def divide(self, a, b):
        if isinstance(b, (int, Fraction, Cyclotomic)):
            if b == 0:
                raise ParseError("division by zero")
            return a / b if not isinstance(a, int) else Fraction(a) / b
        raise ParseError("only division by constants is supported")

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be an integer literal, got {tok!r}")
            k = sign * int(tok)
            if k < 0:
                if not isinstance(base, (int, Fraction, Cyclotomic)):
                    raise ParseError("negative exponent on a non-constant")
                return Fraction(1) / base ** (-k) if not isinstance(base, Cyclotomic) else base**k
            return base**k
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return Fraction(int(tok))
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok in ("zeta", "sqrt") and self.peek() == "(":
            self.take("(")
            arg = self.take()
            self.take(")")
            if not arg.isdigit():
                raise ParseError(f"{tok}() needs an integer literal")
            return root_of_unity(int(arg)) if tok == "zeta" else sqrt_embed(int(arg))
        if tok == "i" and self.variable is None:
            return root_of_unity(4)
        if self.variable is None:
            raise ParseError(f"unknown identifier {tok!r}")
        return self.variable(tok)


def parse_number(text: str) -> Number:
    """Parse a literal such as ``-zeta(3)^2 + 1/2`` into a canonical number."""
    value = ExprParser(text).parse()
    return to_number(value)
