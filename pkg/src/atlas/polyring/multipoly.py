"""Sparse multivariate polynomials over exact coefficient fields."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..exactnum import Cyclotomic, ExprParser, ParseError, format_number, to_number

MINUS_INFINITY = float("-inf")

_ALIASES = {"x": 0, "y": 1, "z": 2}


class DivisionFailed(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


def grlex_key(exps):
    return (sum(exps), exps)


def _coerce_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class MultiPoly:
    """Polynomial in ``nvars`` variables stored as {exponent tuple: coefficient}.

    Coefficients are Fractions, Cyclotomic elements or any other exact field
    element supporting the arithmetic operators.  Zero coefficients are never
    stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have length {nvars}")
                if c:
                    clean[e] = _coerce_coeff(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        c = _coerce_coeff(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MultiPoly":
        c = _coerce_coeff(c)
        return cls._raw(len(exps), {tuple(exps): c} if c else {})

    @classmethod
    def gens(cls, nvars: int) -> list["MultiPoly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.constant_term()

    def degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def degree_in(self, v: int):
        if not self.terms:
            return MINUS_INFINITY
        return max(e[v] for e in self.terms)

    def variables(self) -> list[int]:
        """Indices of the variables that actually occur."""
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def leading_term(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def field_order(self) -> int:
        """Order N of the smallest Q(zeta_N) in which all coefficients were given."""
        import math

        n = 1
        for c in self.terms.values():
            if isinstance(c, Cyclotomic) and not c.is_rational():
                n = math.lcm(n, c.order)
        return n

    # arithmetic

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (str, bytes, list, tuple, dict)):
            return NotImplemented
        if isinstance(other, (int, Fraction, Cyclotomic)) or hasattr(other, "__add__"):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items() if v * c})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (str, bytes, list, tuple, dict)):
                return NotImplemented
            if isinstance(other, (int, Fraction, Cyclotomic)) or hasattr(other, "__mul__"):
                return self.scale(_coerce_coeff(other))
            return NotImplemented
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = {}
        n = self.nvars
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(ea[i] + eb[i] for i in range(n))
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return MultiPoly._raw(n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if other.is_constant() and other:
                other = other.constant_value()
            else:
                return self.divexact(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        inv = 1 / other if not isinstance(other, int) else Fraction(1, other)
        return self.scale(inv)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps, c=1) -> "MultiPoly":
        n = self.nvars
        return MultiPoly._raw(
            n, {tuple(e[i] + exps[i] for i in range(n)): v * c for e, v in self.terms.items()}
        )

    def divexact(self, q: "MultiPoly") -> "MultiPoly":
        """Exact quotient self / q; raises DivisionFailed if q does not divide."""
        self._check(q)
        if not q:
            raise ZeroDivisionError("polynomial division by zero")
        if q.is_constant():
            return self.scale(1 / q.constant_value())
        eq, cq = q.leading_term()
        inv = 1 / cq
        r = dict(self.terms)
        quot = {}
        n = self.nvars
        qterms = list(q.terms.items())
        while r:
            e = max(r, key=grlex_key)
            if any(e[i] < eq[i] for i in range(n)):
                raise DivisionFailed("polynomial does not divide exactly", MultiPoly._raw(n, r))
            shift = tuple(e[i] - eq[i] for i in range(n))
            c = r[e] * inv
            quot[shift] = c
            for eb, cb in qterms:
                k = tuple(shift[i] + eb[i] for i in range(n))
                v = r.get(k)
                v = -c * cb if v is None else v - c * cb
                if v:
                    r[k] = v
                else:
                    r.pop(k, None)
        return MultiPoly._raw(n, quot)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.divexact(self)
        except DivisionFailed:
            return False
        return True

    def monic(self) -> "MultiPoly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # comparison

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # calculus and substitution

    def partial(self, v: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[v]
            if k:
                e2 = list(e)
                e2[v] = k - 1
                out[tuple(e2)] = c * k
        return MultiPoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        powers = [dict() for _ in range(self.nvars)]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = point[i] ** k
                    term = term * cache[k]
            total = total + term
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    def compose(self, maps: Sequence["MultiPoly"]) -> "MultiPoly":
        """p(maps[0], ..., maps[n-1]); the maps share a common nvars."""
        if len(maps) != self.nvars:
            raise ValueError(f"compose needs {self.nvars} maps, got {len(maps)}")
        if not maps:
            return self
        m = maps[0].nvars
        for g in maps:
            if g.nvars != m:
                raise ValueError("maps must share nvars")
        caches = [{0: MultiPoly.one(m), 1: g} for g in maps]

        def power(i, k):
            cache = caches[i]
            if k not in cache:
                top = max(j for j in cache if j <= k)
                cur = cache[top]
                for j in range(top + 1, k + 1):
                    cur = cur * maps[i]
                    cache[j] = cur
            return cache[k]

        out = MultiPoly.zero(m)
        acc = {}
        for e, c in self.sorted_terms():
            term = None
            for i, k in enumerate(e):
                if k:
                    pk = power(i, k)
                    term = pk if term is None else term * pk
            if term is None:
                term = MultiPoly.one(m)
            for ee, cc in term.terms.items():
                v = acc.get(ee)
                acc[ee] = cc * c if v is None else v + cc * c
        out = MultiPoly._raw(m, {e: c for e, c in acc.items() if c})
        return out

    def substitute_linear(self, matrix) -> "MultiPoly":
        """p(M x): variable i is replaced by sum_j M[i][j] x_j."""
        n = self.nvars
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError("matrix must be nvars x nvars")
        forms = []
        for row in matrix:
            terms = {}
            for j, c in enumerate(row):
                if c:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = _coerce_coeff(c)
            forms.append(MultiPoly._raw(n, terms))
        return self.compose(forms)

    def substitute(self, v: int, value) -> "MultiPoly":
        """Replace variable v by a polynomial (same nvars) or a constant."""
        if not isinstance(value, MultiPoly):
            value = MultiPoly.constant(self.nvars, value)
        maps = MultiPoly.gens(self.nvars)
        maps[v] = value
        return self.compose(maps)

    def coefficients_in(self, v: int) -> dict[int, "MultiPoly"]:
        """{k: coefficient of x_v^k}, coefficients free of x_v."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[v]
            e2 = e[:v] + (0,) + e[v + 1:]
            out.setdefault(k, {})[e2] = c
        return {k: MultiPoly._raw(self.nvars, t) for k, t in out.items()}

    def lc_in(self, v: int) -> "MultiPoly":
        d = self.degree_in(v)
        return self.coefficients_in(v)[d]

    def extend(self, nvars: int, positions: Sequence[int] | None = None) -> "MultiPoly":
        """Re-embed into ``nvars`` variables; variable i goes to positions[i]."""
        if positions is None:
            positions = list(range(self.nvars))
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * nvars
            for i, k in enumerate(e):
                e2[positions[i]] += k
            out[tuple(e2)] = c
        return MultiPoly._raw(nvars, out)

    def map_coefficients(self, fn) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return MultiPoly._raw(self.nvars, out)

    # printing / parsing

    def var_names(self) -> list[str]:
        return variable_names(self.nvars)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.var_names()
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if isinstance(c, Cyclotomic) and not c.is_rational():
                s = f"({format_number(c)})"
                pieces.append(s + ("*" + mono if mono else ""))
                continue
            c = to_number(c) if isinstance(c, Cyclotomic) else c
            if not mono:
                pieces.append(format_number(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{format_number(c)}*{mono}")
        out = pieces[0]
        for s in pieces[1:]:
            out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)!r})"


def variable_names(nvars: int) -> list[str]:
    if nvars <= 3:
        return ["x", "y", "z"][:nvars]
    return [f"x{i + 1}" for i in range(nvars)]


def _var_index(name: str):
    if name in _ALIASES:
        return _ALIASES[name]
    if name.startswith("x") and name[1:].isdigit() and int(name[1:]) >= 1:
        return int(name[1:]) - 1
    return None


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse the polynomial grammar: variables x1..xn (x, y, z for n <= 3),
    rationals, zeta(N)^k literals, + - * / ^ and parentheses."""
    from ..exactnum import tokenize

    if nvars is None:
        idx = [_var_index(t) for t in tokenize(text) if t[0].isalpha()]
        idx = [i for i in idx if i is not None]
        nvars = max(idx) + 1 if idx else 1
        nvars = max(nvars, 1)

    def variable(name):
        i = _var_index(name)
        if i is None or i >= nvars:
            raise ParseError(f"unknown variable {name!r} for {nvars} variables")
        return MultiPoly.var(nvars, i)

    value = ExprParser(text, variable).parse()
    if not isinstance(value, MultiPoly):
        value = MultiPoly.constant(nvars, to_number(value))
    return value


def poly_from_iter(nvars: int, items: Iterable[tuple[Sequence[int], object]]) -> MultiPoly:
    out = MultiPoly.zero(nvars)
    for e, c in items:
        out = out + MultiPoly.monomial(e, c)
    return out
