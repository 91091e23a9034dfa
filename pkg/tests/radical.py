"""Q(alpha) with alpha^d = c (x^d - c irreducible), used to build exact roots of
trinomial discriminants that are not cyclotomic numbers."""

from fractions import Fraction


class Radical:
    def __init__(self, d: int, c, coeffs):
        self.d, self.c = d, Fraction(c)
        cs = [Fraction(v) for v in coeffs] + [Fraction(0)] * d
        self.cs = tuple(cs[:d])

    @classmethod
    def alpha(cls, d, c):
        return cls(d, c, [0, 1])

    def _lift(self, other):
        if isinstance(other, Radical):
            return other
        if isinstance(other, (int, Fraction)):
            return Radical(self.d, self.c, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Radical(self.d, self.c, [a + b for a, b in zip(self.cs, o.cs)])

    __radd__ = __add__

    def __neg__(self):
        return Radical(self.d, self.c, [-a for a in self.cs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = [Fraction(0)] * self.d
        for i, a in enumerate(self.cs):
            for j, b in enumerate(o.cs):
                if a and b:
                    k = i + j
                    if k >= self.d:
                        out[k - self.d] += a * b * self.c
                    else:
                        out[k] += a * b
        return Radical(self.d, self.c, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Radical(self.d, self.c, [1])
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        # solve self * v = 1 by Gauss-Jordan on the multiplication matrix
        d = self.d
        basis = [Radical(d, self.c, [0] * i + [1]) for i in range(d)]
        cols = [(self * b).cs for b in basis]
        rows = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if rows[r][col])
            rows[col], rows[piv] = rows[piv], rows[col]
            pv = rows[col][col]
            rows[col] = [v / pv for v in rows[col]]
            for r in range(d):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
        return Radical(d, self.c, [rows[i][d] for i in range(d)])

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.cs == o.cs

    def __hash__(self):
        return hash(self.cs)

    def __bool__(self):
        return any(self.cs)

    def __repr__(self):
        return f"Radical(d={self.d}, c={self.c}, {list(map(str, self.cs))})"
