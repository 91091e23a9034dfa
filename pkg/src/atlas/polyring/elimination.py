"""Resultants, gcds, square-free parts and monomial staircases."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from . import univar
from .multipoly import MultiPoly


class _Infinite:
    """Value of an invariant that diverges (non-isolated point, infinite colength)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("atlas.INFINITE")

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __le__(self, other):
        return other is self

    def __ge__(self, other):
        return True


INFINITE = _Infinite()


# univariate conversion

def to_dense(p: MultiPoly, v: int) -> list:
    """Dense coefficient list of p in x_v; p must not involve other variables."""
    if not p:
        return []
    out = [0] * (p.degree_in(v) + 1)
    for e, c in p.terms.items():
        if any(k for i, k in enumerate(e) if i != v):
            raise ValueError("polynomial involves more than one variable")
        out[e[v]] = c
    return univar.trim(out)


def from_dense(coeffs, nvars: int, v: int) -> MultiPoly:
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * nvars
            e[v] = k
            terms[tuple(e)] = c
    return MultiPoly(nvars, terms)


# pseudo-division and resultants

def prem(a: MultiPoly, b: MultiPoly, v: int) -> MultiPoly:
    """Pseudo-remainder of a by b w.r.t. x_v: lc(b)^(da-db+1) a mod b."""
    db = b.degree_in(v)
    if db == float("-inf"):
        raise ZeroDivisionError("pseudo-division by zero")
    lcb = b.lc_in(v)
    r = a
    e = a.degree_in(v) - db + 1
    if e <= 0:
        return a
    steps = 0
    while r and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lcr = r.lc_in(v)
        shift = [0] * a.nvars
        shift[v] = dr - db
        r = r * lcb - (b * lcr).mul_monomial(shift)
        steps += 1
    if steps < e:
        r = r * lcb ** (e - steps)
    return r


def resultant_univ(p: MultiPoly, q: MultiPoly, v: int) -> MultiPoly:
    """Res_{x_v}(p, q) by the subresultant PRS (Collins/Brown, content-free)."""
    if p.nvars != q.nvars:
        raise ValueError("nvars mismatch")
    n = p.nvars
    if not p or not q:
        return MultiPoly.zero(n)
    a, b = p, q
    da, db = a.degree_in(v), b.degree_in(v)
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -1
    if db == 0:
        return b ** da * s
    g = MultiPoly.one(n)
    h = MultiPoly.one(n)
    while True:
        da, db = a.degree_in(v), b.degree_in(v)
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b, v)
        a = b
        if not r:
            return MultiPoly.zero(n)
        b = r.divexact(g * h**delta)
        g = a.lc_in(v)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g**delta).divexact(h ** (delta - 1))
        if b.degree_in(v) <= 0:
            break
    da = a.degree_in(v)
    lcb = b.lc_in(v)
    if da == 1:
        h = lcb
    else:
        h = (lcb**da).divexact(h ** (da - 1))
    return h * s


def _bareiss_det(m: list[list[MultiPoly]], nvars: int) -> MultiPoly:
    size = len(m)
    if size == 0:
        return MultiPoly.one(nvars)
    m = [row[:] for row in m]
    sign = 1
    prev = MultiPoly.one(nvars)
    for k in range(size - 1):
        if not m[k][k]:
            for i in range(k + 1, size):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(nvars)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divexact(prev)
        prev = m[k][k]
    return m[size - 1][size - 1] * sign


def sylvester_resultant(p: MultiPoly, q: MultiPoly, v: int) -> MultiPoly:
    """Res_{x_v}(p, q) as the Sylvester determinant (fraction-free Bareiss)."""
    n = p.nvars
    if not p or not q:
        return MultiPoly.zero(n)
    dp, dq = p.degree_in(v), q.degree_in(v)
    if dp == 0 and dq == 0:
        return MultiPoly.one(n)
    cp, cq = p.coefficients_in(v), q.coefficients_in(v)
    zero = MultiPoly.zero(n)
    size = dp + dq
    rows = []
    for i in range(dq):
        row = [zero] * size
        for k in range(dp + 1):
            row[i + dp - k] = cp.get(k, zero)
        rows.append(row)
    for i in range(dp):
        row = [zero] * size
        for k in range(dq + 1):
            row[i + dq - k] = cq.get(k, zero)
        rows.append(row)
    return _bareiss_det(rows, n)


# gcd

def _bivariate_homogeneous(p: MultiPoly) -> bool:
    return p.nvars == 2 and p.is_homogeneous()


def _dehomogenize(p: MultiPoly):
    """(t-coefficients of p(1, t), power of x dividing p, total degree)."""
    d = p.degree()
    u = [0] * (d + 1)
    for (i, j), c in p.terms.items():
        u[j] = c
    u = univar.trim(u)
    return u, d - (len(u) - 1), d


def _homogenize(u, xpow: int) -> MultiPoly:
    k = len(u) - 1
    terms = {(k - j + xpow, j): c for j, c in enumerate(u) if c}
    return MultiPoly(2, terms)


def content_in(p: MultiPoly, v: int) -> MultiPoly:
    g = MultiPoly.zero(p.nvars)
    for c in p.coefficients_in(v).values():
        g = gcd_poly(g, c)
        if g.is_constant() and g:
            return MultiPoly.one(p.nvars)
    return g


def primitive_part_in(p: MultiPoly, v: int) -> MultiPoly:
    if not p:
        return p
    c = content_in(p, v)
    return p.divexact(c) if not c.is_constant() else p


def gcd_poly(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """gcd over the coefficient field, normalized to leading coefficient 1.

    Content/primitive-part split on the highest variable, then a primitive
    PRS on the primitive parts; bivariate homogeneous inputs are handled by
    dehomogenization.
    """
    if p.nvars != q.nvars:
        raise ValueError("nvars mismatch")
    n = p.nvars
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    if p.is_constant() or q.is_constant():
        return MultiPoly.one(n)
    if _bivariate_homogeneous(p) and _bivariate_homogeneous(q):
        up, xp, _ = _dehomogenize(p)
        uq, xq, _ = _dehomogenize(q)
        g = univar.gcd(up, uq)
        return _homogenize(g, min(xp, xq)).monic()
    used = sorted(set(p.variables()) | set(q.variables()))
    if len(used) == 1:
        v = used[0]
        return from_dense(univar.gcd(to_dense(p, v), to_dense(q, v)), n, v).monic()
    v = used[-1]
    if p.degree_in(v) == 0:
        return gcd_poly(p, content_in(q, v))
    if q.degree_in(v) == 0:
        return gcd_poly(content_in(p, v), q)
    cp, cq = content_in(p, v), content_in(q, v)
    a = p.divexact(cp) if not cp.is_constant() else p
    b = q.divexact(cq) if not cq.is_constant() else q
    c = gcd_poly(cp, cq)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while b and b.degree_in(v) > 0:
        r = prem(a, b, v)
        a, b = b, primitive_part_in(r, v) if r else r
    if b:
        # the remainder sequence reached a nonzero constant in x_v
        g = MultiPoly.one(n)
    else:
        g = primitive_part_in(a, v)
    return (c * g).monic()


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of p, leading coefficient 1."""
    if not p:
        raise ValueError("squarefree_part of the zero polynomial")
    n = p.nvars
    if p.is_constant():
        return MultiPoly.one(n)
    if _bivariate_homogeneous(p):
        u, xpow, _ = _dehomogenize(p)
        s = univar.squarefree(u) if len(u) > 1 else [Fraction(1)]
        return _homogenize(s, 1 if xpow else 0).monic()
    used = p.variables()
    if len(used) == 1:
        v = used[0]
        return from_dense(univar.squarefree(to_dense(p, v)), n, v).monic()
    v = used[-1]
    c = content_in(p, v)
    pp = p.divexact(c) if not c.is_constant() else p
    s = pp.divexact(gcd_poly(pp, pp.partial(v)))
    return (squarefree_part(c) * s).monic()


def jacobian_determinant(components: Sequence[MultiPoly]) -> MultiPoly:
    """det(d f_i / d x_j) by cofactor expansion."""
    n = len(components)
    if n == 0:
        raise ValueError("empty map")
    nv = components[0].nvars
    if nv != n or any(c.nvars != n for c in components):
        raise ValueError("Jacobian needs n components in n variables")
    m = [[c.partial(j) for j in range(n)] for c in components]
    return _cofactor_det(m, nv)


def _cofactor_det(m, nvars):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = MultiPoly.zero(nvars)
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor_det(minor, nvars)
        total = total + term if j % 2 == 0 else total - term
    return total


# monomial ideals

def monomial_staircase_codim(generators: Sequence[Sequence[int]], nvars: int | None = None):
    """Number of monomials outside the monomial ideal, or INFINITE.

    ``generators`` are exponent vectors (or monomial MultiPolys).
    """
    gens = []
    for g in generators:
        if isinstance(g, MultiPoly):
            if len(g.terms) != 1:
                raise ValueError("staircase generators must be monomials")
            gens.append(next(iter(g.terms)))
        else:
            gens.append(tuple(g))
    if nvars is None:
        if not gens:
            raise ValueError("nvars required for an empty generator list")
        nvars = len(gens[0])
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in gens if all(k == 0 for j, k in enumerate(e) if j != i) and e[i] > 0]
        if any(all(k == 0 for k in e) for e in gens):
            return 0
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    count = 0
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(all(e[i] >= g[i] for i in range(nvars)) for g in gens):
            count += 1
    return count
