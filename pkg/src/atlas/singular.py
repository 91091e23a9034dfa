"""Local invariants of plane curve singularities at the origin.

Milnor numbers come from intersection multiplicities of the partial
derivatives (Fulton's recursion) or, for Brieskorn-type hypersurfaces with a
monomial Jacobian ideal, from a staircase count.  Ordinary d-fold points
x^d + lam*x^(d-1)*y + y^d are tagged with lam^d, and for d = 4 with the
classical invariants (I, J) of the binary quartic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import (
    INFINITE,
    MultiPoly,
    gcd_poly,
    monomial_staircase_codim,
    resultant_univ,
    squarefree_part,
)
from .polyring import univar
from .polyring.elimination import to_dense


class NotInGamma(ValueError):
    """lam makes y^d + lam x^(d-1) y + x^d non-reduced."""


@dataclass
class SingularityReport:
    milnor: object  # int or INFINITE
    method: str
    analytic_tag: object = None
    point: tuple = (0, 0)

    @property
    def isolated(self) -> bool:
        return self.milnor is not INFINITE

    def to_json(self) -> dict:
        out = {
            "milnor": "infinite" if self.milnor is INFINITE else self.milnor,
            "method": self.method,
        }
        if self.analytic_tag is not None:
            out["analytic_tag"] = str(self.analytic_tag)
        return out


# intersection multiplicity

def _at_origin(p: MultiPoly):
    return p.terms.get((0, 0), 0)


def _restrict_y0(p: MultiPoly) -> dict[int, object]:
    """x-coefficients of p(x, 0)."""
    return {e[0]: c for e, c in p.terms.items() if e[1] == 0}


def _divide_by_y(p: MultiPoly) -> MultiPoly:
    return MultiPoly._raw(2, {(e[0], e[1] - 1): c for e, c in p.terms.items()})


def intersection_multiplicity(p: MultiPoly, q: MultiPoly):
    """I_o(p, q) for bivariate p, q; INFINITE if they share a branch through o."""
    if p.nvars != 2 or q.nvars != 2:
        raise ValueError("intersection multiplicity needs bivariate polynomials")
    if not p or not q:
        return INFINITE if (not p and not q) or _at_origin(p or q) == 0 else 0
    if _at_origin(p) or _at_origin(q):
        return 0
    g = gcd_poly(p, q)
    if not g.is_constant():
        if not _at_origin(g):
            return INFINITE
        # a common factor that is a unit at o does not change I_o
        p, q = p.divexact(g), q.divexact(g)
    total = 0
    stack = [(p, q)]
    while stack:
        a, b = stack.pop()
        if _at_origin(a) or _at_origin(b):
            continue
        ra, rb = _restrict_y0(a), _restrict_y0(b)
        if not ra and not rb:
            return INFINITE  # y divides both
        if not ra or (rb and max(rb) < max(ra)):
            a, b, ra, rb = b, a, rb, ra
        if not rb:
            # y | b: I(a, y * b1) = I(a, y) + I(a, b1), I(a, y) = ord_x a(x, 0)
            total += min(ra)
            stack.append((a, _divide_by_y(b)))
            continue
        r, s = max(ra), max(rb)
        shift = (s - r, 0)
        b = b * ra[r] - a.mul_monomial(shift, rb[s])
        stack.append((a, b))
    return total


def milnor_plane(f: MultiPoly) -> SingularityReport:
    """Milnor number of the plane curve f = 0 at the origin."""
    if f.nvars != 2:
        raise ValueError("milnor_plane needs a bivariate polynomial")
    if _at_origin(f):
        raise ValueError("the curve does not pass through the origin")
    mu = intersection_multiplicity(f.partial(0), f.partial(1))
    return SingularityReport(mu, "fulton")


def brieskorn_polynomial(d: int, a: Sequence[int]) -> MultiPoly:
    """x_n^(d-1) - sum x_i^a_i in n = len(a) + 1 variables."""
    n = len(a) + 1
    out = MultiPoly.monomial([0] * (n - 1) + [d - 1])
    for i, ai in enumerate(a):
        e = [0] * n
        e[i] = ai
        out = out - MultiPoly.monomial(e)
    return out


def milnor_brieskorn(d: int, a: Sequence[int]) -> SingularityReport:
    """Milnor number at o of x_n^(d-1) = sum x_i^a_i via its monomial Jacobian ideal."""
    if d < 3 or not a or any(ai < 2 for ai in a):
        raise ValueError("need d >= 3 and every a_i >= 2")
    n = len(a) + 1
    f = brieskorn_polynomial(d, a)
    gens = []
    for i in range(n):
        part = f.partial(i)
        if len(part.terms) != 1:
            raise AssertionError("Jacobian ideal is not monomial")
        gens.append(next(iter(part.terms)))
    mu = monomial_staircase_codim(gens, n)
    closed = d - 2
    for ai in a:
        closed *= ai - 1
    if mu != closed:
        raise AssertionError(f"staircase count {mu} disagrees with (d-2)*prod(a_i-1) = {closed}")
    return SingularityReport(mu, "staircase")


# ordinary d-fold points

def ordinary_point_form(d: int, lam) -> MultiPoly:
    """y^d + lam x^(d-1) y + x^d."""
    x, y = MultiPoly.gens(2)
    return y**d + x ** (d - 1) * y * lam + x**d


def gamma_membership(d: int, lam) -> bool:
    """True iff t^d + lam t + 1 has no repeated root."""
    if d < 1:
        raise ValueError("d must be positive")
    zero = lam * 0
    u = [zero + 1, lam] + [zero] * (d - 2) + [zero + 1] if d >= 2 else [zero + 1, lam + 1]
    u = univar.trim(u)
    g = univar.gcd(u, univar.derivative(u))
    return len(g) <= 1


def discriminant_trinomial(n: int, a, b):
    """disc(t^n + a t + b) by the closed formula (independent of any gcd)."""
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    inner = n**n * b ** (n - 1) + (-1) ** (n - 1) * (n - 1) ** (n - 1) * a**n
    return sign * inner


def kang_tag(d: int, lam):
    """lam^d, the analytic invariant of the ordinary d-fold point (d >= 4)."""
    if d < 4:
        raise ValueError("the tag is defined for d >= 4")
    if not gamma_membership(d, lam):
        raise NotInGamma(f"lambda = {lam} is not in Gamma_{d}")
    return lam**d


def quartic_invariants(a, b, c, d, e):
    """Classical invariants (I, J) of a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4."""
    inv_i = 12 * a * e - 3 * b * d + c * c
    inv_j = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c**3
    return inv_i, inv_j


def quartic_cross_ratio_invariant(lam):
    """(I, J) of t^4 + lam t + 1; (I^3 : J^2) is the unordered cross-ratio class."""
    if not gamma_membership(4, lam):
        raise NotInGamma(f"lambda = {lam} is not in Gamma_4")
    zero = lam * 0
    return quartic_invariants(zero + 1, zero, zero, lam, zero + 1)


def same_quartic_class(ij1, ij2) -> bool:
    (i1, j1), (i2, j2) = ij1, ij2
    return i1**3 * j2**2 == i2**3 * j1**2


# singular locus certificate

def _shear(p: MultiPoly, c: int) -> MultiPoly:
    x, y = MultiPoly.gens(2)
    return p.compose([x + y * c, y])


def singular_locus_in_origin(curve: MultiPoly, rng: random.Random | None = None, tries: int = 8):
    """Certify Sing(V(curve)) is contained in {o} for a reduced plane curve.

    Returns True when certified, None when the test is inconclusive.  A
    homogeneous reduced curve is a union of lines through o.  Otherwise, for
    two shears x -> x + c y with lc_y constant, every singular point has
    sheared x-coordinate among the roots of gcd(Res_y(C, C_x), Res_y(C, C_y));
    if both gcds are powers of x, every singular point lies on two distinct
    lines through o.
    """
    if curve.nvars != 2:
        raise ValueError("bivariate curve expected")
    if curve.is_constant():
        return True
    if curve.is_homogeneous():
        return True
    rng = rng or random.Random(0)
    top = curve.homogeneous_part(curve.degree())
    used = []
    for _ in range(tries):
        c = rng.randint(1, 97)
        if c in used or not top.evaluate([Fraction(c), Fraction(1)]):
            continue
        cs = _shear(curve, c)
        r1 = resultant_univ(cs, cs.partial(0), 1)
        r2 = resultant_univ(cs, cs.partial(1), 1)
        g = gcd_poly(r1, r2)
        if not g.is_constant():
            u = to_dense(g, 0)
            if any(u[:-1]):
                return None
        used.append(c)
        if len(used) == 2:
            return True
    return None


def reduced_critical_curve(j: MultiPoly) -> MultiPoly:
    return squarefree_part(j)
