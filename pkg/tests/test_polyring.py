import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from atlas.exactnum import root_of_unity
from atlas.polyring import (
    INFINITE,
    DivisionFailed,
    MultiPoly,
    gcd_poly,
    jacobian_determinant,
    monomial_staircase_codim,
    parse_poly,
    resultant_univ,
    squarefree_part,
    sylvester_resultant,
)
from atlas.polyring import modp, univar
from strategies import nonzero_polys, polys

x, y = MultiPoly.gens(2)


def test_parse_and_print_roundtrip():
    p = parse_poly("x^2*y - 3/2*x + zeta(4)*y^3 - 7")
    assert p.degree() == 3
    assert parse_poly(str(p), 2) == p
    assert parse_poly("x1^2 + x4", 4).nvars == 4
    assert str(parse_poly("0", 2)) == "0"


def test_arithmetic_basics():
    p = (x + y) ** 3
    assert p == x**3 + 3 * x**2 * y + 3 * x * y**2 + y**3
    assert p.divexact(x + y) == (x + y) ** 2
    with pytest.raises(DivisionFailed):
        p.divexact(x - y)
    assert p.partial(0) == 3 * (x + y) ** 2
    assert p.evaluate([1, 2]) == 27
    assert (x * y).is_homogeneous() and not (x + 1).is_homogeneous()


def test_compose_and_substitute():
    p = x**2 - y
    assert p.compose([x + y, x * y]) == (x + y) ** 2 - x * y
    assert p.substitute(1, 4) == x**2 - 4
    assert p.substitute_linear([[0, 1], [1, 0]]) == y**2 - x


def test_resultant_known_value():
    r = resultant_univ(y**2 - x, y - x, 1)
    assert r == x**2 - x
    assert sylvester_resultant(y**2 - x, y - x, 1) == r


def test_gcd_and_squarefree():
    g = gcd_poly((x - y) * (x + 2 * y) ** 2, (x + 2 * y) * (x**3 + y))
    assert g == x + 2 * y
    assert squarefree_part((x - y) ** 3 * (x * y + 1) ** 2 * 6) == ((x - y) * (x * y + 1)).monic()
    assert gcd_poly(MultiPoly.zero(2), x + 1) == x + 1
    i = root_of_unity(4)
    assert gcd_poly(x**2 + y**2, x - y * i) == x - y * i


def test_jacobian():
    assert jacobian_determinant([x**2, y**3]) == 6 * x * y**2
    a, b, c = MultiPoly.gens(3)
    assert jacobian_determinant([a, b + a**2, c * b]) == b


def test_staircase_examples():
    assert monomial_staircase_codim([(2, 0), (0, 3)]) == 6
    assert monomial_staircase_codim([(1, 0)], 2) is INFINITE
    assert monomial_staircase_codim([(0, 0)], 2) == 0
    assert monomial_staircase_codim([(2, 0, 0), (0, 3, 0), (0, 0, 4), (1, 1, 0)]) == 16


def test_univariate_helpers():
    a = [Fraction(-1), Fraction(0), Fraction(1)]  # t^2 - 1
    b = [Fraction(-1), Fraction(1)]  # t - 1
    assert univar.resultant(a, b) == 0
    assert univar.squarefree_degree(univar.mul(a, a)) == 2
    vals = [Fraction(k * k + 1) for k in range(3)]
    assert univar.interpolate_consecutive(vals, Fraction(0)) == [1, 0, 1]


def test_modp_field_and_batched_resultant():
    rng = random.Random(5)
    fld = modp.PrimeField.random(rng, 12)
    p = fld.p
    assert modp.is_prime(p) and (p - 1) % 12 == 0
    assert pow(fld.zeta, 12, p) == 1 and pow(fld.zeta, 6, p) != 1 and pow(fld.zeta, 4, p) != 1
    assert fld.reduce(root_of_unity(12)) == fld.zeta
    rows_a = np.array([[rng.randrange(p) for _ in range(4)] + [1] for _ in range(6)], dtype=np.int64)
    rows_b = np.array([[rng.randrange(p) for _ in range(3)] + [1] for _ in range(6)], dtype=np.int64)
    got = modp.batched_resultant(rows_a, rows_b, p)
    for ra, rb, r in zip(rows_a, rows_b, got):
        assert int(r) == modp.scalar_resultant([int(v) for v in ra], [int(v) for v in rb], p)


def test_modp_interpolation():
    p = 2147483659 if modp.is_prime(2147483659) else 2147483693
    coeffs = [5, 0, 3, 1]
    vals = np.array([sum(c * k**i for i, c in enumerate(coeffs)) % p for k in range(4)], dtype=np.int64)
    assert [int(v) for v in modp.interpolate_consecutive(vals, p)] == coeffs


def test_is_prime():
    primes = [n for n in range(60) if modp.is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert not modp.is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


# properties

@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == MultiPoly.zero(2)


@given(polys(), polys(), polys())
def test_compose_matches_substitute_linear(p, _a, _b):
    m = [[1, 2], [-1, 3]]
    assert p.substitute_linear(m) == p.compose([x + 2 * y, -x + 3 * y])


@given(nonzero_polys(max_deg=2), nonzero_polys(max_deg=2))
def test_subresultant_matches_sylvester(p, q):
    assume(p.degree_in(1) >= 1 and q.degree_in(1) >= 1)
    assert resultant_univ(p, q, 1) == sylvester_resultant(p, q, 1)


@given(nonzero_polys(max_deg=2, max_terms=3), nonzero_polys(max_deg=2, max_terms=3), nonzero_polys(max_deg=2, max_terms=3))
def test_resultant_gcd_duality(a, b, h):
    assume(h.degree_in(1) >= 1)
    p, q = a * h, b * h
    assume(p.degree_in(1) >= 1 and q.degree_in(1) >= 1)
    assert not resultant_univ(p, q, 1)
    assert gcd_poly(p, q).degree_in(1) >= 1


@given(nonzero_polys(max_deg=2), nonzero_polys(max_deg=2))
def test_nonzero_resultant_means_no_common_factor(p, q):
    assume(p.degree_in(1) >= 1 and q.degree_in(1) >= 1)
    if resultant_univ(p, q, 1):
        assert gcd_poly(p, q).degree_in(1) == 0


@given(nonzero_polys(max_deg=2, max_terms=4))
def test_squarefree_of_square(p):
    assume(not p.is_constant())
    assert squarefree_part(p * p) == squarefree_part(p)
    assert p.divides(squarefree_part(p) ** max(1, p.degree()))


def _brute_staircase(gens, n):
    box = [max(g[i] for g in gens if sum(g) == g[i]) for i in range(n)]
    count = 0
    for e in itertools.product(*[range(b) for b in box]):
        if not any(all(e[i] >= g[i] for i in range(n)) for g in gens):
            count += 1
    return count


@given(
    st.lists(st.integers(1, 5), min_size=3, max_size=3),
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)), max_size=4),
)
def test_staircase_matches_brute_force(pure, mixed):
    n = 3
    gens = [tuple(pure[i] if j == i else 0 for j in range(n)) for i in range(n)]
    gens += [m for m in mixed if sum(m) > 0]
    assert monomial_staircase_codim(gens, n) == _brute_staircase(gens, n)
