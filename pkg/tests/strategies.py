from fractions import Fraction

from hypothesis import strategies as st

from atlas.exactnum import Cyclotomic
from atlas.polyring import MultiPoly

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))


def cyclotomics(order: int):
    n = order
    return st.builds(
        lambda cs, den: Cyclotomic(n, cs, den),
        st.lists(st.integers(-5, 5), min_size=n, max_size=n),
        st.integers(1, 4),
    )


def polys(nvars: int = 2, max_deg: int = 3, max_terms: int = 5, coeffs=small_ints):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)])
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: MultiPoly(nvars, d))


def nonzero_polys(nvars: int = 2, max_deg: int = 3, max_terms: int = 5):
    return polys(nvars, max_deg, max_terms).filter(bool)
