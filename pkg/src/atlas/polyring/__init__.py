"""Sparse multivariate polynomials and elimination tools."""

from .multipoly import (
    MINUS_INFINITY,
    DivisionFailed,
    MultiPoly,
    parse_poly,
    poly_from_iter,
    variable_names,
)
from .elimination import (
    INFINITE,
    content_in,
    gcd_poly,
    jacobian_determinant,
    monomial_staircase_codim,
    prem,
    primitive_part_in,
    resultant_univ,
    squarefree_part,
    sylvester_resultant,
)

__all__ = [
    "MINUS_INFINITY",
    "INFINITE",
    "DivisionFailed",
    "MultiPoly",
    "parse_poly",
    "poly_from_iter",
    "variable_names",
    "content_in",
    "gcd_poly",
    "jacobian_determinant",
    "monomial_staircase_codim",
    "prem",
    "primitive_part_in",
    "resultant_univ",
    "squarefree_part",
    "sylvester_resultant",
]
