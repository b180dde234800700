"""Multivariate polynomials, resultants, Sturm sequences and Groebner bases."""

from .groebner import IdealBasis, buchberger, normal_form, radical_member, reduce_basis
from .multipoly import MultiPoly, PolyRing, grlex_key
from .parse import parse_poly
from .resultant import principal_subresultants, resultant_y, sylvester_matrix
from .sturm import isolate_real_roots, sturm_count, sturm_sequence

Monomial = tuple  # exponent vector, one entry per ring variable


def partial_derivative(f: MultiPoly, var) -> MultiPoly:
    return f.partial_derivative(var)


def substitute(f: MultiPoly, var, replacement) -> MultiPoly:
    return f.substitute(var, replacement)


def evaluate(f: MultiPoly, point):
    return f.evaluate(point)


__all__ = [
    "IdealBasis",
    "Monomial",
    "MultiPoly",
    "PolyRing",
    "buchberger",
    "evaluate",
    "grlex_key",
    "isolate_real_roots",
    "normal_form",
    "parse_poly",
    "partial_derivative",
    "principal_subresultants",
    "radical_member",
    "reduce_basis",
    "resultant_y",
    "sturm_count",
    "sturm_sequence",
    "substitute",
    "sylvester_matrix",
]
