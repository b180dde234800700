"""Exact arithmetic for the supported field contexts."""

from fractions import Fraction as BigRational

from .fields import (
    QQ,
    FiniteField,
    FqElement,
    Rationals,
    canonical_modulus,
    embed,
    frobenius,
    is_irreducible_mod_p,
    is_square,
    make_ext_field,
    minimal_polynomial,
    norm_to_prime,
    parse_field,
    prime_field,
)
from .padic import PadicField, PadicNumber

ExtFieldElement = FqElement

__all__ = [
    "BigRational",
    "ExtFieldElement",
    "FiniteField",
    "FqElement",
    "PadicField",
    "PadicNumber",
    "QQ",
    "Rationals",
    "canonical_modulus",
    "embed",
    "frobenius",
    "is_irreducible_mod_p",
    "is_square",
    "make_ext_field",
    "minimal_polynomial",
    "norm_to_prime",
    "parse_field",
    "prime_field",
]
