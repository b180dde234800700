"""Étale images of polynomial pairs over finite fields, Q_p and the reals."""

from .algebra.fields import QQ, make_ext_field, parse_field, prime_field
from .algebra.padic import PadicField
from .etale import (
    EtaleCover,
    EtalePair,
    affine_image,
    artin_schreier_pair,
    base_ring,
    generic_pair,
    hensel_family_pair,
    intersect_images,
    load_corpus,
    parse_pair,
    power_pair,
    union,
    validate,
)
from .images import enumerate_finite, member_padic, padic_ball_audit, real_intervals

__version__ = "0.1.0"

__all__ = [
    "EtaleCover",
    "EtalePair",
    "PadicField",
    "QQ",
    "affine_image",
    "artin_schreier_pair",
    "base_ring",
    "enumerate_finite",
    "generic_pair",
    "hensel_family_pair",
    "intersect_images",
    "load_corpus",
    "make_ext_field",
    "member_padic",
    "padic_ball_audit",
    "parse_field",
    "parse_pair",
    "power_pair",
    "prime_field",
    "real_intervals",
    "union",
    "validate",
]
