"""Projective dimension of quadric-generated ideals: polynomial arithmetic,
Groebner bases, minimal free resolutions and exactness certificates."""

from .polycore import (DEFAULT_MODULUS, MonomialOrder, ParseError, Polynomial,
                       PolynomialRing, PrimeField, RingMismatchError)
from .groebner import GroebnerBasis, Ideal, buchberger, normal_form

__all__ = [
    "DEFAULT_MODULUS", "MonomialOrder", "ParseError", "Polynomial", "PolynomialRing",
    "PrimeField", "RingMismatchError", "GroebnerBasis", "Ideal", "buchberger", "normal_form",
]
