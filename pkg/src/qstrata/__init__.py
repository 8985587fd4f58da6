"""Exact computations with quantum unipotent minors, convex orders on roots and
the Richardson strata of a quantum coordinate ring, in the shuffle-word model."""

from __future__ import annotations

from .cartan import CartanDatum, Weight, build_cartan, form, parse_cartan, positive_roots
from .errors import DomainError
from .laurent import LaurentPoly, RatFunc, qbinom, qfact, qint, qnum
from .minors import COMMUTATION_SIGN, minor, minor_by_recursion
from .shuffle import ShuffleElement, shuffle_product
from .weyl import WeylElement, bruhat_le, longest_element, reduced_words

__all__ = [
    "COMMUTATION_SIGN",
    "CartanDatum",
    "DomainError",
    "LaurentPoly",
    "RatFunc",
    "ShuffleElement",
    "Weight",
    "WeylElement",
    "bruhat_le",
    "build_cartan",
    "form",
    "longest_element",
    "minor",
    "minor_by_recursion",
    "parse_cartan",
    "positive_roots",
    "qbinom",
    "qfact",
    "qint",
    "qnum",
    "reduced_words",
    "shuffle_product",
]
