"""Word, normal-form, finite-quotient and Alexander polynomial engines."""

from .alexander import LaurentPolynomial, alexander_polynomial
from .quotients import FiniteQuotient, find_quotients, quotient_eval
from .torus import TorusGroup, torus_normal_form, torus_peripheral_membership
from .words import Word, free_reduce

__all__ = [
    "FiniteQuotient",
    "LaurentPolynomial",
    "TorusGroup",
    "Word",
    "alexander_polynomial",
    "find_quotients",
    "free_reduce",
    "quotient_eval",
    "torus_normal_form",
    "torus_peripheral_membership",
]
