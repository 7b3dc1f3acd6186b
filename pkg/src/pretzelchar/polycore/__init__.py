"""Exact polynomial kernel: rationals, multivariate polynomials, resultants, roots."""

from .multipoly import (
    CANONICAL_ORDER,
    MultiPoly,
    PolyFunction,
    Rational,
    canonical_vars,
)
from .normalize import ContentPrimitive, content_primitive, poly_gcd, primitive, square_free
from .resultant import (
    bareiss_det,
    resultant_bareiss,
    resultant_modular,
    resultant_uni,
    sylvester_matrix,
)
from .roots import roots_from_coeffs, scaled_residuals, uni_roots


def poly_arith(a, b, op):
    """Dispatch ``add``/``sub``/``mul``/``pow`` (``b`` is the exponent for pow)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def substitute(p, var, value):
    return p.substitute(var, value)


def evaluate(p, assignment):
    return p.evaluate(assignment)


__all__ = [
    "CANONICAL_ORDER",
    "ContentPrimitive",
    "MultiPoly",
    "PolyFunction",
    "Rational",
    "bareiss_det",
    "canonical_vars",
    "content_primitive",
    "evaluate",
    "poly_arith",
    "poly_gcd",
    "primitive",
    "resultant_bareiss",
    "resultant_modular",
    "resultant_uni",
    "roots_from_coeffs",
    "scaled_residuals",
    "square_free",
    "substitute",
    "sylvester_matrix",
    "uni_roots",
]
