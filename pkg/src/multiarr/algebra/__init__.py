"""Exact coefficient fields and sparse Laurent polynomial arithmetic."""

from .division import (
    INFINITE,
    NotDivisible,
    clear_denominators,
    divide_exact,
    divides,
    normalize_primitive,
    proportional_to,
    proportionality_constant,
    vanishing_order,
)
from .fields import (
    QQ,
    Cyclotomic,
    CyclotomicField,
    common_field,
    cyclotomic_coefficients,
    cyclotomic_field,
    field_for_roots,
    field_from_name,
    format_scalar,
    totient,
)
from .matrix import det_bareiss, det_cofactor
from .poly import PoleError, Poly, Ring, format_poly, parse_poly, polynomial_ring


def cyclotomic_polynomial(r: int, var: str = "z") -> Poly:
    """Phi_r as a univariate polynomial over Q."""
    coeffs = cyclotomic_coefficients(r)
    return Poly(Ring((var,), QQ), {(k,): c for k, c in enumerate(coeffs)})


def arith(op: str, a: Poly, b=None) -> Poly:
    """Dispatch ``add|sub|mul|neg|scalar_mul`` by name (CLI and test convenience)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        if not isinstance(b, Poly):
            raise TypeError("mul expects two polynomials; use scalar_mul")
        return a * b
    if op == "neg":
        return -a
    if op == "scalar_mul":
        if isinstance(b, Poly):
            raise TypeError("scalar_mul expects a scalar")
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: Poly, var) -> Poly:
    return f.diff(var)


def substitute(f: Poly, assignment, ring: Ring | None = None) -> Poly:
    return f.subs(assignment, ring)


__all__ = [
    "INFINITE",
    "NotDivisible",
    "PoleError",
    "Poly",
    "QQ",
    "Ring",
    "Cyclotomic",
    "CyclotomicField",
    "arith",
    "clear_denominators",
    "common_field",
    "cyclotomic_coefficients",
    "cyclotomic_field",
    "cyclotomic_polynomial",
    "det_bareiss",
    "det_cofactor",
    "divide_exact",
    "divides",
    "field_for_roots",
    "field_from_name",
    "format_poly",
    "format_scalar",
    "normalize_primitive",
    "parse_poly",
    "partial_derivative",
    "polynomial_ring",
    "proportional_to",
    "proportionality_constant",
    "substitute",
    "totient",
    "vanishing_order",
]
