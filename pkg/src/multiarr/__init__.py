"""Exact integral-expression bases for modules of multiderivations."""

__version__ = "0.1.0"

from .arrangements import (  # noqa: E402
    Multiarrangement,
    braid_coordinate,
    catalan_B2,
    cone,
    defining_polynomial,
    monomial_reflection,
    three_lines,
)
from .derivations import VectorField, apply, member_of, verify_basis  # noqa: E402
from .constructors import (  # noqa: E402
    HmrsParams,
    braid_basis,
    braid_coordinate_basis,
    eta,
    hmrs_basis,
    sigma,
    theta3,
    theta_multi,
    three_lines_basis,
)

__all__ = [
    "HmrsParams",
    "Multiarrangement",
    "VectorField",
    "apply",
    "braid_basis",
    "braid_coordinate",
    "braid_coordinate_basis",
    "catalan_B2",
    "cone",
    "defining_polynomial",
    "eta",
    "hmrs_basis",
    "member_of",
    "monomial_reflection",
    "sigma",
    "theta3",
    "theta_multi",
    "three_lines",
    "three_lines_basis",
    "verify_basis",
]
