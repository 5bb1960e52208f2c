"""Deformed integral expressions for the extended Catalan arrangement of type B2."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QQ, Poly, Ring, divides, normalize_primitive
from .arrangements import catalan_B2, cone
from .calculus import antiderivative_at
from .derivations import FreenessReport, VectorField, euler_field, homogenize_field, member_of, verify_basis

XY = Ring(("x", "y"), QQ)
_XYT = Ring(("x", "y", "t"), QQ)


class ShapeError(AssertionError):
    """f^m_i does not have the expected sum_k c_k x^(2p+1-2k) y^(2k) shape."""


@dataclass(frozen=True)
class FmiPoly:
    """f^m_i(x, y) = integral_0^x t^(2i) (t^2 - x^2)^m (t^2 - y^2)^m dt."""

    m: int
    i: int
    poly: Poly
    coeffs: tuple

    @property
    def p(self) -> int:
        return 2 * self.m + self.i

    @property
    def degree(self) -> int:
        return 2 * self.p + 1

    def normalized(self) -> tuple[Poly, object]:
        return normalize_primitive(self.poly)

    def normalized_coeffs(self) -> tuple[int, ...]:
        g, _ = self.normalized()
        return tuple(int(g.coefficient((self.degree - 2 * k, 2 * k))) for k in range(self.m + 1))

    def alternating(self) -> bool:
        signs = [c > 0 for c in self.coeffs]
        return all(a != b for a, b in zip(signs, signs[1:]))


def f_poly(m: int, i: int) -> FmiPoly:
    if m < 0 or i < 0:
        raise ValueError("m and i must be nonnegative")
    x, y, t = _XYT.gens()
    integrand = t ** (2 * i) * ((t ** 2 - x ** 2) * (t ** 2 - y ** 2)) ** m
    poly = antiderivative_at(integrand, "x")
    deg = 4 * m + 2 * i + 1
    expected = {(deg - 2 * k, 2 * k) for k in range(m + 1)}
    if set(poly.terms) != expected:
        raise ShapeError(f"f^{m}_{i} has support {sorted(poly.terms)}")
    coeffs = tuple(poly.terms[(deg - 2 * k, 2 * k)] for k in range(m + 1))
    return FmiPoly(m, i, poly, coeffs)


def shifted_power(base_shift, var: str, n: int, direction: str, ring: Ring = XY) -> Poly:
    """(var + base_shift)^(falling n) or ^(rising n); n = 0 gives 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if direction not in ("falling", "rising"):
        raise ValueError(f"direction must be 'falling' or 'rising', got {direction!r}")
    step = -1 if direction == "falling" else 1
    v = ring.gen(var)
    out = ring.one()
    for j in range(n):
        out = out * (v + (base_shift + step * j))
    return out


@dataclass(frozen=True)
class DeformedPoly:
    source: FmiPoly
    poly: Poly
    coeffs: tuple


def deform_coefficients(coeffs, p: int, ring: Ring = XY, names=("x", "y")) -> Poly:
    """sum_k c_k (x+p-k)^(falling 2p+1-2k) (y+p-m)^(falling k) (y-p+m)^(rising k)."""
    m = len(coeffs) - 1
    if p < m:
        raise ValueError("the deformation needs p >= m")
    vx, vy = names
    out = ring.zero()
    for k, c in enumerate(coeffs):
        if not c:
            continue
        term = shifted_power(p - k, vx, 2 * p + 1 - 2 * k, "falling", ring)
        term = term * shifted_power(p - m, vy, k, "falling", ring)
        term = term * shifted_power(-p + m, vy, k, "rising", ring)
        out = out + term * c
    return out


def deform(f: FmiPoly) -> DeformedPoly:
    """Deformation built from the content-1 coefficients of f."""
    coeffs = f.normalized_coeffs()
    return DeformedPoly(f, deform_coefficients(coeffs, f.p), coeffs)


def swap(g: Poly) -> Poly:
    """g(y, x)."""
    return Poly(g.ring, {(e[1], e[0]): c for e, c in g.terms.items()}, _trusted=True)


def shifted_product(form: Poly, m: int, ring: Ring = XY) -> Poly:
    """prod_{k=-m..m} (form - k)."""
    out = ring.one()
    for k in range(-m, m + 1):
        out = out * (form - k)
    return out


def deformed(m: int, i: int) -> Poly:
    return deform(f_poly(m, i)).poly


def conjecture_check(m: int, i: int) -> dict:
    g = deformed(m, i)
    gs = swap(g)
    x, y = XY.gens()
    return {
        "m": m,
        "i": i,
        "x_div": divides(shifted_product(x, m), g),
        "sum_div": divides(shifted_product(x + y, m), g + gs),
        "diff_div": divides(shifted_product(x - y, m), g - gs),
    }


def check_passed(entry: dict) -> bool:
    return entry["x_div"] and entry["sum_div"] and entry["diff_div"]


def top_part_matches(m: int, i: int) -> bool:
    """The top homogeneous part of the deformation is the content-1 form of f."""
    f = f_poly(m, i)
    g, _ = f.normalized()
    return deform(f).poly.homogeneous_part(f.degree) == g


def catalan_field(m: int, i: int, ring: Ring | None = None) -> VectorField:
    """eta~ = f~(x, y) d/dx + f~(y, x) d/dy, over the variables of ``ring``."""
    ring = ring or catalan_B2(m).ring
    g = deformed(m, i)
    rename = dict(zip(XY.names, ring.names))
    return VectorField([g.to_ring(ring, rename), swap(g).to_ring(ring, rename)], ring)


class CatalanPreconditionError(ValueError):
    pass


def catalan_basis_check(m: int) -> FreenessReport:
    """Saito check of (Euler, homogenized eta~_0, homogenized eta~_1) on the cone of Cat(B2, m)."""
    failed = [c for c in (conjecture_check(m, 0), conjecture_check(m, 1)) if not check_passed(c)]
    if failed:
        parts = [f"(m={c['m']}, i={c['i']}): " + ", ".join(k for k in ("x_div", "sum_div", "diff_div") if not c[k]) for c in failed]
        raise CatalanPreconditionError("divisibility failed for " + "; ".join(parts))
    affine = catalan_B2(m)
    fields = [catalan_field(m, 0, affine.ring), catalan_field(m, 1, affine.ring)]
    for i, f in enumerate(fields):
        ok, _ = member_of(f, affine)
        if not ok:
            raise CatalanPreconditionError(f"eta~_{i} is not in D(Cat(B2, {m}))")
    coned = cone(affine)
    homog = [homogenize_field(f, 4 * m + 1 + 2 * i) for i, f in enumerate(fields)]
    return verify_basis([euler_field(coned.ring)] + homog, coned)


__all__ = [
    "CatalanPreconditionError",
    "DeformedPoly",
    "FmiPoly",
    "ShapeError",
    "XY",
    "catalan_basis_check",
    "catalan_field",
    "check_passed",
    "conjecture_check",
    "deform",
    "deform_coefficients",
    "deformed",
    "f_poly",
    "shifted_power",
    "shifted_product",
    "swap",
    "top_part_matches",
]
