"""Multiarrangements: affine/linear forms with multiplicities, and the families
used throughout the package."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .algebra import QQ, Poly, Ring, field_for_roots, field_from_name


@dataclass(frozen=True)
class LinearForm:
    """sum(coeffs[i] * x_i) + constant, normalized so the first nonzero coefficient is 1."""

    coeffs: tuple
    constant: object = 0

    def __post_init__(self):
        pivot = next((c for c in self.coeffs if c), None)
        if pivot is None:
            raise ValueError("a hyperplane needs a nonzero linear part")
        if pivot != 1:
            inv = Fraction(1, pivot) if isinstance(pivot, int) else 1 / pivot
            object.__setattr__(self, "coeffs", tuple(_simplify(c * inv) for c in self.coeffs))
            object.__setattr__(self, "constant", _simplify(self.constant * inv))

    @classmethod
    def from_poly(cls, f: Poly) -> "LinearForm":
        if not f.is_polynomial() or (f.degree() or 0) > 1:
            raise ValueError(f"{f} is not affine-linear")
        n = f.ring.nvars
        coeffs = [0] * n
        for e, c in f.terms.items():
            if any(e):
                coeffs[e.index(1)] = c
        return cls(tuple(coeffs), f.constant_term())

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def is_central(self) -> bool:
        return not self.constant

    def to_poly(self, ring: Ring) -> Poly:
        if ring.nvars != self.dim:
            raise ValueError(f"form in {self.dim} variables, ring has {ring.nvars}")
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = [0] * ring.nvars
                e[i] = 1
                terms[tuple(e)] = c
        if self.constant:
            terms[(0,) * ring.nvars] = self.constant
        return Poly(ring, terms)

    def homogenize(self) -> "LinearForm":
        """The coned form: the constant becomes the coefficient of a new last variable."""
        return LinearForm(self.coeffs + (self.constant,), 0)


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class Multiarrangement:
    """Hyperplanes with nonnegative multiplicities, over Q or Q(zeta_r)."""

    names: tuple[str, ...]
    hyperplanes: tuple[tuple[LinearForm, int], ...]
    field: object = QQ
    label: str = dc_field(default="", compare=False)

    def __post_init__(self):
        seen = set()
        for form, mult in self.hyperplanes:
            if form.dim != len(self.names):
                raise ValueError(f"form of dimension {form.dim} in a {len(self.names)}-dim arrangement")
            if mult < 0:
                raise ValueError("multiplicities must be nonnegative")
            key = (form.coeffs, form.constant)
            if key in seen:
                raise ValueError(f"proportional hyperplanes repeated: {form}")
            seen.add(key)

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def ring(self) -> Ring:
        return Ring(self.names, self.field)

    @property
    def is_central(self) -> bool:
        return all(form.is_central for form, _ in self.hyperplanes)

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.hyperplanes)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def forms(self) -> list[Poly]:
        ring = self.ring
        return [form.to_poly(ring) for form, _ in self.hyperplanes]

    def multiplicities(self) -> list[int]:
        return [m for _, m in self.hyperplanes]

    def to_json(self) -> dict:
        ring = self.ring
        return {
            "dim": self.dim,
            "field": self.field.name,
            "variables": list(self.names),
            "hyperplanes": [
                {"form": str(form.to_poly(ring)), "mult": mult} for form, mult in self.hyperplanes
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Multiarrangement":
        fld = field_from_name(data.get("field", "Q"))
        names = tuple(data.get("variables") or (f"x{i}" for i in range(1, data["dim"] + 1)))
        if len(names) != data["dim"]:
            raise ValueError("variables do not match dim")
        ring = Ring(names, fld)
        hyperplanes = tuple(
            (LinearForm.from_poly(ring.parse(h["form"])), int(h["mult"])) for h in data["hyperplanes"]
        )
        return cls(names, hyperplanes, fld)


def _names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def _unit(n: int, i: int) -> list:
    v = [0] * n
    v[i] = 1
    return v


def coordinate_form(n: int, i: int) -> LinearForm:
    return LinearForm(tuple(_unit(n, i)))


def difference_form(n: int, i: int, j: int, scale=1) -> LinearForm:
    """x_i - scale * x_j."""
    v = _unit(n, i)
    v[j] = -scale
    return LinearForm(tuple(v))


def three_lines(p: int, q: int, r: int) -> Multiarrangement:
    """x1^p x2^q (x1 - x2)^r."""
    if min(p, q, r) < 0:
        raise ValueError("multiplicities must be nonnegative")
    hyps = ((coordinate_form(2, 0), p), (coordinate_form(2, 1), q), (difference_form(2, 0, 1), r))
    return Multiarrangement(_names(2), hyps, QQ, f"three_lines({p},{q},{r})")


def braid_coordinate(a: Sequence[int], b: int, with_coordinates: bool = True) -> Multiarrangement:
    """prod x_i^(a_i+b+1) * prod_{i<j} (x_i - x_j)^(a_i+a_j+1); the coordinate
    factors are omitted when ``with_coordinates`` is false."""
    n = len(a)
    if n < 2:
        raise ValueError("need at least two variables")
    hyps = []
    if with_coordinates:
        hyps += [(coordinate_form(n, i), a[i] + b + 1) for i in range(n)]
    hyps += [
        (difference_form(n, i, j), a[i] + a[j] + 1) for i in range(n) for j in range(i + 1, n)
    ]
    label = f"braid_coordinate({list(a)},{b})" if with_coordinates else f"braid({list(a)})"
    return Multiarrangement(_names(n), tuple(hyps), QQ, label)


def monomial_reflection(r: int, p: int, ell: int, m: Sequence[int], u: int) -> Multiarrangement:
    """prod x_i^(m_i) * prod_{i<j} (x_i^r - x_j^r)^u, stored as the r linear
    factors x_i - zeta^k x_j of each pair."""
    if r < 2 or ell < 2:
        raise ValueError("need r >= 2 and ell >= 2")
    if p not in (1, r):
        raise ValueError(f"only G(r,1,ell) and G(r,r,ell) are supported, got p={p}")
    if len(m) != ell:
        raise ValueError("one coordinate multiplicity per variable")
    fld = field_for_roots(r)
    roots = [(-1) ** k for k in range(r)] if fld == QQ else [fld.root_of_unity(k) for k in range(r)]
    hyps = [(coordinate_form(ell, i), m[i]) for i in range(ell)]
    for i in range(ell):
        for j in range(i + 1, ell):
            for k in range(r):
                hyps.append((difference_form(ell, i, j, roots[k]), u))
    if fld != QQ:
        hyps = [(LinearForm(tuple(fld(c) for c in f.coeffs), fld(f.constant)), mult) for f, mult in hyps]
    return Multiarrangement(_names(ell), tuple(hyps), fld, f"G({r},{p},{ell}) m={list(m)} u={u}")


def reflection_multiplicity(r: int, p: int, ell: int, kind: str, scale: int = 1) -> Multiarrangement:
    """The named multiplicities beta, delta_r and omega on the reflection
    arrangement of G(r, p, ell), multiplied by ``scale``."""
    if kind == "beta":
        coord, diff = 1, 0
    elif kind == "delta":
        coord, diff = 0, 1
    elif kind == "omega":
        coord, diff = (r // p if p < r else 0), 2
    else:
        raise ValueError(f"unknown multiplicity {kind!r}")
    return monomial_reflection(r, p, ell, [scale * coord] * ell, scale * diff)


def catalan_B2(m: int) -> Multiarrangement:
    """Affine arrangement x_i - k, x1 + x2 - k, x1 - x2 - k for -m <= k <= m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    hyps = []
    for lin in ((1, 0), (0, 1), (1, 1), (1, -1)):
        for k in range(-m, m + 1):
            hyps.append((LinearForm(lin, -k), 1))
    return Multiarrangement(_names(2), tuple(hyps), QQ, f"Cat(B2,{m})")


def cone(arr: Multiarrangement, var: str = "z") -> Multiarrangement:
    """Central arrangement in one more variable: homogenized forms plus ``var`` = 0."""
    hyps = [(form.homogenize(), mult) for form, mult in arr.hyperplanes]
    hyps.append((coordinate_form(arr.dim + 1, arr.dim), 1))
    return Multiarrangement(arr.names + (var,), tuple(hyps), arr.field, f"c{arr.label}")


def ziegler_restriction(arr: Multiarrangement, var: str = "z") -> Multiarrangement:
    """Restriction of a central arrangement onto the coordinate hyperplane ``var`` = 0.

    Each other hyperplane contributes its multiplicity to its intersection
    with ``var`` = 0.
    """
    j = arr.names.index(var)
    counts: dict = {}
    for form, mult in arr.hyperplanes:
        lin = form.coeffs[:j] + form.coeffs[j + 1:]
        if not any(lin):
            continue
        restricted = LinearForm(lin)
        counts[restricted] = counts.get(restricted, 0) + mult
    names = arr.names[:j] + arr.names[j + 1:]
    return Multiarrangement(names, tuple(counts.items()), arr.field, f"restriction of {arr.label}")


def defining_polynomial(arr: Multiarrangement) -> Poly:
    """prod alpha_H^m(H).  Forms sharing a multiplicity are multiplied first so
    that conjugate factors over Q(zeta_r) collapse before powering."""
    ring = arr.ring
    by_mult: dict[int, Poly] = {}
    for form, mult in arr.hyperplanes:
        if mult:
            by_mult[mult] = by_mult.get(mult, ring.one()) * form.to_poly(ring)
    out = ring.one()
    for mult in sorted(by_mult):
        out = out * by_mult[mult] ** mult
    return out


def product_with_line_check(a: Sequence[int], b: int) -> bool:
    """Pull back Q(braid_coordinate(a, b)) along x_i -> y_i - y_(l+1) and compare
    with the multi-braid arrangement in l+1 variables with a_(l+1) = b."""
    n = len(a)
    small = defining_polynomial(braid_coordinate(a, b, True))
    target = Ring(tuple(f"y{i}" for i in range(1, n + 2)), QQ)
    ys = target.gens()
    image = small.subs({f"x{i + 1}": ys[i] - ys[n] for i in range(n)}, target)
    big = defining_polynomial(braid_coordinate(list(a) + [b], 0, False)).to_ring(
        target, {f"x{i}": f"y{i}" for i in range(1, n + 2)}
    )
    return image == big


def describe(arr: Multiarrangement) -> str:
    ring = arr.ring
    parts = [f"({form.to_poly(ring)})^{mult}" for form, mult in arr.hyperplanes if mult]
    return " * ".join(parts) if parts else "1"


__all__ = [
    "LinearForm",
    "Multiarrangement",
    "braid_coordinate",
    "catalan_B2",
    "cone",
    "coordinate_form",
    "defining_polynomial",
    "describe",
    "difference_form",
    "monomial_reflection",
    "product_with_line_check",
    "reflection_multiplicity",
    "three_lines",
    "ziegler_restriction",
]
