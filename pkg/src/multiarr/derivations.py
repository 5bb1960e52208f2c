"""Polynomial vector fields, membership in D(A, m) and the Saito criterion."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    INFINITE,
    QQ,
    Poly,
    Ring,
    clear_denominators,
    common_field,
    det_bareiss,
    format_scalar,
    proportionality_constant,
    vanishing_order,
)
from .arrangements import Multiarrangement, defining_polynomial


class VectorField:
    """sum_j components[j] * d/dx_j, immutable."""

    __slots__ = ("ring", "components")

    def __init__(self, components: Sequence[Poly], ring: Ring | None = None):
        comps = list(components)
        if ring is None:
            if not comps:
                raise ValueError("a vector field needs a ring")
            ring = comps[0].ring
        if len(comps) != ring.nvars:
            raise ValueError(f"{len(comps)} components for {ring.nvars} variables")
        out = []
        for c in comps:
            if not isinstance(c, Poly):
                c = ring.const(c)
            if c.ring.names != ring.names:
                raise ValueError("component ring does not match")
            if c.ring.field != ring.field:
                c = c.to_field(ring.field)
            out.append(c)
        self.ring = ring
        self.components = tuple(out)

    @property
    def dim(self) -> int:
        return self.ring.nvars

    def __getitem__(self, j: int) -> Poly:
        return self.components[j]

    def __iter__(self):
        return iter(self.components)

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def is_homogeneous(self) -> bool:
        degs = {c.degree() for c in self.components if c}
        return len(degs) <= 1 and all(c.is_homogeneous() for c in self.components)

    def degree(self) -> int | None:
        """The common total degree of the components, ``None`` if not homogeneous."""
        if self.is_zero() or not self.is_homogeneous():
            return None
        return next(c.degree() for c in self.components if c)

    def _other(self, other: "VectorField") -> "VectorField":
        if not isinstance(other, VectorField):
            return NotImplemented
        if other.ring.names != self.ring.names:
            raise ValueError("vector fields over different variables")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        fld = common_field(self.ring.field, other.ring.field)
        a, b = self.to_field(fld), other.to_field(fld)
        return VectorField([x + y for x, y in zip(a, b)], a.ring)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return VectorField([-c for c in self.components], self.ring)

    def __mul__(self, other):
        """Multiply by a polynomial or scalar function."""
        if isinstance(other, Poly):
            fld = common_field(self.ring.field, other.ring.field)
            a, other = self.to_field(fld), other.to_field(fld)
            return VectorField([c * other for c in a.components], a.ring)
        return VectorField([c * other for c in self.components], self.ring)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.ring.names == other.ring.names and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def to_field(self, fld) -> "VectorField":
        if fld == self.ring.field:
            return self
        return VectorField([c.to_field(fld) for c in self.components], self.ring.with_field(fld))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"VectorField{self}"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.components]


def pullback(g: VectorField, matrix: Sequence[Sequence]) -> VectorField:
    """The field f with f(x) = B^-1 g(Bx), for an invertible rational matrix B.

    If g lies in D(A, m) then f lies in the pulled-back multiarrangement
    whose forms are alpha(Bx).
    """
    n = g.dim
    b = [[Fraction(v) for v in row] for row in matrix]
    inv = _inverse(b)
    ring = g.ring
    xs = ring.gens()
    image = {ring.names[i]: sum((xs[j] * b[i][j] for j in range(n) if b[i][j]), ring.zero()) for i in range(n)}
    moved = [c.subs(image, ring) for c in g.components]
    comps = []
    for j in range(n):
        acc = ring.zero()
        for k in range(n):
            if inv[j][k]:
                acc = acc + moved[k] * inv[j][k]
        comps.append(acc)
    return VectorField(comps, ring)


def _inverse(b: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(b)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("singular coordinate change")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def apply(delta: VectorField, f: Poly) -> Poly:
    """delta(f) = sum_j delta_j * df/dx_j."""
    if f.ring.names != delta.ring.names:
        raise ValueError(f"dimension mismatch: field on {delta.ring.names}, function on {f.ring.names}")
    fld = common_field(delta.ring.field, f.ring.field)
    delta, f = delta.to_field(fld), f.to_field(fld)
    out = f.ring.zero()
    for j, c in enumerate(delta.components):
        if c:
            d = f.diff(j)
            if d:
                out = out + c * d
    return out


def _apply_form(delta: VectorField, form: Poly) -> Poly:
    # delta(alpha) for an affine form is a combination of components
    out = form.ring.zero()
    for e, c in form.terms.items():
        if sum(e) == 1:
            out = out + delta.components[e.index(1)].to_field(form.ring.field) * c
    return out


def hyperplane_orders(delta: VectorField, arr: Multiarrangement) -> list:
    """Vanishing order of delta(alpha_H) along alpha_H, for every hyperplane."""
    if not delta.is_polynomial():
        raise ValueError("membership is defined for polynomial vector fields only")
    if delta.ring.names != arr.names:
        raise ValueError(f"field on {delta.ring.names}, arrangement on {arr.names}")
    fld = common_field(delta.ring.field, arr.field)
    delta = delta.to_field(fld)
    ring = Ring(arr.names, fld)
    return [vanishing_order(f, _apply_form(delta, f)) for f in (form.to_poly(ring) for form, _ in arr.hyperplanes)]


def member_of(delta: VectorField, arr: Multiarrangement) -> tuple[bool, list]:
    """(delta in D(A, m), per-hyperplane orders).  Multiplicity-0 hyperplanes impose nothing."""
    orders = hyperplane_orders(delta, arr)
    ok = all(o >= m for o, (_, m) in zip(orders, arr.hyperplanes) if m)
    return ok, orders


def saito_matrix(fields: Sequence[VectorField]) -> list[list[Poly]]:
    """Rows are fields: entry (i, j) = delta_i(x_j)."""
    return [list(f.components) for f in fields]


def saito_determinant(fields: Sequence[VectorField]) -> Poly:
    """det of the Saito matrix; rows over Q are scaled to integers first."""
    if not fields:
        raise ValueError("no fields")
    fld = QQ
    for f in fields:
        fld = common_field(fld, f.ring.field)
    rows = []
    scale = 1
    for f in fields:
        f = f.to_field(fld)
        if fld == QQ:
            denom = 1
            for c in f.components:
                _, k = clear_denominators(c)
                denom = denom * k // math.gcd(denom, k)
            rows.append([clear_denominators(c * denom)[0] if denom != 1 else c for c in f.components])
            scale *= denom
        else:
            rows.append(list(f.components))
    det = det_bareiss(rows)
    return det / scale if scale != 1 else det


def _json_order(o):
    return None if o == INFINITE else int(o)


@dataclass
class FreenessReport:
    verdict: str
    degrees: list
    multiplicity_total: int
    det_over_Q_constant: object
    orders: list
    members: list
    degree_sum_matches: bool
    determinant: Poly | None = dc_field(default=None, repr=False, compare=False)
    label: str = ""

    @property
    def is_basis(self) -> bool:
        return self.verdict == "basis"

    def to_json(self) -> dict:
        const = self.det_over_Q_constant
        return {
            "verdict": self.verdict,
            "degrees": list(self.degrees),
            "multiplicity_total": self.multiplicity_total,
            "det_over_Q_constant": None if const is None else format_scalar(const),
            "orders": [[_json_order(o) for o in row] for row in self.orders],
            "members": list(self.members),
            "degree_sum_matches": self.degree_sum_matches,
            "arrangement": self.label,
        }


def verify_basis(fields: Sequence[VectorField], arr: Multiarrangement) -> FreenessReport:
    """Saito's criterion: members, det(M) a nonzero multiple of Q(A, m).

    Verdicts in priority order: dependent, not_member, degree_mismatch, basis.
    """
    fields = list(fields)
    if len(fields) != arr.dim:
        raise ValueError(f"{len(fields)} fields for a {arr.dim}-dimensional arrangement")
    orders = []
    members = []
    for f in fields:
        if not f.is_polynomial():
            orders.append([None] * len(arr))
            members.append(False)
            continue
        ok, row = member_of(f, arr)
        orders.append(row)
        members.append(ok)
    degrees = [f.degree() for f in fields]
    total = arr.total_multiplicity
    degree_sum_matches = None not in degrees and sum(degrees) == total
    det = saito_determinant(fields) if all(f.is_polynomial() for f in fields) else None
    const = None
    if det:
        const = proportionality_constant(det, defining_polynomial(arr))
    if det is not None and not det:
        verdict = "dependent"
    elif not all(members):
        verdict = "not_member"
    elif const is None or not degree_sum_matches:
        verdict = "degree_mismatch"
    else:
        verdict = "basis"
    return FreenessReport(verdict, degrees, total, const, orders, members, degree_sum_matches, det, arr.label)


def homogenize_field(delta: VectorField, target_degree: int, var: str = "z") -> VectorField:
    """Pad each component to ``target_degree`` with powers of ``var``; the new
    ``var`` component is zero."""
    ring = delta.ring.extend(var)
    comps = [c.homogenize(target_degree, var, ring) for c in delta.components]
    comps.append(ring.zero())
    return VectorField(comps, ring)


def euler_field(n_or_ring) -> VectorField:
    ring = n_or_ring if isinstance(n_or_ring, Ring) else Ring(tuple(f"x{i}" for i in range(1, n_or_ring + 1)))
    return VectorField(ring.gens(), ring)


def unit_sum_field(n_or_ring) -> VectorField:
    ring = n_or_ring if isinstance(n_or_ring, Ring) else Ring(tuple(f"x{i}" for i in range(1, n_or_ring + 1)))
    return VectorField([ring.one()] * ring.nvars, ring)


__all__ = [
    "FreenessReport",
    "VectorField",
    "apply",
    "euler_field",
    "homogenize_field",
    "hyperplane_orders",
    "member_of",
    "pullback",
    "saito_determinant",
    "saito_matrix",
    "unit_sum_field",
    "verify_basis",
]
