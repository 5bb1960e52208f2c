"""Basic invariants of G(r,1,l) and G(r,r,l), their Jacobian, and the
primitive derivation D acting on polynomials and vector fields."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .algebra import (
    QQ,
    NotDivisible,
    Poly,
    det_bareiss,
    divide_exact,
    format_scalar,
    polynomial_ring,
    proportionality_constant,
)
from .constructors import eta_field, lambda_factory
from .derivations import VectorField


class NotPolynomialImage(ArithmeticError):
    """The Jacobian does not divide the Cramer numerator."""


def elementary_symmetric(values: list[Poly], i: int) -> Poly:
    ring = values[0].ring
    out = ring.zero()
    for combo in combinations(values, i):
        term = ring.one()
        for v in combo:
            term = term * v
        out = out + term
    return out


class BasicInvariants:
    """P_i = (-1)^i e_i(x^r) for i < l and P_l = (x_1...x_l)^(r/p).

    ``index`` is the 1-based position of the primitive derivation D = d/dP_index:
    l for p = 1 and l-1 for p = r.
    """

    def __init__(self, r: int, p: int, ell: int):
        if r < 2 or ell < 2:
            raise ValueError("need r >= 2 and l >= 2")
        if p not in (1, r):
            raise ValueError(f"p must be 1 or r, got {p}")
        self.r, self.p, self.ell = r, p, ell
        self.ring = polynomial_ring(ell, QQ)
        xs = self.ring.gens()
        powers = [x ** r for x in xs]
        self.P = [elementary_symmetric(powers, i) * (-1) ** i for i in range(1, ell)]
        self.P.append(self.ring.monomial((r // p,) * ell))
        self.index = ell if p == 1 else ell - 1
        # A[j][i] = dP_i/dx_j
        self.matrix = [[P.diff(j) for P in self.P] for j in range(ell)]
        self.jacobian = det_bareiss(self.matrix)
        col = self.index - 1
        self._cofactors = []
        for j in range(ell):
            minor = [[self.matrix[a][b] for b in range(ell) if b != col] for a in range(ell) if a != j]
            c = det_bareiss(minor)
            self._cofactors.append(c if (j + col) % 2 == 0 else -c)

    def expected_jacobian(self) -> Poly:
        xs = self.ring.gens()
        out = self.ring.monomial((self.r // self.p - 1,) * self.ell)
        for i, j in combinations(range(self.ell), 2):
            out = out * (xs[i] ** self.r - xs[j] ** self.r)
        return out

    def primitive_apply(self, f: Poly) -> Poly:
        """D f by Cramer's rule: replace column ``index`` of (dP_i/dx_j) by the
        gradient of f and divide the determinant exactly by the Jacobian."""
        if not f.is_polynomial():
            raise ValueError("D is applied to polynomials only")
        if f.ring.names != self.ring.names:
            raise ValueError("polynomial in the wrong variables")
        num = self.ring.zero()
        for j, c in enumerate(self._cofactors):
            d = f.diff(j)
            if d and c:
                num = num + d * c
        try:
            return divide_exact(num, self.jacobian)
        except NotDivisible as exc:
            raise NotPolynomialImage(f"Jacobian does not divide the numerator for {f}") from exc

    def apply_coefficientwise(self, g: Poly, var: str = "t") -> Poly:
        """Apply D to each coefficient of g viewed as a polynomial in ``var``."""
        ti = g.ring.index(var)
        groups: dict[int, dict] = {}
        for e, c in g.terms.items():
            groups.setdefault(e[ti], {})[e[:ti] + e[ti + 1:]] = c
        out = g.ring.zero()
        t = g.ring.gen(var)
        for k, terms in groups.items():
            image = self.primitive_apply(Poly(self.ring, terms))
            if image:
                out = out + image.to_ring(g.ring) * t ** k
        return out

    def nabla_D(self, eta: VectorField) -> VectorField:
        if not eta.is_polynomial():
            raise ValueError("nabla_D needs a polynomial vector field")
        return VectorField([self.primitive_apply(c) for c in eta.components], eta.ring)


def invariant_identities(r: int, p: int, ell: int) -> dict:
    inv = BasicInvariants(r, p, ell)
    lf = lambda_factory(r, ell)
    t = lf.t
    expansion = t ** (r * ell)
    for i, P in enumerate(inv.P[:-1], start=1):
        expansion = expansion + P.to_ring(lf.ring) * t ** (r * (ell - i))
    expansion = expansion + inv.P[-1].to_ring(lf.ring) ** p * (-1) ** ell
    const = proportionality_constant(inv.jacobian, inv.expected_jacobian()) if inv.jacobian else None
    return {
        "r": r,
        "p": p,
        "ell": ell,
        "lambda_expansion": expansion == lf.lam(1),
        "jacobian": const is not None,
        "jacobian_constant": None if const is None else format_scalar(const),
    }


def invariant_identities_check(r: int, p: int, ell: int) -> bool:
    out = invariant_identities(r, p, ell)
    return out["lambda_expansion"] and out["jacobian"]


def dual_basis_check(r: int, p: int, ell: int) -> bool:
    """D P_j is 1 for j = index and 0 otherwise."""
    inv = BasicInvariants(r, p, ell)
    for j, P in enumerate(inv.P, start=1):
        if inv.primitive_apply(P) != (inv.ring.one() if j == inv.index else inv.ring.zero()):
            return False
    return True


def lambda_law_check(r: int, p: int, ell: int, m: int) -> bool:
    """D lambda^m equals (-1)^l m lambda^(m-1) (p = 1) or m t^r lambda^(m-1) (p = r)."""
    if m < 1:
        raise ValueError("m must be positive")
    inv = BasicInvariants(r, p, ell)
    lf = lambda_factory(r, ell)
    lhs = inv.apply_coefficientwise(lf.lam(m))
    if p == 1:
        rhs = lf.lam(m - 1) * ((-1) ** ell * m)
    else:
        rhs = lf.t ** r * lf.lam(m - 1) * m
    return lhs == rhs


@dataclass
class Relation:
    m: int
    u: int
    kind: str
    status: str
    constant: object = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "u": self.u,
            "kind": self.kind,
            "status": self.status,
            "constant": None if self.constant is None else format_scalar(self.constant),
            "detail": self.detail,
        }


@dataclass
class PrimitiveReport:
    r: int
    p: int
    ell: int
    relations: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(rel.status != "failed" for rel in self.relations)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "p": self.p,
            "ell": self.ell,
            "ok": self.ok,
            "relations": [rel.to_json() for rel in self.relations],
        }


def _compare(inv: BasicInvariants, source: VectorField, target: VectorField, m: int, u: int, kind: str) -> Relation:
    if not source.is_polynomial() or not target.is_polynomial():
        return Relation(m, u, kind, "skipped", detail="non-polynomial source or target")
    try:
        image = inv.nabla_D(source)
    except NotPolynomialImage as exc:
        return Relation(m, u, kind, "failed", detail=str(exc))
    const = _field_constant(image, target)
    if const is None:
        return Relation(m, u, kind, "failed", detail="image not proportional to the target")
    return Relation(m, u, kind, "holds", const)


def _field_constant(a: VectorField, b: VectorField):
    """c with a == c*b componentwise, or None."""
    const = None
    for x, y in zip(a.components, b.components):
        if not x and not y:
            continue
        if not x or not y:
            return None
        c = proportionality_constant(x, y)
        if c is None or (const is not None and c != const):
            return None
        const = c
    return const


def verify_primitive_relations(r: int, p: int, ell: int, m_max: int, u_range=None) -> PrimitiveReport:
    """Check nabla_D eta_u^m against eta_u^(m-1) (p = 1) or eta_(u+1)^(m-1) (p = r),
    and for p = r the prefactor relation for P_l^(r-1) eta_(-m-1)^m."""
    inv = BasicInvariants(r, p, ell)
    if u_range is None:
        u_range = range(-m_max, ell)
    report = PrimitiveReport(r, p, ell)
    for m in range(1, m_max + 1):
        for u in u_range:
            source = eta_field(r, ell, m, u)
            target = eta_field(r, ell, m - 1, u if p == 1 else u + 1)
            report.relations.append(_compare(inv, source, target, m, u, "eta"))
        if p == r:
            pre = inv.P[-1] ** (r - 1)
            source = eta_field(r, ell, m, -m - 1) * pre
            target = eta_field(r, ell, m - 1, -m) * pre
            report.relations.append(_compare(inv, source, target, m, -m - 1, "prefactor"))
    return report


__all__ = [
    "BasicInvariants",
    "NotPolynomialImage",
    "PrimitiveReport",
    "Relation",
    "dual_basis_check",
    "elementary_symmetric",
    "invariant_identities",
    "invariant_identities_check",
    "lambda_law_check",
    "verify_primitive_relations",
]
