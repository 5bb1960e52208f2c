import pytest
import sympy as sp

from multiarr.algebra import Ring, proportional_to
from multiarr.constructors import eta_field, lambda_factory
from multiarr.derivations import VectorField
from multiarr.invariants import (
    BasicInvariants,
    NotPolynomialImage,
    dual_basis_check,
    invariant_identities,
    invariant_identities_check,
    lambda_law_check,
    verify_primitive_relations,
)

from oracle import sympy_det, to_sympy

X1, X2 = sp.symbols("x1 x2")


def test_invariants_r2_p1():
    inv = BasicInvariants(2, 1, 2)
    x1, x2 = inv.ring.gens()
    assert inv.P[0] == -(x1 ** 2 + x2 ** 2)
    assert inv.P[1] == x1 ** 2 * x2 ** 2
    assert inv.jacobian == -4 * x1 * x2 * (x1 ** 2 - x2 ** 2)
    assert invariant_identities_check(2, 1, 2)


def test_invariants_r2_pr():
    inv = BasicInvariants(2, 2, 2)
    x1, x2 = inv.ring.gens()
    assert inv.P[1] == x1 * x2
    assert proportional_to(inv.jacobian, x1 ** 2 - x2 ** 2)
    assert invariant_identities(3, 1, 2)["lambda_expansion"]


@pytest.mark.parametrize("r,p,ell", [(2, 1, 3), (3, 3, 3), (4, 1, 2), (4, 4, 3)])
def test_jacobian_matches_sympy(r, p, ell):
    inv = BasicInvariants(r, p, ell)
    rows = [[to_sympy(e) for e in row] for row in inv.matrix]
    assert sp.expand(to_sympy(inv.jacobian) - sympy_det(rows)) == 0


def test_last_invariant_power():
    for r in (2, 3, 4):
        for p in (1, r):
            inv = BasicInvariants(r, p, 3)
            xs = inv.ring.gens()
            assert inv.P[-1] ** p == (xs[0] * xs[1] * xs[2]) ** r


@pytest.mark.parametrize("r", [2, 3, 4])
@pytest.mark.parametrize("ell", [2, 3])
def test_dual_basis(r, ell):
    for p in (1, r):
        inv = BasicInvariants(r, p, ell)
        for j, P in enumerate(inv.P, start=1):
            expected = 1 if j == inv.index else 0
            assert inv.primitive_apply(P) == inv.ring.const(expected)
        assert dual_basis_check(r, p, ell)


def test_primitive_apply_against_sympy_chain_rule():
    # D f is df/dP_l with the other invariants held fixed; check via sympy inverse Jacobian
    inv = BasicInvariants(2, 1, 2)
    f = inv.P[0] ** 2 * inv.P[1] + inv.P[1] ** 3
    image = inv.primitive_apply(f)
    P1, P2 = sp.symbols("P1 P2")
    expected = sp.diff(P1 ** 2 * P2 + P2 ** 3, P2).subs({P1: to_sympy(inv.P[0]), P2: to_sympy(inv.P[1])})
    assert sp.expand(to_sympy(image) - expected) == 0


def test_primitive_apply_rejects_non_invariant():
    inv = BasicInvariants(2, 1, 2)
    x1, _ = inv.ring.gens()
    with pytest.raises(NotPolynomialImage):
        inv.primitive_apply(x1)
    with pytest.raises(ValueError):
        BasicInvariants(4, 2, 2)


def test_lambda_law_examples():
    inv = BasicInvariants(2, 1, 2)
    lf = lambda_factory(2, 2)
    assert inv.apply_coefficientwise(lf.lam(1)) == lf.ring.one()
    for r in (2, 3):
        for ell in (2, 3):
            for p in (1, r):
                for m in (1, 2, 3):
                    assert lambda_law_check(r, p, ell, m)


def test_nabla_of_constant_field_is_zero():
    inv = BasicInvariants(3, 1, 2)
    ring = inv.ring
    assert inv.nabla_D(VectorField([ring.const(2), ring.const(-1)], ring)).is_zero()


def test_nabla_examples():
    inv = BasicInvariants(2, 1, 2)
    assert proportional_to(inv.nabla_D(eta_field(2, 2, 1, 0)).components[0], eta_field(2, 2, 0, 0).components[0])
    inv = BasicInvariants(2, 2, 2)
    img = inv.nabla_D(eta_field(2, 2, 1, -1))
    tgt = eta_field(2, 2, 0, 0)
    assert all(proportional_to(a, b) for a, b in zip(img.components, tgt.components))


@pytest.mark.parametrize(
    "r,p,ell,m_max,u_range",
    [(2, 1, 2, 2, range(0, 2)), (3, 3, 2, 1, range(-1, 0)), (2, 2, 3, 1, range(-1, 1))],
)
def test_primitive_relation_examples(r, p, ell, m_max, u_range):
    rep = verify_primitive_relations(r, p, ell, m_max, u_range)
    held = [rel for rel in rep.relations if rel.kind == "eta" and rel.status == "holds"]
    assert rep.ok and len(held) == m_max * len(u_range)


def test_primitive_report_json():
    data = verify_primitive_relations(2, 2, 2, 1).to_json()
    assert data["ok"] and {"m", "u", "kind", "status", "constant", "detail"} == set(data["relations"][0])
    assert any(rel["kind"] == "prefactor" for rel in data["relations"])
