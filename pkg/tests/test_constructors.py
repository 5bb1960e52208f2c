from fractions import Fraction
from itertools import permutations

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from multiarr.algebra import Ring, normalize_primitive, proportionality_constant
from multiarr.arrangements import braid_coordinate, defining_polynomial, three_lines
from multiarr.constructors import (
    HmrsParams,
    LambdaFactory,
    b_family,
    braid_basis,
    braid_coordinate_basis,
    d_family,
    eta,
    eta_field,
    expected_exponents,
    hmrs_basis,
    sigma,
    theta3,
    theta_multi,
    three_lines_basis,
    three_lines_recipe,
)
from multiarr.derivations import VectorField, euler_field, member_of, saito_determinant, unit_sum_field, verify_basis

from oracle import to_sympy

R = Ring(("x1", "x2"))
x1, x2 = R.gens()
T, X1, X2 = sp.symbols("t x1 x2")


def test_theta3_small_cases():
    assert theta3(0, 0, 0) == euler_field(2)
    assert theta3(0, 0, 1) == VectorField([x1 ** 2 * Fraction(1, 2), x2 ** 2 * Fraction(1, 2)], R)
    assert theta3(1, 0, 0) == VectorField([x1 ** 2 * Fraction(1, 2) - x1 * x2, -x2 ** 2 * Fraction(1, 2)], R)
    assert member_of(theta3(1, 0, 0), three_lines(1, 2, 2))[0]


@pytest.mark.parametrize("a,b,c", [(2, 1, 0), (0, 3, 2), (3, 3, 3)])
def test_theta3_against_sympy_integral(a, b, c):
    f = theta3(a, b, c)
    integrand = T ** c * (T - X1) ** b * (T - X2) ** a
    for comp, X in zip(f.components, (X1, X2)):
        assert sp.expand(to_sympy(comp) - sp.integrate(integrand, (T, 0, X))) == 0


def test_theta3_membership_grid():
    for a in range(4):
        for b in range(4):
            for c in range(4):
                f = theta3(a, b, c)
                assert f.degree() == a + b + c + 1
                assert member_of(f, three_lines(b + c + 1, a + c + 1, a + b + 1))[0], (a, b, c)


def test_theta_independence_lemma():
    for a in [(i, j) for i in range(3) for j in range(3)]:
        for b1 in range(4):
            for b2 in range(b1 + 1, 4):
                assert saito_determinant([theta_multi(a, b1), theta_multi(a, b2)])


def test_three_lines_examples():
    assert three_lines_basis(1, 1, 1) == [theta3(0, 0, 0), theta3(0, 0, 1)]
    assert three_lines_basis(2, 2, 2) == [theta3(1, 0, 0) * x1, theta3(0, 1, 0) * x2]
    pair = three_lines_basis(1, 1, 2)
    assert pair[0] == VectorField([x1 * x2, x1 * x2], R)
    assert three_lines_recipe(1, 1, 2)["method"] == "binomial"
    for p, q, r in [(1, 1, 1), (2, 2, 2), (1, 1, 2), (0, 0, 0), (5, 0, 3), (3, 7, 4), (9, 2, 3), (4, 4, 1)]:
        rep = verify_basis(three_lines_basis(p, q, r), three_lines(p, q, r))
        assert rep.is_basis, (p, q, r)


def test_three_lines_explicit_methods():
    rep = verify_basis(three_lines_basis(2, 3, 4, "binomial"), three_lines(2, 3, 4))
    assert rep.is_basis
    rep = verify_basis(three_lines_basis(2, 3, 4, "integral"), three_lines(2, 3, 4))
    assert rep.is_basis
    with pytest.raises(ValueError):
        three_lines_basis(1, 1, 5, "integral")
    with pytest.raises(ValueError):
        three_lines_basis(3, 3, 3, "binomial")
    with pytest.raises(ValueError):
        three_lines_basis(-1, 0, 0)


def test_theta_multi_specializations():
    for a, b, c in [(0, 0, 0), (1, 2, 0), (2, 0, 3)]:
        assert theta_multi((b, a), c) == theta3(a, b, c)
    assert theta_multi((0, 0, 0), 0) == euler_field(3)
    f = theta_multi((1, 0, 0), 0)
    assert f.degree() == 2
    assert member_of(f, braid_coordinate([1, 0, 0], 0))[0]


def test_braid_examples():
    rep = verify_basis(braid_coordinate_basis([0, 0], 0), braid_coordinate([0, 0], 0))
    assert rep.is_basis and braid_coordinate_basis([0, 0], 0)[0] == euler_field(2)
    fields = braid_basis([0, 0, 0])
    assert fields[0] == unit_sum_field(3) and fields[1] == theta_multi((0, 0, 0), 0)
    rep = verify_basis(fields, braid_coordinate([0, 0, 0], 0, False))
    assert rep.is_basis


@pytest.mark.parametrize("a", [[0, 0, 0], [1, 0, 1], [2, 1, 0, 1]])
def test_braid_basis_degree_sum(a):
    ell = len(a)
    fields = braid_basis(a)
    assert sum(f.degree() for f in fields) == ell * (ell - 1) // 2 + (ell - 1) * sum(a)


def test_hmrs_params_derived():
    p = HmrsParams.constant(2, 1, 2, 1, 0, 0)
    assert p.mi == (3, 3) and p.a == 2 and p.q == 1 and p.c == 5 and p.m_prime == 6
    assert HmrsParams.constant(3, 1, 2, 1, -2, 2).mi == (0, 0)
    for bad in [(1, 1, 2, 0, 0, 0), (3, 2, 2, 0, 0, 0), (2, 1, 1, 0, 0, 0), (2, 1, 2, -1, 0, 0), (2, 1, 2, 1, -3, 1), (2, 1, 2, 0, 0, 2), (3, 1, 2, 1, -2, 1)]:
        with pytest.raises(ValueError):
            HmrsParams.constant(*bad)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.integers(2, 5), st.integers(2, 4), st.integers(0, 3), st.integers(0, 3), st.data())
def test_hmrs_params_invariants(r, ell, m, kshift, data):
    k = -m - 1 + kshift
    mbar = tuple(data.draw(st.integers(0, r - 1)) for _ in range(ell))
    try:
        p = HmrsParams(r, 1, ell, m, k, mbar)
    except ValueError:
        assert k == -m - 1 and any(v != r - 1 for v in mbar)
        return
    assert all(mi >= 0 for mi in p.mi)
    assert {(mi - 1) // r for mi in p.mi} == {p.q}
    for mi, v in zip(p.mi, mbar):
        if mi == 0:
            assert k == -m - 1 and v == r - 1


def test_lambda_factory():
    lf = LambdaFactory(3, 3)
    t = lf.t
    xs = lf.ring.gens()[:3]
    for i in range(3):
        assert lf.lam(1) == lf.lam_i(i) * (t ** 3 - xs[i] ** 3)


def test_eta_examples():
    assert eta(HmrsParams.constant(2, 1, 2, 0, 0, 0), 0) == euler_field(2)
    first = eta_field(2, 2, 1, 0).components[0]
    g, c = normalize_primitive(first)
    assert g == x1 ** 5 - 5 * x1 ** 3 * x2 ** 2 and c == Fraction(-2, 15)
    p = HmrsParams.constant(2, 1, 2, 1, -2, 1)
    assert not eta(p, -2).is_polynomial()
    assert eta(p, -2, with_prefactor=True).is_polynomial()


def test_eta_degree_formula():
    for r in (2, 3):
        for ell in (2, 3):
            for m in range(3):
                for u in range(-m, 3):
                    f = eta_field(r, ell, m, u)
                    assert f.is_polynomial() and f.degree() == r * ell * m + r * u + 1


def test_eta_equivariance():
    f = eta_field(3, 3, 1, 0)
    ring = f.ring
    for perm in permutations(range(3)):
        rename = {ring.names[i]: ring.names[perm[i]] for i in range(3)}
        moved = [c.to_ring(ring, rename) for c in f.components]
        permuted = [None] * 3
        for i in range(3):
            permuted[perm[i]] = moved[i]
        assert permuted == list(f.components)


def test_sigma_example():
    p = HmrsParams.constant(2, 1, 2, 1, -1, 1)
    s = sigma(p, 0)
    assert s == VectorField([x1 ** 3 * Fraction(1, 3) - x1 * x2 ** 2, x2 ** 3 * Fraction(-2, 3)], R)
    assert member_of(s * x1, p.arrangement("even"))[0]
    assert (s * x1).degree() == 4 == p.mi[0] + p.m * p.a
    with pytest.raises(ValueError):
        sigma(HmrsParams.constant(2, 1, 2, 0, 0, 0), 0)


def test_expected_exponents_examples():
    assert expected_exponents(HmrsParams.constant(2, 1, 2, 1, 0, 0), "odd") == [5, 7]
    assert expected_exponents(HmrsParams.constant(2, 1, 2, 1, -1, 1), "even") == [4, 4]
    for ell in (2, 3, 4):
        for m in range(3):
            params, arr = b_family(ell, m, "odd")
            exps = expected_exponents(params, "odd")
            assert sorted(exps) == [2 * m * ell + 2 * j + 1 for j in range(ell)]
            assert sum(exps) == arr.total_multiplicity


def test_hmrs_basis_examples():
    params, arr = b_family(2, 1, "odd")
    fields = hmrs_basis(params, "odd")
    assert fields == [eta_field(2, 2, 1, 0), eta_field(2, 2, 1, 1)]
    assert verify_basis(fields, arr).degrees == [5, 7]
    params, arr = b_family(2, 1, "even")
    fields = hmrs_basis(params, "even")
    assert fields == [sigma(params, 0) * x1, sigma(params, 1) * x2]
    assert verify_basis(fields, arr).is_basis
    params, arr = d_family(2, 1, "odd")
    fields = hmrs_basis(params, "odd")
    assert fields[0] == eta_field(2, 2, 1, -2) * (x1 * x2)
    assert fields[1] == eta_field(2, 2, 1, -1)
    assert verify_basis(fields, arr).is_basis
    Q = to_sympy(defining_polynomial(arr))
    assert sp.expand(Q - (X1 ** 2 - X2 ** 2) ** 3) == 0


def test_even_m0_rejected():
    with pytest.raises(ValueError):
        hmrs_basis(HmrsParams.constant(2, 1, 2, 0, 0, 0), "even")
    with pytest.raises(ValueError):
        hmrs_basis(HmrsParams.constant(2, 1, 2, 0, 0, 0), "neither")
