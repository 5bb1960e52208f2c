"""Independent sympy oracles used by the tests (never imported by the package)."""

from fractions import Fraction

import sympy as sp

from multiarr.algebra import Cyclotomic, Poly


def to_sympy(f: Poly):
    syms = sp.symbols(f.ring.names)
    if not isinstance(syms, tuple):
        syms = (syms,)
    zeta = None
    if f.ring.field.__class__.__name__ == "CyclotomicField":
        zeta = sp.exp(2 * sp.pi * sp.I / f.ring.field.order)
    out = sp.Integer(0)
    for e, c in f.terms.items():
        if isinstance(c, Cyclotomic):
            coeff = sum(sp.Rational(Fraction(a).numerator, Fraction(a).denominator) * zeta ** k for k, a in enumerate(c.c))
        else:
            c = Fraction(c)
            coeff = sp.Rational(c.numerator, c.denominator)
        mono = sp.Integer(1)
        for s, k in zip(syms, e):
            mono *= s ** k
        out += coeff * mono
    return sp.expand(out)


def symbols(names):
    return sp.symbols(names)


def sympy_integral_at(integrand_expr, t, x):
    """Definite integral from 0 (polynomial integrands) as an oracle for the formal operator."""
    return sp.expand(sp.integrate(integrand_expr, (t, 0, x)))


def sympy_det(rows):
    return sp.expand(sp.Matrix(rows).det(method="berkowitz"))


def proportional(a, b) -> bool:
    a, b = sp.expand(a), sp.expand(b)
    if a == 0 or b == 0:
        return a == 0 and b == 0
    q = sp.cancel(a / b)
    return q.is_number and q != 0
