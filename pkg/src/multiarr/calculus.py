"""The formal antiderivative t^k -> x_i^(k+1)/(k+1), k != -1.

For k >= 0 this agrees with the definite integral from 0; for k <= -2 with
the integral from infinity.  It is applied termwise, so an integrand may mix
both kinds of powers.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Poly, Ring


class LogarithmicTerm(ArithmeticError):
    """The integrand contains t^-1, whose antiderivative is not a Laurent polynomial."""


def integration_ring(n: int, field=None, var: str = "t") -> Ring:
    from .algebra import QQ, polynomial_ring

    return polynomial_ring(n, field or QQ, extra=(var,))


def antiderivative_at(f: Poly, i, var: str = "t") -> Poly:
    """Apply the formal antiderivative in ``var`` and evaluate at variable ``i``.

    ``f`` lives in a ring containing ``var``; the result lives in the same ring
    with ``var`` removed.
    """
    src = f.ring
    ti = src.index(var)
    target = src.drop(var)
    xi = target.index(i if isinstance(i, str) else target.names[i])
    out: dict = {}
    for e, c in f.terms.items():
        k = e[ti]
        if k == -1:
            raise LogarithmicTerm(f"t^-1 term in integrand: {Poly(src, {e: c})}")
        ne = list(e[:ti] + e[ti + 1:])
        ne[xi] += k + 1
        ne = tuple(ne)
        val = c * Fraction(1, k + 1)
        prev = out.get(ne)
        out[ne] = val if prev is None else prev + val
    return Poly(target, out)


def check_nonzero_integral(r: int, n: int, m: int) -> tuple[bool, object]:
    """Evaluate the antiderivative of t^(rn) (t^r - x^r)^m at x.

    Homogeneity forces the result to be c * x^(r(n+m)+1); returns (c != 0, c).
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if m < 0:
        raise ValueError("m must be nonnegative")
    ring = Ring(("x", "t"))
    x, t = ring.gens()
    integrand = t ** (r * n) * (t ** r - x ** r) ** m
    result = antiderivative_at(integrand, "x")
    if not result:
        return False, 0
    expected = (r * (n + m) + 1,)
    if set(result.terms) != {expected}:
        raise AssertionError(f"unexpected shape {result}")
    c = result.terms[expected]
    return True, c.numerator if c.denominator == 1 else c
