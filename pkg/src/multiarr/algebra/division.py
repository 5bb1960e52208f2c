"""Exact division, vanishing orders along affine forms, and the "equal up to a
nonzero constant" normal form."""

from __future__ import annotations

import heapq
import math
from fractions import Fraction

from .fields import QQ, Cyclotomic, common_field
from .poly import Poly

INFINITE = math.inf


class NotDivisible(ArithmeticError):
    pass


def _quotient(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if not r else Fraction(a, b)
    return a / b


def _align(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if f.ring.names != g.ring.names:
        raise ValueError(f"variable mismatch: {f.ring.names} vs {g.ring.names}")
    field = common_field(f.ring.field, g.ring.field)
    return f.to_field(field), g.to_field(field)


def divide_exact(f: Poly, d: Poly) -> Poly:
    """Return q with f == d*q, raising :class:`NotDivisible` otherwise.

    Lex long division by a single divisor: {d} is a Groebner basis of (d), so
    the first leading term of the remainder not divisible by lt(d) proves
    non-divisibility.
    """
    f, d = _align(f, d)
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not (f.is_polynomial() and d.is_polynomial()):
        raise ValueError("exact division is defined for polynomials only")
    if not f:
        return f
    lead_e, lead_c = d.leading_term()
    rest = [(e, c) for e, c in d.terms.items() if e != lead_e]
    n = f.ring.nvars
    rem = dict(f.terms)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quo = {}
    while heap:
        e = tuple(-x for x in heapq.heappop(heap))
        c = rem.pop(e, None)
        if c is None:
            continue
        qe = tuple(e[i] - lead_e[i] for i in range(n))
        if min(qe) < 0:
            raise NotDivisible(f"leading term not divisible by {d}")
        qc = _quotient(c, lead_c)
        quo[qe] = qc
        for de, dc in rest:
            k = tuple(qe[i] + de[i] for i in range(n))
            old = rem.get(k)
            new = -qc * dc if old is None else old - qc * dc
            if new:
                if old is None:
                    heapq.heappush(heap, tuple(-x for x in k))
                rem[k] = new
            elif old is not None:
                del rem[k]
    return Poly(f.ring, quo, _trusted=True)


def divides(d: Poly, f: Poly) -> bool:
    try:
        divide_exact(f, d)
    except NotDivisible:
        return False
    return True


def _pivot_substitution(form: Poly) -> tuple[int, Poly]:
    """Pivot variable p and the image L of x_p under the change of
    coordinates that turns ``form`` into x_p."""
    if not form.is_polynomial() or (form.degree() or 0) > 1 or form.is_constant():
        raise ValueError(f"{form} is not a nonconstant affine-linear form")
    ring = form.ring
    n = ring.nvars
    linear = {}
    for e, c in form.terms.items():
        if sum(e) == 1:
            linear[e.index(1)] = c
    p = min(linear)
    cp = linear[p]
    xp = ring.gen(p)
    rest = form - xp * cp
    return p, (xp - rest) / cp


def substitute_pivot(f: Poly, p: int, image: Poly) -> Poly:
    """f with x_p replaced by ``image``, grouping terms by their x_p-degree."""
    n = f.ring.nvars
    groups: dict[int, dict] = {}
    for e, c in f.terms.items():
        k = e[p]
        if k < 0:
            raise ValueError("vanishing order needs a polynomial in the pivot variable")
        groups.setdefault(k, {})[e[:p] + (0,) + e[p + 1:]] = c
    out = f.ring.zero()
    powers = {0: f.ring.one()}
    for k in sorted(groups):
        if k not in powers:
            top = max(powers)
            pk = powers[top]
            for j in range(top + 1, k + 1):
                pk = pk * image
                powers[j] = pk
        out = out + Poly(f.ring, groups[k], _trusted=True) * powers[k]
    return out


def vanishing_order(form: Poly, f: Poly) -> int | float:
    """Largest e with form**e dividing f (``INFINITE`` for f == 0).

    Works by the affine change of coordinates that maps ``form`` to its pivot
    variable x_p; the order is then the least x_p-exponent of the image.
    """
    form, f = _align(form, f)
    if not f:
        return INFINITE
    p, image = _pivot_substitution(form)
    g = substitute_pivot(f, p, image)
    return min(e[p] for e in g.terms)


def _rational_content(values) -> Fraction:
    num = 0
    den = 1
    for v in values:
        v = Fraction(v)
        num = math.gcd(num, v.numerator)
        den = den * v.denominator // math.gcd(den, v.denominator)
    return Fraction(num, den)


def normalize_primitive(f: Poly) -> tuple[Poly, object]:
    """Return (g, c) with f == c*g and g canonical.

    Rational coefficient vectors are scaled to coprime integers with a positive
    lex-leading coefficient; otherwise g is made lex-monic.
    """
    if not f:
        raise ValueError("cannot normalize the zero polynomial")
    field = f.ring.field
    _, lead = f.leading_term()
    scale = field(1)
    g = f
    if field != QQ:
        scale = lead
        g = f * lead.inverse()
        if not all(c.is_rational() for c in g.terms.values()):
            return g, scale
        values = [c.to_rational() for c in g.terms.values()]
    else:
        values = list(g.terms.values())
    content = _rational_content(values)
    _, lead_rat = g.leading_term()
    lead_rat = lead_rat.to_rational() if isinstance(lead_rat, Cyclotomic) else lead_rat
    if lead_rat < 0:
        content = -content
    terms = {}
    for e, c in g.terms.items():
        v = (c.to_rational() if isinstance(c, Cyclotomic) else c) / content
        v = v.numerator if isinstance(v, Fraction) else v
        terms[e] = field(v)
    const = scale * content
    if isinstance(const, Fraction) and const.denominator == 1:
        const = const.numerator
    return Poly(f.ring, terms, _trusted=True), const


def proportionality_constant(f: Poly, g: Poly):
    """c with f == c*g, or ``None`` if the two are not proportional (both nonzero)."""
    f, g = _align(f, g)
    if not f or not g:
        return None
    nf, cf = normalize_primitive(f)
    ng, cg = normalize_primitive(g)
    if nf.terms != ng.terms:
        return None
    c = cf / cg if not isinstance(cf, int) or not isinstance(cg, int) else Fraction(cf, cg)
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return c


def proportional_to(f: Poly, g: Poly) -> bool:
    if not f and not g:
        return True
    return proportionality_constant(f, g) is not None


def clear_denominators(f: Poly) -> tuple[Poly, int]:
    """(k*f, k) with k the least positive integer making k*f integral; Q only."""
    if f.ring.field != QQ:
        return f, 1
    k = 1
    for c in f.terms.values():
        if isinstance(c, Fraction):
            k = k * c.denominator // math.gcd(k, c.denominator)
    if k == 1:
        return Poly(f.ring, {e: int(c) for e, c in f.terms.items()}, _trusted=True), 1
    return Poly(f.ring, {e: int(c * k) for e, c in f.terms.items()}, _trusted=True), k
