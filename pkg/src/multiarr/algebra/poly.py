"""Sparse multivariate Laurent polynomials over Q or Q(zeta_r).

A :class:`Poly` is a map from exponent tuples (negative entries allowed) to
nonzero coefficients, attached to a :class:`Ring` that fixes the variable
order and the coefficient field.  Lexicographic order on exponent tuples,
with the first ring variable most significant, selects leading terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .fields import QQ, Cyclotomic, common_field, format_scalar


class PoleError(ArithmeticError):
    """A substitution or power would need a negative power of a non-monomial."""


@dataclass(frozen=True)
class Ring:
    names: tuple[str, ...]
    field: object = QQ

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.names):
                raise IndexError(f"variable index {var} out of range for {self.names}")
            return var
        try:
            return self.names.index(var)
        except ValueError:
            raise KeyError(f"no variable {var!r} in ring {self.names}") from None

    def gen(self, var) -> "Poly":
        i = self.index(var)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field(1)}, _trusted=True)

    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def zero(self) -> "Poly":
        return Poly(self, {}, _trusted=True)

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: self.field(c)})

    def monomial(self, exps, coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): self.field(coeff)})

    def with_field(self, field) -> "Ring":
        return Ring(self.names, field)

    def drop(self, var) -> "Ring":
        i = self.index(var)
        return Ring(self.names[:i] + self.names[i + 1:], self.field)

    def extend(self, *names: str) -> "Ring":
        return Ring(self.names + tuple(names), self.field)

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def __repr__(self) -> str:
        return f"Ring({', '.join(self.names)}; {self.field.name})"


def polynomial_ring(n: int, field=QQ, prefix: str = "x", extra: Iterable[str] = ()) -> Ring:
    """Ring on x1..xn followed by any extra variables (e.g. ``t`` or ``z``)."""
    return Ring(tuple(f"{prefix}{i}" for i in range(1, n + 1)) + tuple(extra), field)


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, Cyclotomic))


def _mul_terms(ta: dict, tb: dict, n: int) -> dict:
    """Product of two term maps, packing exponents into mixed-radix integers."""
    if not ta or not tb:
        return {}
    if len(ta) == 1 or len(tb) == 1:
        if len(ta) > 1:
            ta, tb = tb, ta
        (ea, ca), = ta.items()
        out = {}
        for eb, cb in tb.items():
            c = ca * cb
            if c:
                out[tuple(x + y for x, y in zip(ea, eb))] = c
        return out
    lo_a = [min(e[v] for e in ta) for v in range(n)]
    lo_b = [min(e[v] for e in tb) for v in range(n)]
    spans = [
        max(e[v] for e in ta) - lo_a[v] + max(e[v] for e in tb) - lo_b[v] + 1
        for v in range(n)
    ]
    strides = [1] * n
    for v in range(n - 2, -1, -1):
        strides[v] = strides[v + 1] * spans[v + 1]

    def pack(terms, lo):
        return [
            (sum((e[v] - lo[v]) * strides[v] for v in range(n)), c) for e, c in terms.items()
        ]

    pa = pack(ta, lo_a)
    pb = pack(tb, lo_b)
    acc: dict = {}
    get = acc.get
    for ka, ca in pa:
        for kb, cb in pb:
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    base = [lo_a[v] + lo_b[v] for v in range(n)]
    out = {}
    for k, c in acc.items():
        if not c:
            continue
        exps = [0] * n
        for v in range(n):
            digit, k = divmod(k, strides[v])
            exps[v] = digit + base[v]
        out[tuple(exps)] = c
    return out


class Poly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object] | None = None, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms if terms is not None else {}
            return
        clean = {}
        n = ring.nvars
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match ring {ring.names}")
            c = ring.field(c)
            if c:
                clean[e] = c
        self.terms = clean

    # -- construction helpers ------------------------------------------------

    def _new(self, terms: dict) -> "Poly":
        return Poly(self.ring, terms, _trusted=True)

    def _check(self, other: "Poly") -> None:
        if other.ring is self.ring:
            return
        if other.ring.names != self.ring.names:
            raise ValueError(f"variable mismatch: {self.ring.names} vs {other.ring.names}")
        if other.ring.field != self.ring.field:
            raise TypeError(f"field mismatch: {self.ring.field.name} vs {other.ring.field.name}")

    def _scalar(self, c):
        return self.ring.field(c)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            out = dict(self.terms)
            for e, c in other.terms.items():
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    s = s + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
            return self._new(out)
        if _is_scalar(other):
            return self + self.ring.const(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Poly):
            return self + (-other)
        if _is_scalar(other):
            return self + self.ring.const(-self._scalar(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return self._new(_mul_terms(self.terms, other.terms, self.ring.nvars))
        if _is_scalar(other):
            c = self._scalar(other)
            if not c:
                return self._new({})
            return self._new({e: v * c for e, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            c = self._scalar(other)
            if not c:
                raise ZeroDivisionError("polynomial divided by zero scalar")
            if isinstance(c, int):
                c = Fraction(c)
            inv = 1 / c
            return self * inv
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self.terms) != 1:
                raise PoleError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            inv = Fraction(1, c) if isinstance(c, int) else 1 / c
            return self._new({tuple(x * n for x in e): inv ** (-n)})
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return self._new({tuple(x * n for x in e): c ** n})
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring.names == other.ring.names and self.terms == other.terms
        if _is_scalar(other):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.ring.nvars: other}
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.names, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree(self) -> int | None:
        """Maximal total degree; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int | None:
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def degree_in(self, var) -> int | None:
        i = self.ring.index(var)
        if not self.terms:
            return None
        return max(e[i] for e in self.terms)

    def order_in(self, var) -> int | None:
        """Smallest exponent of ``var`` among the terms."""
        i = self.ring.index(var)
        if not self.terms:
            return None
        return min(e[i] for e in self.terms)

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), 0)

    def leading_term(self) -> tuple[tuple, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def homogeneous_part(self, degree: int) -> "Poly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == degree})

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(self.ring.names[i])
        return used

    # -- transformations -----------------------------------------------------

    def diff(self, var) -> "Poly":
        i = self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return self._new(out)

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.ring, {e: fn(c) for e, c in self.terms.items()})

    def to_field(self, field) -> "Poly":
        """Re-read the coefficients in ``field`` (Q embeds into every Q(zeta_r))."""
        if field == self.ring.field:
            return self
        ring = self.ring.with_field(field)
        return Poly(ring, {e: field(c) for e, c in self.terms.items()})

    def rationalize(self) -> "Poly | None":
        """The same polynomial over Q, or ``None`` if a coefficient is irrational."""
        if self.ring.field == QQ:
            return self
        for c in self.terms.values():
            if not c.is_rational():
                return None
        return Poly(self.ring.with_field(QQ), {e: c.to_rational() for e, c in self.terms.items()}, _trusted=True)

    def to_ring(self, ring: Ring, rename: Mapping[str, str] | None = None) -> "Poly":
        """Move into ``ring`` by variable name; variables absent from ``ring`` must not occur."""
        rename = dict(rename or {})
        positions = []
        for i, name in enumerate(self.ring.names):
            target = rename.get(name, name)
            positions.append(ring.names.index(target) if target in ring.names else None)
        n = ring.nvars
        out = {}
        field = common_field(self.ring.field, ring.field)
        if field != ring.field:
            raise TypeError(f"cannot move {self.ring.field.name} polynomial into {ring.field.name}")
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in enumerate(e):
                if x:
                    pos = positions[i]
                    if pos is None:
                        raise ValueError(f"variable {self.ring.names[i]} has no image in {ring.names}")
                    ne[pos] += x
            ne = tuple(ne)
            c = ring.field(c)
            s = out.get(ne)
            out[ne] = c if s is None else s + c
        return Poly(ring, out)

    def subs(self, assignment: Mapping, ring: Ring | None = None) -> "Poly":
        """Image under the ring homomorphism sending each assigned variable to a value.

        Unassigned variables go to the variable of the same name in the target
        ring.  Negative powers are allowed only for monomial images.
        """
        images = {}
        for var, val in assignment.items():
            images[self.ring.index(var)] = val
        if ring is None:
            polys = [v for v in images.values() if isinstance(v, Poly)]
            ring = polys[0].ring if polys else self.ring
        values = []
        for i, name in enumerate(self.ring.names):
            if i in images:
                v = images[i]
                values.append(v if isinstance(v, Poly) else ring.const(v))
            elif name in ring.names:
                values.append(ring.gen(name))
            else:
                values.append(None)
        for v in values:
            if v is not None and v.ring.field != ring.field:
                raise TypeError("assignment values must share the target field")
        cache: dict = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in cache:
                v = values[i]
                if v is None:
                    raise ValueError(f"no image for variable {self.ring.names[i]}")
                if k < 0 and len(v.terms) != 1:
                    raise PoleError(f"substitution creates a pole in {self.ring.names[i]}")
                cache[key] = v ** k
            return cache[key]

        acc: dict = {}
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
                    if not term:
                        break
            for te, tc in term.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return Poly(ring, acc)

    def homogenize(self, degree: int, var: str = "z", ring: Ring | None = None) -> "Poly":
        """Pad every term with powers of ``var`` up to total degree ``degree``."""
        if ring is None:
            ring = self.ring.extend(var)
        src = [self.ring.names.index(name) if name != var else None for name in ring.names]
        if sum(1 for k in src if k is None) != 1 or ring.nvars != self.ring.nvars + 1:
            raise ValueError("homogenizing ring must add exactly the one variable " + var)
        out = {}
        for e, c in self.terms.items():
            pad = degree - sum(e)
            if pad < 0:
                raise ValueError(f"term of degree {sum(e)} exceeds target degree {degree}")
            out[tuple(pad if k is None else e[k] for k in src)] = c
        return Poly(ring, out, _trusted=True)

    # -- text ----------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!s})"


# -- text format -------------------------------------------------------------

def _format_monomial(names, e) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _negative(c) -> bool:
    if isinstance(c, Cyclotomic):
        if c.is_rational():
            return c.c[0] < 0
        nz = [a for a in c.c if a]
        return nz[-1] < 0
    return c < 0


def format_poly(f: Poly) -> str:
    """Render as e.g. ``3/2*x1^2*x2^-1 - [1 - z^2]*x2``; leading term first."""
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        neg = _negative(c)
        mag = -c if neg else c
        mono = _format_monomial(f.ring.names, e)
        cs = format_scalar(mag)
        if not mono:
            body = cs
        elif mag == 1:
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_NUMBER = re.compile(r"^\d+(/\d+)?$")
_POWER = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^\(?(-?\d+)\)?)?$")


def _split_top(text: str, seps: str) -> list[str]:
    """Split at separators outside brackets; a sign right after ``^`` is an exponent."""
    parts, cur = [], []
    depth, prev = 0, ""
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if depth == 0 and ch in seps and not (ch in "+-" and prev in ("^", "(")):
            parts.append("".join(cur))
            cur = [ch] if ch in "+-" else []
        else:
            cur.append(ch)
        if not ch.isspace():
            prev = ch
    parts.append("".join(cur))
    return [p for p in (s.strip() for s in parts) if p]


def parse_poly(text: str, ring: Ring) -> Poly:
    """Inverse of :func:`format_poly` (also accepts ``**`` and bare ``z`` for zeta)."""
    text = text.replace("**", "^").strip()
    if not text:
        raise ValueError("empty polynomial text")
    field = ring.field
    total = ring.zero()
    for term in _split_top(text, "+-"):
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:].strip()
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = field(sign)
        exps = [0] * ring.nvars
        for factor in _split_top(term, "*"):
            if factor.startswith("["):
                if not factor.endswith("]"):
                    raise ValueError(f"unbalanced bracket in {factor!r}")
                coeff = coeff * _parse_cyclotomic(factor[1:-1], field)
                continue
            if _NUMBER.match(factor):
                coeff = coeff * field(Fraction(factor))
                continue
            m = _POWER.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            name, k = m.group(1), int(m.group(2) or 1)
            if name in ring.names:
                exps[ring.names.index(name)] += k
            elif name == "z" and isinstance(field.order, int) and field.order > 2:
                coeff = coeff * field.root_of_unity(k)
            elif name == "z" and field.order == 2:
                coeff = coeff * field((-1) ** (k % 2))
            else:
                raise ValueError(f"unknown variable {name!r} for ring {ring.names}")
        total = total + Poly(ring, {tuple(exps): coeff})
    return total


def _parse_cyclotomic(text: str, field):
    inner = parse_poly(text, Ring(("z",), QQ))
    if field == QQ:
        if not inner.is_constant():
            raise ValueError(f"[{text}] is not rational")
        return inner.constant_term()
    if field.order == 2:
        return field(sum(c * (-1) ** (e[0] % 2) for e, c in inner.terms.items()))
    coeffs = [0] * (max((e[0] for e in inner.terms), default=0) + 1)
    for e, c in inner.terms.items():
        if e[0] < 0:
            raise ValueError("negative power of z inside a cyclotomic scalar")
        coeffs[e[0]] += c
    return field.from_coefficients(coeffs)
