"""Exact coefficient fields: the rationals and cyclotomic fields Q(zeta_r).

Rationals are plain Python ``int`` / ``fractions.Fraction`` values.  Elements of
Q(zeta_r) are :class:`Cyclotomic` instances holding phi(r) rational coordinates
in the power basis 1, z, ..., z^(phi(r)-1), reduced modulo the r-th cyclotomic
polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

Rational = Union[int, Fraction]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_coefficients(r: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_r, lowest degree first.

    Computed as (z^r - 1) divided by Phi_d for every proper divisor d of r.
    """
    if r < 1:
        raise ValueError(f"cyclotomic polynomial needs r >= 1, got {r}")
    num = [-1] + [0] * (r - 1) + [1]
    for d in _divisors(r)[:-1]:
        num = _exact_div_monic(num, list(cyclotomic_coefficients(d)))
    return tuple(num)


def _exact_div_monic(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    quo = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        quo[i - dn] = c
        if c:
            for j, dc in enumerate(den):
                num[i - dn + j] -= c * dc
    if any(num[:dn]):
        raise ArithmeticError("cyclotomic division left a remainder")
    return quo


# -- univariate helpers over Q (coefficient lists, lowest degree first) ------

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _udivmod(a: list, b: list) -> tuple[list, list]:
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for j, bc in enumerate(b):
            a[shift + j] -= c * bc
        _trim(a)
    return _trim(q), a


def _usub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _umul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _uinverse_mod(a: list, m: list) -> list:
    """Inverse of a modulo m via the extended Euclidean algorithm."""
    r0, r1 = _trim([Fraction(c) for c in m]), _trim([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(s0, _umul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv = r0[0]
    return [c / inv for c in s0]


# -- fields ------------------------------------------------------------------

class RationalField:
    """The field Q.  Elements are ``int`` or ``Fraction``."""

    name = "Q"
    order = 1
    degree = 1

    def __call__(self, value) -> Rational:
        if isinstance(value, (int, Fraction)):
            return value
        if isinstance(value, Cyclotomic):
            if value.is_rational():
                return value.to_rational()
            raise TypeError(f"{value} is not rational")
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def contains(self, value) -> bool:
        return isinstance(value, (int, Fraction))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"

    def __reduce__(self):
        return (_rational_field, ())


def _rational_field() -> RationalField:
    return QQ


QQ = RationalField()


class CyclotomicField:
    """Q(zeta_r) presented as Q[z] / (Phi_r)."""

    def __init__(self, r: int):
        if r < 1:
            raise ValueError(f"root-of-unity order must be >= 1, got {r}")
        self.order = r
        self.modulus = cyclotomic_coefficients(r)
        self.degree = len(self.modulus) - 1
        self.name = f"Q(zeta_{r})"
        # z^k mod Phi_r for every k that a product of two reduced elements can reach
        d = self.degree
        table = []
        for k in range(2 * d - 1):
            vec = [0] * (k + 1)
            vec[k] = 1
            for i in range(k, d - 1, -1):
                c = vec[i]
                if c:
                    for j, mc in enumerate(self.modulus):
                        vec[i - d + j] -= c * mc
            table.append(tuple(vec[:d]) + (0,) * max(0, d - len(vec)))
        self._reduction = table
        self._zero = Cyclotomic(self, (0,) * d)
        self._powers = None

    def __call__(self, value) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            if value.field is self or value.field == self:
                return value
            raise TypeError(f"{value} belongs to {value.field.name}, not {self.name}")
        if isinstance(value, (int, Fraction)):
            return Cyclotomic(self, (value,) + (0,) * (self.degree - 1))
        if isinstance(value, str):
            return self(Fraction(value))
        if isinstance(value, (list, tuple)):
            return self.from_coefficients(value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def from_coefficients(self, coeffs: Sequence[Rational]) -> "Cyclotomic":
        """Reduce an arbitrary-length coefficient vector modulo Phi_r."""
        vec = list(coeffs)
        d = self.degree
        for i in range(len(vec) - 1, d - 1, -1):
            c = vec[i]
            if c:
                for j, mc in enumerate(self.modulus):
                    vec[i - d + j] -= c * mc
        vec = vec[:d] + [0] * max(0, d - len(vec))
        return Cyclotomic(self, tuple(vec))

    def contains(self, value) -> bool:
        return isinstance(value, Cyclotomic) and value.field == self

    @property
    def gen(self) -> "Cyclotomic":
        return self.root_of_unity(1)

    def root_of_unity(self, k: int) -> "Cyclotomic":
        """zeta_r ** k for any integer k."""
        if self._powers is None:
            self._powers = [self.from_coefficients([0] * j + [1]) for j in range(self.order)]
        return self._powers[k % self.order]

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("Q(zeta)", self.order))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def __reduce__(self):
        return (cyclotomic_field, (self.order,))


@lru_cache(maxsize=None)
def cyclotomic_field(r: int) -> CyclotomicField:
    return CyclotomicField(r)


def field_for_roots(r: int):
    """Smallest field in scope containing the r-th roots of unity."""
    return QQ if r <= 2 else cyclotomic_field(r)


def field_from_name(name: str):
    name = name.strip().replace(" ", "")
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("Q(zeta_") and name.endswith(")"):
        return field_for_roots(int(name[len("Q(zeta_"):-1]))
    raise ValueError(f"unknown field {name!r}")


def common_field(f1, f2):
    """The field both arguments embed into; raises on incompatible cyclotomic orders."""
    if f1 == f2:
        return f1
    if f1 == QQ:
        return f2
    if f2 == QQ:
        return f1
    raise TypeError(f"field mismatch: {f1.name} vs {f2.name}")


class Cyclotomic:
    """An element of Q(zeta_r)."""

    __slots__ = ("field", "c")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is not self.field and other.field != self.field:
                raise TypeError(f"field mismatch: {self.field.name} vs {other.field.name}")
            return other.c
        if isinstance(other, (int, Fraction)):
            return None
        return NotImplemented

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is NotImplemented:
            return NotImplemented
        if oc is None:
            if not other:
                return self
            return Cyclotomic(self.field, (self.c[0] + other,) + self.c[1:])
        return Cyclotomic(self.field, tuple(a + b for a, b in zip(self.c, oc)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is NotImplemented:
            return NotImplemented
        if oc is None:
            return Cyclotomic(self.field, (self.c[0] - other,) + self.c[1:])
        return Cyclotomic(self.field, tuple(a - b for a, b in zip(self.c, oc)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        oc = self._coerce(other)
        if oc is NotImplemented:
            return NotImplemented
        if oc is None:
            return Cyclotomic(self.field, tuple(a * other for a in self.c))
        a, b = self.c, oc
        d = len(a)
        if d == 1:
            return Cyclotomic(self.field, (a[0] * b[0],))
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        red = self.field._reduction
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for j, rc in enumerate(red[k]):
                    if rc:
                        out[j] += c * rc
        return Cyclotomic(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero in " + self.field.name)
        if self.is_rational():
            return Cyclotomic(self.field, (Fraction(1) / self.c[0],) + self.c[1:])
        inv = _uinverse_mod(list(self.c), list(self.field.modulus))
        return self.field.from_coefficients([_simplify(c) for c in inv])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.field, tuple(_simplify(Fraction(a) / other) for a in self.c))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.field == other.field and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.field.order, self.c))

    def __repr__(self) -> str:
        return format_scalar(self)

    def __reduce__(self):
        return (_rebuild_cyclotomic, (self.field.order, self.c))


def _rebuild_cyclotomic(r: int, coeffs: tuple) -> Cyclotomic:
    return Cyclotomic(cyclotomic_field(r), coeffs)


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def format_rational(c: Rational) -> str:
    c = _simplify(c)
    return str(c)


def format_scalar(c) -> str:
    """``3/2`` for rationals, ``[1 - z^2]`` for genuinely cyclotomic values."""
    if isinstance(c, Cyclotomic):
        if c.is_rational():
            return format_rational(c.c[0])
        parts = []
        for k, a in enumerate(c.c):
            if not a:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            mag = abs(a)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(("+ " if a > 0 else "- ") + body)
        return "[" + " ".join(parts) + "]"
    return format_rational(c)
