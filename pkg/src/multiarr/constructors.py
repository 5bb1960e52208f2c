"""Integral-expression vector fields and the bases assembled from them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .algebra import QQ, Poly, Ring, polynomial_ring
from .arrangements import Multiarrangement, monomial_reflection
from .calculus import antiderivative_at
from .derivations import VectorField, pullback, unit_sum_field


def _rings(ell: int) -> tuple[Ring, Ring]:
    """(x-ring, x-ring extended by the integration variable t)."""
    base = polynomial_ring(ell, QQ)
    return base, base.extend("t")


def integral_field(integrand: Poly) -> VectorField:
    """sum_i (antiderivative of ``integrand`` evaluated at x_i) d/dx_i."""
    target = integrand.ring.drop("t")
    return VectorField([antiderivative_at(integrand, i) for i in range(target.nvars)], target)


# -- dimension two and the braid family -------------------------------------


def theta_multi(a: Sequence[int], b: int) -> VectorField:
    """theta_{a_1..a_l, b}: integrand t^b prod_j (t - x_j)^(a_j)."""
    ell = len(a)
    if ell < 2:
        raise ValueError("need at least two variables")
    if b < 0 or min(a) < 0:
        raise ValueError("exponents must be nonnegative")
    _, ring = _rings(ell)
    t = ring.gen("t")
    xs = ring.gens()[:ell]
    integrand = t ** b
    for x, e in zip(xs, a):
        if e:
            integrand = integrand * (t - x) ** e
    return integral_field(integrand)


def theta3(a: int, b: int, c: int) -> VectorField:
    """theta_{a,b,c}: integrand t^c (t - x1)^b (t - x2)^a."""
    return theta_multi((b, a), c)


# coordinate changes y = Bx (both involutions) that move the largest
# multiplicity onto x1 - x2; see three_lines_basis
_SWAP_P = ((1, -1), (0, -1))
_SWAP_Q = ((-1, 0), (-1, 1))


def three_lines_recipe(p: int, q: int, r: int, method: str = "auto") -> dict:
    """How three_lines_basis builds its pair: the coordinate change, the
    sorted triple and either the binomial pair or the theta parameters."""
    if min(p, q, r) < 0:
        raise ValueError("multiplicities must be nonnegative")
    if method not in ("auto", "binomial", "integral"):
        raise ValueError(f"unknown method {method!r}")
    if r >= max(p, q):
        change, (sp, sq, sr) = None, (p, q, r)
    elif p >= q:
        change, (sp, sq, sr) = _SWAP_P, (r, q, p)
    else:
        change, (sp, sq, sr) = _SWAP_Q, (p, r, q)
    integral_ok = sp > 0 and sq > 0 and sr <= sp + sq - 1
    binomial_ok = sr >= sp + sq - 1
    if method == "auto":
        method = "integral" if integral_ok else "binomial"
    if method == "integral" and not integral_ok:
        raise ValueError(f"integral formulas need p, q > 0 and r <= p + q - 1, got {(sp, sq, sr)}")
    if method == "binomial" and not binomial_ok:
        raise ValueError(f"binomial pair needs r >= p + q - 1, got {(sp, sq, sr)}")
    out = {"input": [p, q, r], "sorted": [sp, sq, sr], "change": change, "method": method}
    if method == "integral":
        if (sp + sq + sr) % 2:
            out["parity"] = "odd"
            abc = ((-sp + sq + sr - 1) // 2, (sp - sq + sr - 1) // 2, (sp + sq - sr - 1) // 2)
            out["theta"] = [list(abc), [abc[0], abc[1], abc[2] + 1]]
            out["prefactors"] = [None, None]
        else:
            out["parity"] = "even"
            out["theta"] = [
                [(-sp + sq + sr) // 2, (sp - sq + sr - 2) // 2, (sp + sq - sr - 2) // 2],
                [(-sp + sq + sr - 2) // 2, (sp - sq + sr) // 2, (sp + sq - sr - 2) // 2],
            ]
            out["prefactors"] = ["x1", "x2"]
    return out


def _binomial_pair(p: int, q: int, r: int) -> list[VectorField]:
    ring = polynomial_ring(2, QQ)
    x1, x2 = ring.gens()
    first = VectorField([x1 ** p * x2 ** q] * 2, ring)
    upper = sum((comb(r, i) * (-x1) ** i * x2 ** (r - i) for i in range(p, r + 1)), ring.zero())
    lower = sum((comb(r, i) * (-x1) ** i * x2 ** (r - i) for i in range(p)), ring.zero())
    return [first, VectorField([upper, -lower], ring)]


def three_lines_basis(p: int, q: int, r: int, method: str = "auto") -> list[VectorField]:
    """A basis of D(A, m) for x1^p x2^q (x1 - x2)^r, any order of (p, q, r).

    The largest multiplicity is first moved onto x1 - x2 by a linear change
    of coordinates.  ``method="auto"`` uses the theta fields whenever p, q > 0
    and r <= p + q - 1, and the binomial pair otherwise.
    """
    recipe = three_lines_recipe(p, q, r, method)
    sp, sq, sr = recipe["sorted"]
    if recipe["method"] == "binomial":
        fields = _binomial_pair(sp, sq, sr)
    else:
        ring = polynomial_ring(2, QQ)
        fields = []
        for abc, pre in zip(recipe["theta"], recipe["prefactors"]):
            f = theta3(*abc)
            fields.append(f * ring.gen(pre) if pre else f)
    if recipe["change"] is not None:
        fields = [pullback(f, recipe["change"]) for f in fields]
    return fields


def braid_coordinate_basis(a: Sequence[int], b: int) -> list[VectorField]:
    """theta_{a,b}, theta_{a,b+1}, ..., theta_{a,b+l-1}."""
    return [theta_multi(a, b + j) for j in range(len(a))]


def braid_basis(a: Sequence[int]) -> list[VectorField]:
    """sum_i d/dx_i followed by theta_{a,b} for b = 0..l-2."""
    ell = len(a)
    return [unit_sum_field(polynomial_ring(ell, QQ))] + [theta_multi(a, b) for b in range(ell - 1)]


# -- monomial groups --------------------------------------------------------


@dataclass(frozen=True)
class HmrsParams:
    """Parameters (r, p, l, m, k, mbar) of the free monomial multiarrangements.

    m_i = r(m+k) + 1 + mbar_i; the coordinate multiplicities are derived.
    """

    r: int
    p: int
    ell: int
    m: int
    k: int
    mbar: tuple

    def __post_init__(self):
        object.__setattr__(self, "mbar", tuple(int(v) for v in self.mbar))
        if self.r < 2:
            raise ValueError("r must be at least 2")
        if self.p not in (1, self.r):
            raise ValueError(f"p must be 1 or r, got {self.p}")
        if self.ell < 2:
            raise ValueError("l must be at least 2")
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if self.k < -self.m - 1:
            raise ValueError(f"k must be at least -m-1 = {-self.m - 1}")
        if len(self.mbar) != self.ell:
            raise ValueError("one mbar per coordinate")
        if any(not 0 <= v <= self.r - 1 for v in self.mbar):
            raise ValueError(f"mbar entries must lie in [0, {self.r - 1}]")
        if any(mi < 0 for mi in self.mi):
            # only possible for k = -m-1, where every mbar must be r-1
            raise ValueError("k = -m-1 requires mbar_i = r-1 for all i")

    @classmethod
    def constant(cls, r: int, p: int, ell: int, m: int, k: int, mbar: int) -> "HmrsParams":
        return cls(r, p, ell, m, k, (mbar,) * ell)

    @property
    def mi(self) -> tuple[int, ...]:
        return tuple(self.r * (self.m + self.k) + 1 + v for v in self.mbar)

    @property
    def a(self) -> int:
        return (self.ell - 1) * self.r

    @property
    def m_prime(self) -> int:
        return sum(self.mi)

    @property
    def q(self) -> int:
        return self.m + self.k

    @property
    def c(self) -> int:
        return self.m * self.a + self.q * self.r + 1

    def multiplicity(self, parity: str) -> int:
        _check_parity(parity)
        return 2 * self.m + 1 if parity == "odd" else 2 * self.m

    def arrangement(self, parity: str) -> Multiarrangement:
        return monomial_reflection(self.r, self.p, self.ell, self.mi, self.multiplicity(parity))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "p": self.p,
            "ell": self.ell,
            "m": self.m,
            "k": self.k,
            "mbar": list(self.mbar),
            "m_i": list(self.mi),
            "a": self.a,
            "m_prime": self.m_prime,
            "q": self.q,
            "c": self.c,
        }


def _check_parity(parity: str) -> None:
    if parity not in ("odd", "even"):
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")


class LambdaFactory:
    """lambda(t) = prod_i (t^r - x_i^r) and lambda_i = lambda / (t^r - x_i^r)."""

    def __init__(self, r: int, ell: int):
        self.r = r
        self.ell = ell
        _, self.ring = _rings(ell)
        t = self.ring.gen("t")
        self.t = t
        self.factors = [t ** r - x ** r for x in self.ring.gens()[:ell]]
        lam = self.ring.one()
        for f in self.factors:
            lam = lam * f
        self._powers = {0: self.ring.one(), 1: lam}

    def lam(self, m: int = 1) -> Poly:
        """lambda(t)^m, with powers cached."""
        if m not in self._powers:
            top = max(k for k in self._powers if k <= m)
            acc = self._powers[top]
            for j in range(top + 1, m + 1):
                acc = acc * self._powers[1]
                self._powers[j] = acc
        return self._powers[m]

    def lam_i(self, i: int) -> Poly:
        out = self.ring.one()
        for j, f in enumerate(self.factors):
            if j != i:
                out = out * f
        return out


@lru_cache(maxsize=None)
def lambda_factory(r: int, ell: int) -> LambdaFactory:
    return LambdaFactory(r, ell)


def eta_field(r: int, ell: int, m: int, u: int) -> VectorField:
    """eta_u^m = sum_i (antiderivative of t^(ru) lambda^m at x_i) d/dx_i.

    Laurent when u < -m; callers decide whether a prefactor clears the poles.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    lf = lambda_factory(r, ell)
    return integral_field(lf.t ** (r * u) * lf.lam(m))


def eta(params: HmrsParams, u: int, with_prefactor: bool = False) -> VectorField:
    field = eta_field(params.r, params.ell, params.m, u)
    if with_prefactor:
        field = field * mbar_prefactor(params)
    return field


def mbar_prefactor(params: HmrsParams) -> Poly:
    return polynomial_ring(params.ell, QQ).monomial(params.mbar)


def sigma(params: HmrsParams, i: int) -> VectorField:
    """sigma_i^m: integrand t^(r(k+1)) lambda^(m-1) lambda_i; i is 0-based."""
    if params.m < 1:
        raise ValueError("sigma_i^m needs m >= 1")
    if not 0 <= i < params.ell:
        raise ValueError(f"index {i} out of range")
    lf = lambda_factory(params.r, params.ell)
    return integral_field(lf.t ** (params.r * (params.k + 1)) * lf.lam(params.m - 1) * lf.lam_i(i))


def expected_exponents(params: HmrsParams, parity: str) -> list[int]:
    _check_parity(parity)
    p = params
    if parity == "odd":
        first = p.c + p.m_prime - p.ell * (p.q * p.r + 1)
        return [first] + [p.c + j * p.r for j in range(1, p.ell)]
    if p.m < 1:
        raise ValueError("the even case needs m >= 1")
    return [p.m * p.a + mi for mi in p.mi]


def hmrs_basis(params: HmrsParams, parity: str) -> list[VectorField]:
    """Odd: (prod x^mbar) eta_k, eta_(k+1), ..., eta_(k+l-1).  Even: x_i^mbar_i sigma_i."""
    _check_parity(parity)
    p = params
    if parity == "odd":
        return [eta(p, p.k, with_prefactor=True)] + [eta(p, p.k + j) for j in range(1, p.ell)]
    if p.m < 1:
        raise ValueError("the even case needs m >= 1")
    ring = polynomial_ring(p.ell, QQ)
    return [sigma(p, i) * ring.gen(i) ** p.mbar[i] for i in range(p.ell)]


def b_family(ell: int, m: int, parity: str) -> tuple[HmrsParams, Multiarrangement]:
    """Type B: odd with m_i = 2m+1 (k=0, mbar=0); even with m_i = 2m (k=-1, mbar=1)."""
    _check_parity(parity)
    params = HmrsParams.constant(2, 1, ell, m, 0, 0) if parity == "odd" else HmrsParams.constant(2, 1, ell, m, -1, 1)
    return params, params.arrangement(parity)


def d_family(ell: int, m: int, parity: str) -> tuple[HmrsParams, Multiarrangement]:
    """Type D: m_i = 0, so k = -m-1 and mbar = 1."""
    _check_parity(parity)
    params = HmrsParams.constant(2, 2, ell, m, -m - 1, 1)
    return params, params.arrangement(parity)


__all__ = [
    "HmrsParams",
    "LambdaFactory",
    "b_family",
    "braid_basis",
    "braid_coordinate_basis",
    "d_family",
    "eta",
    "eta_field",
    "expected_exponents",
    "hmrs_basis",
    "integral_field",
    "lambda_factory",
    "mbar_prefactor",
    "sigma",
    "theta3",
    "theta_multi",
    "three_lines_basis",
    "three_lines_recipe",
]
