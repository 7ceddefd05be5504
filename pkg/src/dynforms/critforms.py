"""Normal forms for polynomials with prescribed critical points.

``ncrit_polynomial`` integrates f'(z) = alpha z^(d-K-1) prod (z - gamma_i)^k_i
term by term, where K = sum k_i, with alpha = a d!/(d-K-1)!.
``belyi_poly`` gives the bicritical Belyi polynomial B_{d,k} with critical
points 0 and 1, normalised by B(0) = 0 and B(1) = 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidInputError, TheoremCheckFailure
from .exactalg import QQ, MultiPoly, UniPoly
from .projdyn import RationalMap

Param = Union[Fraction, str]

MAX_PARAMS = 4


def _param(x) -> Param:
    if isinstance(x, str):
        try:
            return QQ(x)
        except (ValueError, InvalidInputError):
            if not x.isidentifier() or x == "z":
                raise InvalidInputError(f"bad parameter name {x!r}")
            return x
    return QQ(x)


@dataclass(frozen=True)
class NCritSpec:
    """Degree d, multiplicities k_i of the critical points gamma_i (0 carries the rest)."""

    d: int
    k_list: tuple[int, ...]
    gamma_list: tuple[Param, ...]
    a: Param = "a"
    c: Param = "c"

    def __post_init__(self):
        object.__setattr__(self, "k_list", tuple(int(k) for k in self.k_list))
        object.__setattr__(self, "gamma_list", tuple(_param(g) for g in self.gamma_list))
        object.__setattr__(self, "a", _param(self.a))
        object.__setattr__(self, "c", _param(self.c))
        d, ks, gs = self.d, self.k_list, self.gamma_list
        if d < 2:
            raise InvalidInputError("degree must be at least 2")
        if not ks or len(ks) != len(gs):
            raise InvalidInputError("need one multiplicity per critical point gamma_i")
        if any(k < 1 for k in ks):
            raise InvalidInputError("multiplicities must be >= 1")
        if not len(ks) <= sum(ks) <= d - 2:
            raise InvalidInputError(f"sum of multiplicities {sum(ks)} outside [{len(ks)}, {d - 2}]")
        numeric = [g for g in gs if not isinstance(g, str)]
        if any(g == 0 for g in numeric) or len(set(numeric)) != len(numeric):
            raise InvalidInputError("numeric gammas must be distinct and nonzero")
        names = [g for g in gs if isinstance(g, str)]
        if len(set(names)) != len(names):
            raise InvalidInputError("repeated gamma name")
        if self.a == 0:
            raise InvalidInputError("a = 0 collapses the degree")
        if len(self.params) > MAX_PARAMS:
            raise InvalidInputError(f"at most {MAX_PARAMS} symbolic parameters")

    @property
    def n(self) -> int:
        """Number of affine critical points."""
        return len(self.k_list) + 1

    @property
    def params(self) -> tuple[str, ...]:
        out = [p for p in (self.a, self.c) if isinstance(p, str)]
        out += [g for g in self.gamma_list if isinstance(g, str) and g not in out]
        return tuple(out)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.params + ("z",)


def _as_poly(x: Param, vars) -> MultiPoly:
    if isinstance(x, str):
        return MultiPoly.var(x, vars)
    return MultiPoly.const(x, vars)


def ncrit_polynomial(spec: NCritSpec) -> MultiPoly:
    d, ks = spec.d, spec.k_list
    K = sum(ks)
    vars = spec.vars
    prefactor = Fraction(math.factorial(d), math.factorial(d - K - 1))
    neg_gamma = [-_as_poly(g, vars) for g in spec.gamma_list]
    # powers of -gamma_i, reused across the nested sum
    powers = [[MultiPoly.const(1, vars)] for _ in ks]
    for i, k in enumerate(ks):
        for _ in range(k):
            powers[i].append(powers[i][-1] * neg_gamma[i])
    body = MultiPoly.const(0, vars)
    for js in itertools.product(*(range(k + 1) for k in ks)):
        e = d + sum(js) - K
        coeff = prefactor / e
        term = MultiPoly.const(1, vars)
        for i, (k, j) in enumerate(zip(ks, js)):
            coeff *= math.comb(k, j)
            term = term * powers[i][k - j]
        mono = [0] * len(vars)
        mono[-1] = e
        body = body + term * MultiPoly(vars, {tuple(mono): coeff})
    out = _as_poly(spec.a, vars) * body + _as_poly(spec.c, vars)
    if out.degree("z") != d:
        raise TheoremCheckFailure("n-critical expansion lost its leading term")
    return out


def critical_shape(spec: NCritSpec) -> MultiPoly:
    """z^(d-K-1) prod (z - gamma_i)^k_i in the spec's variables."""
    vars = spec.vars
    z = MultiPoly.var("z", vars)
    out = z ** (spec.d - sum(spec.k_list) - 1)
    for g, k in zip(spec.gamma_list, spec.k_list):
        out = out * (z - _as_poly(g, vars)) ** k
    return out


def derivative_identity_holds(spec: NCritSpec, poly: MultiPoly | None = None) -> bool:
    """d/dz of the normal form equals alpha times the critical shape, as polynomials."""
    poly = ncrit_polynomial(spec) if poly is None else poly
    K = sum(spec.k_list)
    alpha = _as_poly(spec.a, spec.vars).scale(Fraction(math.factorial(spec.d), math.factorial(spec.d - K - 1)))
    return poly.derivative("z") == alpha * critical_shape(spec)


def verify_ramification(p, spec: NCritSpec) -> bool:
    """True iff p' is a constant (possibly symbolic) multiple of the critical shape."""
    if any(isinstance(g, str) for g in spec.gamma_list):
        raise InvalidInputError("verify_ramification needs numeric gammas; use derivative_identity_holds")
    if isinstance(p, UniPoly):
        p = MultiPoly.from_unipoly(p, "z", spec.vars)
    elif isinstance(p, RationalMap):
        if not p.is_polynomial():
            return False
        p = MultiPoly.from_unipoly(p.num.scale(1 / p.den.coeff(0)), "z", spec.vars)
    else:
        p = p.with_vars(tuple(dict.fromkeys(spec.vars + p.vars)))
    shape = critical_shape(spec).with_vars(p.vars)
    dp = p.derivative("z")
    if dp.is_zero():
        return False
    lead = dp.coefficient_in("z", dp.degree("z"))
    return dp.degree("z") == shape.degree("z") and dp == lead * shape


# -- bicritical Belyi form ---------------------------------------------------------


def canonical_k_bound(d: int) -> int:
    return -(-(d - 2) // 2)


@dataclass(frozen=True)
class BelyiParams:
    d: int
    k: int

    def __post_init__(self):
        if self.d < 3:
            raise InvalidInputError("Belyi polynomials need d >= 3")
        if not 1 <= self.k <= self.d - 2:
            raise InvalidInputError(f"k = {self.k} outside [1, {self.d - 2}]")

    @property
    def is_canonical(self) -> bool:
        return self.k <= canonical_k_bound(self.d)


def belyi_coefficient(d: int, k: int, i: int) -> Fraction:
    """Coefficient of z^(d-i) in B_{d,k}."""
    prod = 1
    for j in range(k + 1):
        if j != i:
            prod *= d - j
    return Fraction((-1) ** (k - i) * prod, math.factorial(k - i) * math.factorial(i))


def belyi_poly(bp: BelyiParams) -> UniPoly:
    d, k = bp.d, bp.k
    coeffs = [Fraction(0)] * (d + 1)
    for i in range(k + 1):
        coeffs[d - i] = belyi_coefficient(d, k, i)
    B = UniPoly(coeffs)
    if any(c.denominator != 1 for c in B.coeffs):
        raise TheoremCheckFailure(f"B_{d},{k} has a non-integer coefficient")
    if B(0) != 0 or B(1) != 1:
        raise TheoremCheckFailure(f"B_{d},{k} is not normalised")
    return B


def make_bicritical(a, c, bp: BelyiParams) -> RationalMap:
    """a B_{d,k} + c."""
    a, c = QQ(a), QQ(c)
    if a == 0:
        raise InvalidInputError("a = 0 collapses the degree")
    return RationalMap.polynomial((belyi_poly(bp).scale(a) + UniPoly([c])).coeffs)


@dataclass(frozen=True)
class Bicritical:
    a: Fraction
    c: Fraction
    d: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "a", QQ(self.a))
        object.__setattr__(self, "c", QQ(self.c))
        BelyiParams(self.d, self.k)
        if self.a == 0:
            raise InvalidInputError("a = 0 collapses the degree")

    def to_map(self) -> RationalMap:
        return make_bicritical(self.a, self.c, BelyiParams(self.d, self.k))


def canonicalize(b: Bicritical) -> Bicritical:
    """Swap the roles of 0 and 1 (conjugation by 1 - z) when k is above the canonical range."""
    if b.k <= canonical_k_bound(b.d):
        return b
    return Bicritical(b.a, 1 - b.a - b.c, b.d, b.d - 1 - b.k)


def bicritical_conjugacy(f0: Bicritical, f1: Bicritical) -> str:
    """'equal', 'conjugate' or 'distinct' for two bicritical parameter tuples."""
    if f0.d != f1.d:
        return "distinct"
    if (f0.a, f0.c, f0.k) == (f1.a, f1.c, f1.k):
        return "equal"
    if f0.k + f1.k == f0.d - 1 and f0.a == f1.a and f1.c == 1 - f0.a - f0.c:
        return "conjugate"
    return "distinct"
