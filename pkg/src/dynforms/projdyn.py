"""Rational maps of the projective line over QQ.

Points are Fractions or the singleton :data:`INF`.  Every map is stored in
canonical scaling (monic denominator, or denominator 1 for polynomials), so
two :class:`RationalMap` values are equal exactly when they define the same
map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .errors import DegenerateMapError, InvalidInputError, TheoremCheckFailure, UnsupportedInputError
from .exactalg import (
    QQ,
    MultiPoly,
    UniPoly,
    factor_upto_quartic,
    interpolate,
    nullspace,
    poly_gcd,
    poly_resultant,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
)


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Point = Union[Fraction, _Infinity]


def as_point(x) -> Point:
    if x is INF or x == "inf":
        return INF
    return QQ(x)


def _homog(x: Point) -> tuple[Fraction, Fraction]:
    return (Fraction(1), Fraction(0)) if x is INF else (x, Fraction(1))


def _dehomog(x0, x1) -> Point:
    if x1 == 0:
        if x0 == 0:
            raise TheoremCheckFailure("point (0:0) is not on the projective line")
        return INF
    return Fraction(x0) / x1


# -- Mobius transformations -------------------------------------------------------


@dataclass(frozen=True)
class Mobius:
    """z -> (a z + b) / (c z + d), scaled so the first nonzero entry is 1."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        vals = [QQ(v) for v in (self.a, self.b, self.c, self.d)]
        if vals[0] * vals[3] - vals[1] * vals[2] == 0:
            raise InvalidInputError("Mobius transformation with zero determinant")
        lead = next(v for v in vals if v != 0)
        for name, v in zip("abcd", vals):
            object.__setattr__(self, name, v / lead)

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_points(cls, src: Iterable, dst: Iterable) -> "Mobius":
        """The unique transformation sending three distinct points to three distinct points."""
        src = [as_point(x) for x in src]
        dst = [as_point(x) for x in dst]
        if len(src) != 3 or len(dst) != 3 or len(set(map(repr, src))) != 3 or len(set(map(repr, dst))) != 3:
            raise InvalidInputError("need three distinct source and three distinct target points")
        rows = []
        for x, y in zip(src, dst):
            x0, x1 = _homog(x)
            y0, y1 = _homog(y)
            # y1 (a x0 + b x1) - y0 (c x0 + d x1) = 0
            rows.append([y1 * x0, y1 * x1, -y0 * x0, -y0 * x1])
        basis = nullspace(rows, 4)
        if len(basis) != 1:
            raise TheoremCheckFailure("three-point interpolation is not unique")
        return cls(*basis[0])

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __call__(self, x) -> Point:
        x0, x1 = _homog(as_point(x))
        return _dehomog(self.a * x0 + self.b * x1, self.c * x0 + self.d * x1)

    def compose(self, other: "Mobius") -> "Mobius":
        """self o other."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return self.compose(other)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def is_identity(self) -> bool:
        return self == Mobius.identity()


# -- rational maps ---------------------------------------------------------------


class RationalMap:
    """Degree-d endomorphism P/Q of the projective line, d >= 2."""

    __slots__ = ("num", "den", "degree")

    def __init__(self, num, den=None):
        P = num if isinstance(num, UniPoly) else UniPoly(num)
        Q = UniPoly([1]) if den is None else (den if isinstance(den, UniPoly) else UniPoly(den))
        if P.field != QQ or Q.field != QQ:
            raise InvalidInputError("rational maps are defined over QQ")
        if Q.is_zero():
            raise DegenerateMapError("zero denominator")
        d = max(P.degree, Q.degree)
        if d < 2:
            raise DegenerateMapError(f"degree {d} < 2")
        if P.is_zero():
            raise DegenerateMapError("constant map")
        if P.degree > 0 and Q.degree > 0 and poly_resultant(P, Q) == 0:
            raise DegenerateMapError("numerator and denominator share a root")
        scale = Q.lc if Q.degree > 0 else Q.coeff(0)
        object.__setattr__(self, "num", P.scale(1 / scale))
        object.__setattr__(self, "den", Q.scale(1 / scale))
        object.__setattr__(self, "degree", d)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMap is immutable")

    @classmethod
    def polynomial(cls, coeffs) -> "RationalMap":
        return cls(UniPoly(coeffs), UniPoly([1]))

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_polynomial():
            return f"RationalMap({self.num.to_str()})"
        return f"RationalMap(({self.num.to_str()}) / ({self.den.to_str()}))"

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __call__(self, x) -> Point:
        x = as_point(x)
        P, Q, d = self.num, self.den, self.degree
        if x is INF:
            return _dehomog(P.coeff(d), Q.coeff(d))
        return _dehomog(P(x), Q(x))

    def wronskian(self) -> UniPoly:
        """P'Q - PQ', the numerator of the derivative."""
        return self.num.derivative() * self.den - self.num * self.den.derivative()

    def reversed_pair(self) -> tuple[UniPoly, UniPoly]:
        """(P~, Q~) with P~(w) = w^d P(1/w): the map in the source chart at infinity."""
        return self.num.reverse(self.degree), self.den.reverse(self.degree)


def make_rational_map(P: UniPoly, Q: UniPoly) -> RationalMap:
    return RationalMap(P, Q)


def conjugate(f: RationalMap, m: Mobius) -> RationalMap:
    """m^{-1} o f o m."""
    d = f.degree
    inner_num = UniPoly([m.b, m.a])
    inner_den = UniPoly([m.d, m.c])
    Pm = f.num.homogeneous_substitute(inner_num, inner_den, d)
    Qm = f.den.homogeneous_substitute(inner_num, inner_den, d)
    inv = m.inverse()
    num = Pm.scale(inv.a) + Qm.scale(inv.b)
    den = Pm.scale(inv.c) + Qm.scale(inv.d)
    try:
        g = RationalMap(num, den)
    except DegenerateMapError as exc:
        raise TheoremCheckFailure(f"conjugation lost degree: {exc}") from exc
    if g.degree != d:
        raise TheoremCheckFailure("conjugation changed the degree")
    return g


def orbit(f: RationalMap, x, n: int) -> list[Point]:
    if n < 0:
        raise InvalidInputError("orbit length must be non-negative")
    pts = [as_point(x)]
    for _ in range(n):
        pts.append(f(pts[-1]))
    return pts


def naive_height(x: Point) -> int:
    if x is INF:
        return 1
    return max(abs(x.numerator), abs(x.denominator))


@dataclass(frozen=True)
class OrbitStatus:
    kind: str  # "preperiodic" | "escaped" | "undecided"
    tail: int | None = None
    period: int | None = None
    iterations: int = 0


def preperiodic_bounded(f: RationalMap, x, max_iter: int = 1000, height_bound: int = 10**12) -> OrbitStatus:
    if max_iter < 1:
        raise InvalidInputError("max_iter must be >= 1")
    seen: dict = {}
    cur = as_point(x)
    for i in range(max_iter + 1):
        key = cur if cur is not INF else "inf"
        if key in seen:
            j = seen[key]
            return OrbitStatus("preperiodic", tail=j, period=i - j, iterations=i)
        if naive_height(cur) > height_bound:
            return OrbitStatus("escaped", iterations=i)
        seen[key] = i
        if i < max_iter:
            cur = f(cur)
    return OrbitStatus("undecided", iterations=max_iter)


# -- fixed points and multipliers ------------------------------------------------


@dataclass(frozen=True)
class FixedPointData:
    dynatomic: UniPoly
    infinity_fixed: bool
    infinity_multiplicity: int
    rational_fixed_points: tuple[tuple[Fraction, int], ...]

    @property
    def all_rational(self) -> bool:
        return sum(m for _, m in self.rational_fixed_points) == self.dynatomic.degree

    def distinct_count(self) -> int:
        affine = squarefree_part(self.dynatomic).degree if self.dynatomic.degree > 0 else 0
        return affine + (1 if self.infinity_fixed else 0)


def fixed_point_data(f: RationalMap) -> FixedPointData:
    phi = f.num - f.den.shift(1)
    inf_mult = f.degree + 1 - phi.degree
    if phi.degree <= 0:
        pts: list[tuple[Fraction, int]] = []
    elif phi.degree <= 4:
        _, factors = factor_upto_quartic(phi)
        pts = [(-g.coeff(0), m) for g, m in factors if g.degree == 1]
    else:
        pts = rational_roots(phi)
    pts.sort(key=lambda t: t[0])
    return FixedPointData(phi, inf_mult > 0, inf_mult, tuple(pts))


def infinity_multiplier(f: RationalMap) -> Fraction:
    """Derivative at w = 0 of 1/f(1/w); requires f(inf) = inf."""
    if f(INF) is not INF:
        raise InvalidInputError("infinity is not fixed")
    d = f.degree
    return f.den.coeff(d - 1) / f.num.coeff(d)


def multiplier_at(f: RationalMap, x) -> Fraction:
    x = as_point(x)
    if f(x) != x:
        raise InvalidInputError(f"{x} is not a fixed point")
    if x is INF:
        return infinity_multiplier(f)
    return f.wronskian()(x) / f.den(x) ** 2


@dataclass(frozen=True)
class MultiplierSpectrum:
    monic_poly_in_lambda: UniPoly
    sigma: tuple[Fraction, ...]


def affine_multiplier_poly(f: RationalMap, phi: UniPoly | None = None) -> UniPoly:
    """Monic polynomial whose roots are the multipliers at the roots of ``phi``.

    ``phi`` defaults to the whole dynatomic polynomial; any factor of it may be
    passed.  Built as Res_z(phi, lambda Q^2 - W) by interpolation in lambda.
    """
    if phi is None:
        phi = f.num - f.den.shift(1)
    D = phi.degree
    if D <= 0:
        return UniPoly([1])
    Q2 = f.den * f.den
    W = f.wronskian()
    xs, ys = [], []
    for lam in range(D + 1):
        g = Q2.scale(lam) - W
        if g.is_zero():
            raise TheoremCheckFailure("derivative is constant for a map of degree >= 2")
        r = poly_resultant(phi, g)
        # drop lc(phi)^deg(g) so every sample uses the same normalisation
        xs.append(lam)
        ys.append(r / phi.lc ** g.degree)
    T = interpolate(xs, ys)
    if T.degree != D:
        raise TheoremCheckFailure("dynatomic polynomial shares a root with the denominator")
    return T.monic()


def multiplier_spectrum(f: RationalMap) -> MultiplierSpectrum:
    fp = fixed_point_data(f)
    T = affine_multiplier_poly(f, fp.dynatomic)
    if fp.infinity_multiplicity:
        lam_inf = infinity_multiplier(f)
        T = T * UniPoly([-lam_inf, 1]) ** fp.infinity_multiplicity
    n = f.degree + 1
    if T.degree != n:
        raise TheoremCheckFailure(f"spectrum degree {T.degree} != d + 1 = {n}")
    sigma = tuple((-1) ** i * T.coeff(n - i) for i in range(1, n + 1))
    return MultiplierSpectrum(T, sigma)


def sigma_invariants(f: RationalMap) -> tuple[Fraction, ...]:
    return multiplier_spectrum(f).sigma


# -- ramification --------------------------------------------------------------


@dataclass(frozen=True)
class RamificationProfile:
    points: tuple[tuple[Point, int], ...]
    irrational: tuple[tuple[UniPoly, int], ...] = field(default=())
    wronskian: UniPoly | None = None

    def total(self) -> int:
        """Sum of (index - 1) over all critical points, irrational ones by degree."""
        return sum(e - 1 for _, e in self.points) + sum(g.degree * (e - 1) for g, e in self.irrational)

    def as_dict(self) -> dict:
        return {("inf" if x is INF else x): e for x, e in self.points}


def ramification_profile(f: RationalMap) -> RamificationProfile:
    W = f.wronskian()
    points: list[tuple[Point, int]] = []
    irrational: list[tuple[UniPoly, int]] = []
    if W.degree > 0:
        for g, e in squarefree_decomposition(W):
            rest = g
            for r, _ in rational_roots(g):
                points.append((r, e + 1))
                rest = rest.exact_div(UniPoly([-r, 1]))
            if rest.degree > 0:
                irrational.append((rest, e + 1))
    Pt, Qt = f.reversed_pair()
    Wt = Pt.derivative() * Qt - Pt * Qt.derivative()
    order = next(i for i, c in enumerate(Wt.coeffs) if c != 0)
    if order:
        points.append((INF, order + 1))
    points.sort(key=lambda t: (t[0] is INF, t[0] if t[0] is not INF else 0))
    return RamificationProfile(tuple(points), tuple(irrational), W)


# -- automorphisms ---------------------------------------------------------------


def projective_fixed_points(f: RationalMap) -> list[Point]:
    """Distinct rational fixed points, infinity last."""
    fp = fixed_point_data(f)
    pts: list[Point] = [x for x, _ in fp.rational_fixed_points]
    if fp.infinity_fixed:
        pts.append(INF)
    return pts


def _scaled_bivariate(P: UniPoly, scaled: bool, reverse_to: int | None = None) -> MultiPoly:
    """P(k z) (scaled) or z^n P(k/z) (reverse_to=n) as a polynomial in (k, z)."""
    terms = {}
    for i, c in enumerate(P.coeffs):
        if c == 0:
            continue
        zexp = i if reverse_to is None else reverse_to - i
        terms[(i if scaled else 0, zexp)] = c
    return MultiPoly(("k", "z"), terms)


def _common_rational_roots(identity: MultiPoly) -> list[Fraction]:
    """Nonzero rational k at which every z-coefficient of ``identity`` vanishes."""
    g = None
    for j in identity.powers_of("z"):
        c = identity.coefficient_in("z", j).to_unipoly("k")
        g = c if g is None else poly_gcd(g, c)
    if g is None:
        raise TheoremCheckFailure("commuting identity vanished identically")
    if g.degree <= 0:
        return []
    return [r for r, _ in rational_roots(g) if r != 0]


def _automorphisms_two_points(f: RationalMap, x1: Point, x2: Point) -> list[Mobius]:
    """Automorphisms of a map whose only fixed points are x1 and x2 (both rational).

    Such an automorphism fixes or swaps the pair, so after moving x1 -> 0 and
    x2 -> inf it is k z or k / z; the commuting identity pins down k.
    """
    if x2 is INF:
        L = Mobius(1, -x1, 0, 1)
    else:
        L = Mobius(1, -x1, 1, -x2)
    g = conjugate(f, L.inverse())
    P, Q, d = g.num, g.den, g.degree
    one = lambda U: _scaled_bivariate(U, scaled=False)
    k = MultiPoly.var("k", ("k", "z"))
    # g(k z) = k g(z)
    fix = _scaled_bivariate(P, True) * one(Q) - k * one(P) * _scaled_bivariate(Q, True)
    # g(k / z) = k / g(z), cleared by z^d
    swap = _scaled_bivariate(P, True, d) * one(P) - k * _scaled_bivariate(Q, True, d) * one(Q)
    cands = [Mobius(r, 0, 0, 1) for r in _common_rational_roots(fix)]
    cands += [Mobius(0, r, 1, 0) for r in _common_rational_roots(swap)]
    found = []
    for m in cands:
        aut = L.inverse() @ m @ L
        if conjugate(f, aut) != f:
            raise TheoremCheckFailure("two-point automorphism candidate does not commute")
        if aut not in found:
            found.append(aut)
    return found


def automorphisms_rational(f: RationalMap) -> list[Mobius]:
    """All rational Mobius m with f o m = m o f, found by permuting fixed points.

    Requires every fixed point to be rational.  With three or more distinct
    fixed points each multiplier-preserving permutation is tried; with exactly
    two the one-parameter families fixing or swapping them are solved exactly.
    """
    fp = fixed_point_data(f)
    if not fp.all_rational:
        raise UnsupportedInputError("fixed points are not all rational")
    pts = projective_fixed_points(f)
    if len(pts) < 2:
        raise UnsupportedInputError("fewer than two distinct fixed points")
    found: list[Mobius] = []
    if len(pts) == 2:
        found = _automorphisms_two_points(f, pts[0], pts[1])
    mults = [multiplier_at(f, x) for x in pts] if len(pts) > 2 else []
    for perm in (itertools.permutations(range(len(pts))) if mults else ()):
        if any(mults[i] != mults[j] for i, j in enumerate(perm)):
            continue
        m = Mobius.from_points(pts[:3], [pts[j] for j in perm[:3]])
        if any(m(pts[i]) != pts[j] for i, j in enumerate(perm)):
            continue
        if conjugate(f, m) == f and m not in found:
            found.append(m)
    if Mobius.identity() not in found:
        raise TheoremCheckFailure("identity failed the automorphism check")
    found.sort(key=lambda m: (not m.is_identity(), m.a, m.b, m.c, m.d))
    return found
