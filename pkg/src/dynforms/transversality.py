"""Algebraic transversality for bicritical polynomials, certified mod p.

For f = a B_{d,k} + c pick a prime p > k + 1 dividing exactly one of
d, d-1, ..., d-k (say d-r).  Mod p every term of B_{d,k} except z^(d-r)
dies, so f = a s z^(tp) + c with tp = d - r.  Along the curves
f^m(0) = 0 and f^n(1) = 1 the Jacobian J satisfies a J = f^n(1) - f^m(0),
which equals 1 on the intersection.  This module checks that identity
literally in F_p[a, c] and scans intersection points as witnesses.

The failure examples for three critical points also live here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable

from .critforms import BelyiParams, NCritSpec, belyi_poly, canonical_k_bound, ncrit_polynomial
from .errors import InvalidInputError, TheoremCheckFailure
from .exactalg import GF, MultiPoly, PrimeFieldElem, QuadraticExtension, is_prime, primes_upto
from .exactalg.multipoly import DEFAULT_TERM_CAP, det3

AC = ("a", "c")


@dataclass(frozen=True)
class SylvesterDatum:
    d: int
    k: int
    p: int
    r: int
    t: int
    s: int

    def __post_init__(self):
        d, k, p, r = self.d, self.k, self.p, self.r
        if not is_prime(p) or p <= k + 1:
            raise InvalidInputError(f"need a prime above k + 1 = {k + 1}")
        if not 0 <= r <= k or (d - r) % p or self.t * p != d - r:
            raise InvalidInputError("p must divide d - r with t p = d - r")
        if any((d - j) % p == 0 for j in range(k + 1) if j != r):
            raise InvalidInputError("p divides more than one of d, ..., d - k")
        if self.s % p == 0:
            raise InvalidInputError("surviving coefficient vanishes mod p")

    @property
    def exponent(self) -> int:
        return self.t * self.p


def _surviving_coefficient(d: int, k: int, r: int, p: int) -> int:
    prod = 1
    for j in range(k + 1):
        if j != r:
            prod *= d - j
    den = math.factorial(k - r) * math.factorial(r)
    return (-1) ** (k - r) * prod * pow(den, -1, p) % p


def sylvester_datum(d: int, k: int) -> SylvesterDatum:
    """Smallest prime p > k + 1 dividing one of d, ..., d - k, with its (r, t, s)."""
    if d < 3 or not 1 <= k <= canonical_k_bound(d):
        raise InvalidInputError(f"k = {k} outside canonical range [1, {canonical_k_bound(d)}] for d = {d}")
    for p in primes_upto(d):
        if p <= k + 1:
            continue
        hits = [j for j in range(k + 1) if (d - j) % p == 0]
        if len(hits) == 1:
            r = hits[0]
            return SylvesterDatum(d, k, p, r, (d - r) // p, _surviving_coefficient(d, k, r, p))
        if len(hits) > 1:
            raise TheoremCheckFailure("two multiples of p > k + 1 among k + 1 consecutive integers")
    raise TheoremCheckFailure(f"no Sylvester prime for d={d}, k={k}")


def belyi_reduce_mod_p(bp: BelyiParams, sd: SylvesterDatum) -> MultiPoly:
    """B_{d,k} mod p as a polynomial in z; must be the single monomial s z^(tp)."""
    B = belyi_poly(bp)
    out = MultiPoly.from_unipoly(B, "z", ("z",)).reduce_mod(sd.p)
    if len(out) != 1 or out.terms.get((sd.exponent,)) != sd.s:
        raise TheoremCheckFailure(f"B_{bp.d},{bp.k} mod {sd.p} is {out.to_str()}, not {sd.s}*z^{sd.exponent}")
    return out


def orbit_polys(sd: SylvesterDatum, base: int, m: int, cap: int = DEFAULT_TERM_CAP) -> list[MultiPoly]:
    """[f^0(base), ..., f^m(base)] in F_p[a, c] for f = a s z^(tp) + c."""
    if m < 0:
        raise InvalidInputError("iteration count must be non-negative")
    F = GF(sd.p)
    a, c = (MultiPoly.var(v, AC, F, cap) for v in AC)
    out = [MultiPoly.const(base, AC, F, cap)]
    for _ in range(m):
        out.append(a.scale(sd.s) * out[-1] ** sd.exponent + c)
    return out


@dataclass
class JacobianReport:
    d: int
    k: int
    m: int
    n: int
    datum: SylvesterDatum
    J: MultiPoly
    identity_holds: bool
    partial_c_holds: bool
    partial_a_holds: bool
    ext: int
    intersection_points: list = field(default_factory=list)
    all_transverse: bool = True

    @property
    def certified(self) -> bool:
        return self.identity_holds and self.partial_c_holds and self.partial_a_holds and self.all_transverse


def _scan_field(p: int, ext: int) -> list:
    if ext == 1:
        return [PrimeFieldElem(v, p) for v in range(p)]
    if ext == 2:
        return list(QuadraticExtension(p).elements())
    raise InvalidInputError("scan degree must be 1 or 2")


def _iterate(a, c, s, e, x, steps):
    for _ in range(steps):
        x = a * s * x**e + c
    return x


def jacobian_certify(
    sd: SylvesterDatum, m: int, n: int, ext: int = 1, cap: int = DEFAULT_TERM_CAP, strict: bool = True
) -> JacobianReport:
    """Certify transversality of f^m(0) = 0 and f^n(1) = 1 for f = a s z^(tp) + c over F_p."""
    if m < 1 or n < 1:
        raise InvalidInputError("m and n must be positive")
    zero_orbit = orbit_polys(sd, 0, m, cap)
    one_orbit = orbit_polys(sd, 1, n, cap)
    F1, F2 = zero_orbit[m], one_orbit[n]
    a = MultiPoly.var("a", AC, GF(sd.p), cap)
    one = MultiPoly.const(1, AC, GF(sd.p), cap)

    # the partials the argument uses, as identities
    partial_c = F1.derivative("c") == one and F2.derivative("c") == one
    prev0 = (zero_orbit[m - 1] ** sd.exponent).scale(sd.s)
    prev1 = (one_orbit[n - 1] ** sd.exponent).scale(sd.s)
    partial_a = F1.derivative("a") == prev0 and F2.derivative("a") == prev1
    # Jacobian of (f^m(0), f^n(1) - 1) with respect to (c, a)
    J = F1.derivative("c") * F2.derivative("a") - F1.derivative("a") * F2.derivative("c")
    identity = a * J == F2 - F1

    report = JacobianReport(sd.d, sd.k, m, n, sd, J, identity, partial_c, partial_a, ext)
    elems = _scan_field(sd.p, ext)
    for av, cv in itertools.product(elems, elems):
        if _iterate(av, cv, sd.s, sd.exponent, av * 0, m) != 0:
            continue
        if _iterate(av, cv, sd.s, sd.exponent, av * 0 + 1, n) != 1:
            continue
        jv = J.evaluate({"a": av, "c": cv})
        ok = bool(av) and bool(jv) and av * jv == 1
        report.intersection_points.append(((av, cv), jv))
        if not ok:
            report.all_transverse = False
    if strict and not report.certified:
        raise TheoremCheckFailure(
            f"transversality check failed for d={sd.d}, k={sd.k}, m={m}, n={n}: "
            f"identity={identity}, partials=({partial_c}, {partial_a}), transverse={report.all_transverse}"
        )
    return report


# -- failure examples for three critical points ------------------------------------


def ncrit_reduce_mod_p(spec: NCritSpec, p: int) -> MultiPoly:
    return ncrit_polynomial(spec).reduce_mod(p)


def z_powers(poly: MultiPoly) -> list[int]:
    return [e for e in poly.powers_of("z") if e > 0]


def classify_reduction(poly: MultiPoly) -> str:
    powers = z_powers(poly)
    if not powers:
        return "kills-everything"
    return "keeps-monomial" if len(powers) == 1 else "keeps-multiple-terms"


def d10_report(primes: Iterable[int] | None = None) -> dict[int, tuple[str, MultiPoly]]:
    """Reduction of the d = 10, k = (7, 1), gamma = (-1, gamma) form at each prime."""
    spec = NCritSpec(10, (7, 1), (-1, "gamma"))
    poly = ncrit_polynomial(spec)
    out = {}
    for p in primes if primes is not None else primes_upto(13):
        red = poly.reduce_mod(p)
        out[p] = (classify_reduction(red), red)
    return out


def tricritical_form_mod3(gamma0: int = 1) -> MultiPoly:
    """The d = 4, k = (1, 1) form with gamma = (gamma0, gamma) reduced mod 3."""
    red = ncrit_reduce_mod_p(NCritSpec(4, (1, 1), (gamma0, "gamma")), 3)
    if z_powers(red) != [3]:
        raise TheoremCheckFailure(f"d = 4 form mod 3 is {red.to_str()}, expected a cubic monomial plus c")
    return red


def tricritical_jacobian_mod3(m: int, n: int, k: int, gamma0: int = 1, cap: int = DEFAULT_TERM_CAP) -> MultiPoly:
    """det of the partials of (f^m(0), f^n(gamma0), f^k(gamma)) in (c, a, gamma) over F_3."""
    if min(m, n, k) < 1:
        raise InvalidInputError("iteration counts must be positive")
    f = tricritical_form_mod3(gamma0).with_cap(cap)
    F = f.field

    def iterate(x: MultiPoly, steps: int) -> MultiPoly:
        for _ in range(steps):
            x = f.substitute("z", x)
        return x

    rows = [
        iterate(MultiPoly.const(0, f.vars, F, cap), m),
        iterate(MultiPoly.const(gamma0, f.vars, F, cap), n),
        iterate(MultiPoly.var("gamma", f.vars, F, cap), k),
    ]
    for r in rows:
        if r.involves("z"):
            raise TheoremCheckFailure("orbit polynomial still involves z")
    return det3([[r.derivative(v) for v in ("c", "a", "gamma")] for r in rows])
