"""Degree-3 normal forms and the fixed-point-multiplier classifier.

Three pieces live here:

* the sigma-invariant normal form ``phi(sigma1, sigma3)`` for cubic
  polynomials, with its inverse ``cubic_poly_to_sigma``;
* the construction of a cubic map whose four fixed points equal their own
  multipliers (``lemma4_construct``);
* ``classify_partial_fpm``, which decides over QQ whether a map of degree 2
  or 3 has a rational conjugate in (partial) fixed-point multiplier form.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import DegenerateMapError, InvalidInputError, TheoremCheckFailure
from .exactalg import (
    QQ,
    GaloisLabel,
    UniPoly,
    factor_upto_quartic,
    homogeneous_resultant,
    nullspace,
    poly_gcd,
    poly_invmod,
    quartic_galois_group,
    rational_roots,
    squarefree_part,
)
from .projdyn import (
    INF,
    Mobius,
    RationalMap,
    affine_multiplier_poly,
    conjugate,
    multiplier_spectrum,
)

Z = UniPoly([0, 1])


# -- the sigma normal form --------------------------------------------------------


@dataclass(frozen=True)
class SigmaPair:
    sigma1: Fraction
    sigma3: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sigma1", QQ(self.sigma1))
        object.__setattr__(self, "sigma3", QQ(self.sigma3))


def curve_C_value(s: SigmaPair) -> Fraction:
    s1, s3 = s.sigma1, s.sigma3
    return 4 * s1**3 - 36 * s1**2 + 81 * s1 + 27 * s3 - 54


def curve_C_member(s: SigmaPair) -> bool:
    return curve_C_value(s) == 0


def _first_form(s: SigmaPair) -> tuple[UniPoly, UniPoly]:
    s1, s3 = s.sigma1, s.sigma3
    num = UniPoly([2 * s1 * s3 - 3 * s3, 0, 2 * s1**2 - 15 * s1 + 18, 12 - 2 * s1])
    den = UniPoly([4 * s1**2 - 12 * s1 + 3 * s3 + 9, -(18 * s1 - 27), 9 + 3 * s1, -3])
    return num, den


def _second_form(s: SigmaPair) -> tuple[UniPoly, UniPoly]:
    s1, s3 = s.sigma1, s.sigma3
    num = UniPoly([0, 0, 0, 9 * s1 - 27])
    den = UniPoly(
        [
            24 * s3 - 4 * s1 * s3,
            6 * s1**2 - 45 * s1 - 9 * s3 + 54,
            -(2 * s1**2 - 33 * s1 + 45),
            -2 * s1 - 6,
        ]
    )
    return num, den


_SPECIAL = {
    (Fraction(6), Fraction(0)): [0, 0, 0, 1],
    (Fraction(3), Fraction(1)): [0, 1, 0, 1],
    (Fraction(3, 2), Fraction(0)): [0, Fraction(3, 2), 0, 1],
}


def phi_normal_form(s: SigmaPair) -> RationalMap:
    """Representative of the cubic polynomial class with sigma data (s1, 2 s1 - 3, s3, 0)."""
    key = (s.sigma1, s.sigma3)
    if key in _SPECIAL:
        return RationalMap.polynomial(_SPECIAL[key])
    if not curve_C_member(s):
        num, den = _first_form(s)
    else:
        if s.sigma1 in (3, 6) or s.sigma3 == 0:
            raise TheoremCheckFailure(f"point {key} of the curve is not covered by any case")
        num, den = _second_form(s)
    try:
        f = RationalMap(num, den)
    except DegenerateMapError as exc:
        raise TheoremCheckFailure(f"normal form degenerates at {key}: {exc}") from exc
    if f.degree != 3:
        raise TheoremCheckFailure(f"normal form has degree {f.degree} at {key}")
    return f


def cubic_poly_to_sigma(f: RationalMap) -> SigmaPair:
    if not f.is_polynomial() or f.degree != 3:
        raise InvalidInputError("expected a cubic polynomial")
    sig = multiplier_spectrum(f).sigma
    if sig[1] != 2 * sig[0] - 3 or sig[3] != 0:
        raise TheoremCheckFailure(f"polynomial sigma data {sig} violates sigma2 = 2 sigma1 - 3, sigma4 = 0")
    return SigmaPair(sig[0], sig[2])


def form_degeneracy_check(s: SigmaPair, which: str) -> Fraction:
    """Resultant of numerator and denominator of one form, taken at formal degree 3."""
    if which == "first":
        num, den = _first_form(s)
    elif which == "second":
        num, den = _second_form(s)
    else:
        raise InvalidInputError(f"unknown form {which!r}")
    return homogeneous_resultant(num, den, 3)


# -- fixed-point multiplier form --------------------------------------------------


def milnor_check_quartic(phi: UniPoly) -> bool:
    """sum 1/(1 - x_i) = 1 over the roots, i.e. phi'(1) = phi(1) != 0."""
    if phi.degree != 4:
        raise InvalidInputError("expected a quartic")
    phi = phi.monic()
    v = phi(1)
    return v != 0 and phi.derivative()(1) == v


def fixed_points_are_multipliers(f: RationalMap, phi: UniPoly) -> bool:
    """Every root x of ``phi`` (a factor of the fixed-point polynomial) has f'(x) = x."""
    if phi.degree <= 0:
        return True
    Q2 = f.den * f.den
    return (f.wronskian() - Z * Q2) % phi == UniPoly([])


def lemma4_construct(phi: UniPoly) -> RationalMap:
    """Cubic map F = z - phi/q with fixed points the roots of phi, each its own multiplier."""
    if phi.field != QQ or phi.degree != 4:
        raise InvalidInputError("expected a rational quartic")
    phi = phi.monic()
    if poly_gcd(phi, phi.derivative()).degree > 0:
        raise InvalidInputError("quartic is not squarefree")
    if phi(1) == 0:
        raise InvalidInputError("1 is a root of the quartic")
    if not milnor_check_quartic(phi):
        raise InvalidInputError("roots fail sum 1/(1 - x) = 1")
    # (1 - z) q - phi' = -phi, so q = (phi - phi') / (z - 1)
    q, r = (phi - phi.derivative()).divmod(UniPoly([-1, 1]))
    if not r.is_zero():
        raise TheoremCheckFailure("phi - phi' not divisible by z - 1 despite the Milnor relation")
    if q.degree != 3 or poly_gcd(q, phi).degree > 0:
        raise InvalidInputError("denominator degenerates for this quartic")
    F = RationalMap(Z * q - phi, q)
    if F.degree != 3:
        raise TheoremCheckFailure("constructed map is not cubic")
    fix = F.num - F.den.shift(1)
    if fix.monic() != phi:
        raise TheoremCheckFailure("fixed points of the construction differ from the roots")
    if not fixed_points_are_multipliers(F, phi):
        raise TheoremCheckFailure("constructed map is not in fixed-point multiplier form")
    return F


# -- classification ---------------------------------------------------------------


class FpmOutcome(str, enum.Enum):
    FIXED_POINT_MULTIPLIER_FORM = "FixedPointMultiplierForm"
    PARTIAL_VIA_GALOIS_INVARIANT_SET = "PartialViaGaloisInvariantSet"
    PARTIAL_VIA_AUTOMORPHISM = "PartialViaAutomorphism"
    NO_FORM_EXISTS = "NoFormExists"
    UNSUPPORTED = "Unsupported"


Count = Union[int, str]


@dataclass(frozen=True)
class FpmClassification:
    outcome: FpmOutcome
    evidence: dict
    conjugate_count: Count
    dynatomic_galois: GaloisLabel
    conjugated_map: RationalMap | None = None
    conjugator: Mobius | None = None
    automorphism: Mobius | None = None
    flags: tuple[str, ...] = field(default=())


def _move_infinity_off(f: RationalMap) -> tuple[RationalMap, Mobius]:
    """(f0, M) with f0 = M^-1 f M and infinity not fixed by f0."""
    if f(INF) is not INF:
        return f, Mobius.identity()
    n = 0
    while f(n) == Fraction(n):
        n += 1
    M = Mobius(n, 1, 1, 0)  # z -> n + 1/z
    f0 = conjugate(f, M)
    if f0(INF) is INF:
        raise TheoremCheckFailure("infinity still fixed after moving it")
    return f0, M


def _multiplier_residue(f: RationalMap, phi: UniPoly) -> UniPoly:
    """g with g(x) = f'(x) at each root x of phi."""
    Q2 = f.den * f.den
    return (f.wronskian() * poly_invmod(Q2 % phi, phi)) % phi


def _conjugator_to_multipliers(f: RationalMap, phi: UniPoly, pads: list[tuple[Fraction, Fraction]]) -> Mobius | None:
    """Mobius rho with rho(x) = f'(x) at every root of phi and rho(s) = t for padding pairs."""
    k = phi.degree
    g = _multiplier_residue(f, phi)
    # a z + b - g(z) (c z + d) = 0 mod phi, one unknown vector (a, b, c, d)
    cols = [Z % phi, UniPoly([1]) % phi, -((Z * g) % phi), -g]
    rows = [[col.coeff(i) for col in cols] for i in range(k)]
    for s, t in pads:
        rows.append([s, Fraction(1), -t * s, -t])
    basis = nullspace(rows, 4)
    if len(basis) != 1:
        return None
    a, b, c, d = basis[0]
    if a * d - b * c == 0:
        return None
    return Mobius(a, b, c, d)


def _smallest_avoiding(avoid, count: int) -> list[Fraction]:
    out, n = [], 0
    while len(out) < count:
        if Fraction(n) not in avoid:
            out.append(Fraction(n))
        n += 1
    return out


def _order_two_automorphism(f0: RationalMap, phi: UniPoly, T: UniPoly) -> Mobius | None:
    """The involution fixing the two fixed points with distinct multipliers, if it commutes with f0.

    Needs four affine fixed points and exactly three distinct multipliers.
    Works with irrational fixed points: only the factor for the simple
    multipliers is needed, and that factor is rational.
    """
    doubled = [r for r, m in rational_roots(T) if m == 2]
    if len(doubled) != 1:
        return None
    lam = doubled[0]
    Q2 = f0.den * f0.den
    pair = poly_gcd(phi, f0.wronskian() - Q2.scale(lam))
    if pair.degree != 2:
        raise TheoremCheckFailure("repeated multiplier does not belong to exactly two fixed points")
    fixed_pair = phi.exact_div(pair)
    w, v, u = (fixed_pair.coeff(i) for i in range(3))
    alpha = Mobius(-v, -2 * w, 2 * u, v)
    if conjugate(f0, alpha) != f0:
        return None
    if alpha.compose(alpha) != Mobius.identity():
        raise TheoremCheckFailure("candidate automorphism is not an involution")
    return alpha


def _invariant_sets(f0: RationalMap, phi: UniPoly, size: int) -> list[UniPoly]:
    """Products of irreducible factors of phi of total degree ``size`` with distinct multipliers."""
    _, factors = factor_upto_quartic(phi)
    irreducibles = [g for g, _ in factors]
    found = []
    for r in range(1, len(irreducibles) + 1):
        for combo in itertools.combinations(irreducibles, r):
            if sum(g.degree for g in combo) != size:
                continue
            S = UniPoly([1])
            for g in combo:
                S = S * g
            TS = affine_multiplier_poly(f0, S)
            if TS.degree <= 1 or poly_gcd(TS, TS.derivative()).degree == 0:
                found.append(S)
    return found


def _rho_for_set(f0: RationalMap, phi: UniPoly, S: UniPoly) -> Mobius | None:
    """Conjugator sending the roots of S to their multipliers, padded to three points."""
    npad = 3 - S.degree
    pads: list[tuple[Fraction, Fraction]] = []
    if npad > 0:
        srcs = [x for x in _smallest_nonroots(phi, npad)]
        TS = affine_multiplier_poly(f0, S)
        tgts = [t for t in _smallest_nonroots(TS, npad)]
        pads = list(zip(srcs, tgts))
    return _conjugator_to_multipliers(f0, S, pads)


def _smallest_nonroots(g: UniPoly, count: int) -> list[Fraction]:
    roots = {r for r, _ in rational_roots(g)} if g.degree > 0 else set()
    return _smallest_avoiding(roots, count)


def _check_partial(h: RationalMap, rho: Mobius, S: UniPoly) -> None:
    """The images rho(S) are fixed points of h and equal their multipliers."""
    inv = rho.inverse()
    img = S.homogeneous_substitute(UniPoly([inv.b, inv.a]), UniPoly([inv.d, inv.c]), S.degree)
    fix = h.num - h.den.shift(1)
    if img.degree != S.degree or not (fix % img).is_zero():
        raise TheoremCheckFailure("conjugated fixed points are not where the conjugator sent them")
    if not fixed_points_are_multipliers(h, img):
        raise TheoremCheckFailure("conjugate is not in partial fixed-point multiplier form")


def _partial_conjugates(f: RationalMap, f0: RationalMap, M: Mobius, phi: UniPoly, sets: list[UniPoly]):
    """Distinct rational conjugators (in f's coordinates) over all invariant sets."""
    out: list[Mobius] = []
    first = None
    for S in sets:
        rho = _rho_for_set(f0, phi, S)
        if rho is None:
            continue
        total = M @ rho.inverse()
        if total in out:
            continue
        h = conjugate(f, total)
        _check_partial(h, rho, S)
        out.append(total)
        if first is None:
            first = h
    return first, out


def _existence_criteria(f: RationalMap, aut: Mobius | None, full_form: bool) -> dict:
    p_minus_xq = f.num - f.den.shift(1)
    return {
        "conjugate_to_constructed_map": full_form,
        "denominator_degree_at_most_2": f.den.degree <= 2,
        "fixed_quartic_has_rational_root": p_minus_xq.degree == 4 and bool(rational_roots(p_minus_xq)),
        "unique_nontrivial_automorphism": aut is not None,
    }


def classify_partial_fpm(f: RationalMap) -> FpmClassification:
    """Decide whether some conjugate of f over QQ is in partial fixed-point multiplier form."""
    if f.degree not in (2, 3):
        raise InvalidInputError(f"classifier handles degree 2 and 3 maps, got degree {f.degree}")
    f0, M = _move_infinity_off(f)
    phi = squarefree_part(f0.num - f0.den.shift(1)).monic()
    nfix = phi.degree
    T = affine_multiplier_poly(f0, f0.num - f0.den.shift(1))
    distinct = squarefree_part(T).degree
    galois = quartic_galois_group(phi)
    need = min(nfix, 3)
    ev: dict = {
        "fixed_points": nfix,
        "distinct_multipliers": distinct,
        "multiplier_polynomial": T,
        "dynatomic_factors": [(g, m) for g, m in factor_upto_quartic(f.num - f.den.shift(1))[1]]
        if 1 <= (f.num - f.den.shift(1)).degree <= 4
        else [],
        "enough_distinct_multipliers": distinct >= need,
    }
    flags: list[str] = []

    def lift(m: Mobius) -> Mobius:
        # automorphism of f0 -> automorphism of f
        return M @ m @ M.inverse()

    if distinct < need:
        ev["failed"] = "too-few-distinct-multipliers"
        ev["existence_criteria"] = _existence_criteria(f, None, False)
        return FpmClassification(FpmOutcome.NO_FORM_EXISTS, ev, "not-applicable", galois)

    aut = None
    if f.degree == 3 and nfix == 4 and distinct == 3:
        aut = _order_two_automorphism(f0, phi, T)
        if aut is not None:
            aut_f = lift(aut)
            ev["automorphism"] = aut_f
            ev["galois_pair_reading"] = (
                "Galois action fixes the pair of fixed points sharing a multiplier as a set; "
                "automatic because that multiplier is rational"
            )
            if galois not in (GaloisLabel.TRIVIAL, GaloisLabel.Z2, GaloisLabel.Z2xZ2):
                raise TheoremCheckFailure(f"order-2 automorphism with dynatomic group {galois.value}")
            ev["existence_criteria"] = _existence_criteria(f, aut_f, False)
            sets = _invariant_sets(f0, phi, need)
            ev["invariant_sets"] = sets
            h, rhos = _partial_conjugates(f, f0, M, phi, sets)
            if not rhos:
                flags.append("conjugator-not-rational")
            return FpmClassification(
                FpmOutcome.PARTIAL_VIA_AUTOMORPHISM, ev, 2, galois, h, rhos[0] if rhos else None, aut_f, tuple(flags)
            )

    # full form: a conjugator sending every fixed point to its multiplier
    full_rho = None
    if f.degree == 3 and nfix == 4 and distinct == 4:
        rho = _conjugator_to_multipliers(f0, phi, [])
        if rho is not None:
            total = M @ rho.inverse()
            h = conjugate(f, total)
            target = lemma4_construct(T)
            if h != target:
                raise TheoremCheckFailure("fixed-point multiplier conjugate differs from the constructed map")
            full_rho = total
            ev["constructed_map"] = target
            flags.append("exact-conjugacy")

    sets = _invariant_sets(f0, phi, need) if nfix >= 1 else []
    ev["invariant_sets"] = sets
    ev["existence_criteria"] = _existence_criteria(f, None, full_rho is not None)

    if full_rho is not None:
        h = conjugate(f, full_rho)
        return FpmClassification(
            FpmOutcome.FIXED_POINT_MULTIPLIER_FORM, ev, 1, galois, h, full_rho, None, tuple(flags)
        )

    if sets:
        h, rhos = _partial_conjugates(f, f0, M, phi, sets)
        if not rhos:
            raise TheoremCheckFailure("Galois-invariant set found but no conjugator solves the system")
        total = rhos[0]
        if nfix < 3:
            flags.append("count-indeterminate")
            count: Count = "count-indeterminate"
        else:
            count = len(rhos)
        if fixed_points_are_multipliers(h, squarefree_part(h.num - h.den.shift(1))) and h(INF) is not INF:
            ev["already_full_form"] = True
        return FpmClassification(
            FpmOutcome.PARTIAL_VIA_GALOIS_INVARIANT_SET, ev, count, galois, h, total, None, tuple(flags)
        )

    ev["failed"] = "no-invariant-set-or-automorphism"
    return FpmClassification(FpmOutcome.NO_FORM_EXISTS, ev, "not-applicable", galois)
