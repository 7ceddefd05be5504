"""Galois groups of splitting fields of squarefree rational polynomials, degree <= 4."""

from __future__ import annotations

import enum
from fractions import Fraction

from ..errors import InvalidInputError
from .factor import factor_upto_quartic, resolvent_cubic
from .fields import is_rational_square
from .unipoly import UniPoly, discriminant, poly_gcd, rational_roots


class GaloisLabel(str, enum.Enum):
    TRIVIAL = "trivial"
    Z2 = "Z2"
    Z3 = "Z3"
    Z2xZ2 = "Z2xZ2"
    Z4 = "Z4"
    S3 = "S3"
    D4 = "D4"
    A4 = "A4"
    S4 = "S4"

    @property
    def order(self) -> int:
        return _ORDERS[self]


_ORDERS = {
    GaloisLabel.TRIVIAL: 1,
    GaloisLabel.Z2: 2,
    GaloisLabel.Z3: 3,
    GaloisLabel.Z2xZ2: 4,
    GaloisLabel.Z4: 4,
    GaloisLabel.S3: 6,
    GaloisLabel.D4: 8,
    GaloisLabel.A4: 12,
    GaloisLabel.S4: 24,
}


def _splits_over_quadratic_field(disc: Fraction, field_disc: Fraction) -> bool:
    # a quadratic with discriminant `disc` splits over QQ(sqrt(field_disc))
    return is_rational_square(disc) or is_rational_square(disc * field_disc)


def _irreducible_quartic_group(f: UniPoly) -> GaloisLabel:
    disc = discriminant(f)
    R = resolvent_cubic(f)
    roots = rational_roots(R)
    n_roots = sum(m for _, m in roots)
    if n_roots == 0:
        return GaloisLabel.A4 if is_rational_square(disc) else GaloisLabel.S4
    if n_roots == 3:
        return GaloisLabel.Z2xZ2
    # exactly one rational root r: Z4 iff z^2 - r z + d and z^2 + a z + (b - r)
    # both split over QQ(sqrt(disc))
    r = roots[0][0]
    g = f.monic()
    d, _, b, a = (g.coeff(i) for i in range(4))
    if _splits_over_quadratic_field(r * r - 4 * d, disc) and _splits_over_quadratic_field(
        a * a - 4 * (b - r), disc
    ):
        return GaloisLabel.Z4
    return GaloisLabel.D4


def quartic_galois_group(a: UniPoly) -> GaloisLabel:
    """Label of Gal(split(a)/QQ) for squarefree ``a`` of degree 1..4."""
    if not 1 <= a.degree <= 4:
        raise InvalidInputError(f"degree {a.degree} outside 1..4")
    if a.degree > 1 and poly_gcd(a, a.derivative()).degree > 0:
        raise InvalidInputError("input is not squarefree")
    _, factors = factor_upto_quartic(a)
    degs = sorted(f.degree for f, _ in factors)
    nonlinear = [f for f, _ in factors if f.degree > 1]
    if not nonlinear:
        return GaloisLabel.TRIVIAL
    if degs[-1] == 4:
        return _irreducible_quartic_group(nonlinear[0])
    if degs[-1] == 3:
        return GaloisLabel.Z3 if is_rational_square(discriminant(nonlinear[0])) else GaloisLabel.S3
    if len(nonlinear) == 1:
        return GaloisLabel.Z2
    # two irreducible quadratics: same field iff the discriminant ratio is a square
    d1, d2 = discriminant(nonlinear[0]), discriminant(nonlinear[1])
    return GaloisLabel.Z2 if is_rational_square(d1 * d2) else GaloisLabel.Z2xZ2
