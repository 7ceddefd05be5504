"""Factorization over QQ for polynomials of degree at most four."""

from __future__ import annotations

from fractions import Fraction

from ..errors import FieldMismatchError, InvalidInputError
from .fields import is_rational_square, rational_sqrt
from .unipoly import UniPoly, rational_roots


def resolvent_cubic(f: UniPoly) -> UniPoly:
    """Resolvent cubic whose roots are x1x2+x3x4, x1x3+x2x4, x1x4+x2x3.

    For monic z^4 + a z^3 + b z^2 + c z + d this is
    y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2).
    """
    if f.degree != 4:
        raise InvalidInputError("resolvent cubic needs a quartic")
    g = f.monic()
    d, c, b, a = (g.coeff(i) for i in range(4))
    return UniPoly([-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1])


def _split_quartic_into_quadratics(g: UniPoly) -> tuple[UniPoly, UniPoly] | None:
    """Find monic rational quadratics q1*q2 = g (g monic, no rational roots)."""
    d, c, b, a = (g.coeff(i) for i in range(4))
    for theta, _ in rational_roots(resolvent_cubic(g)):
        # constant terms satisfy Y^2 - theta Y + d, linear terms X^2 - a X + (b - theta)
        disc_const = theta * theta - 4 * d
        disc_lin = a * a - 4 * (b - theta)
        if not (is_rational_square(disc_const) and is_rational_square(disc_lin)):
            continue
        rc, rl = rational_sqrt(disc_const), rational_sqrt(disc_lin)
        q, s = (theta + rc) / 2, (theta - rc) / 2
        u, v = (a + rl) / 2, (a - rl) / 2
        for lin1, lin2 in ((u, v), (v, u)):
            if lin1 * s + lin2 * q == c:
                q1 = UniPoly([q, lin1, 1])
                q2 = UniPoly([s, lin2, 1])
                if q1 * q2 == g:
                    return q1, q2
    return None


def factor_upto_quartic(a: UniPoly) -> tuple[Fraction, list[tuple[UniPoly, int]]]:
    """Factor a rational polynomial of degree 1..4 into monic irreducibles.

    Returns ``(content, [(factor, multiplicity), ...])`` with
    ``content * prod(factor**mult) == a``; factors sorted by (degree, coeffs).
    """
    if a.field.p is not None:
        raise FieldMismatchError("factorization is over QQ only")
    if not 1 <= a.degree <= 4:
        raise InvalidInputError(f"degree {a.degree} outside 1..4")
    content = a.lc
    rest = a.monic()
    found: dict[UniPoly, int] = {}
    for r, m in rational_roots(rest):
        lin = UniPoly([-r, 1])
        found[lin] = found.get(lin, 0) + m
        rest = rest.exact_div(lin ** m)
    if rest.degree == 4:
        split = _split_quartic_into_quadratics(rest)
        if split is None:
            found[rest] = 1
        else:
            for q in split:
                found[q] = found.get(q, 0) + 1
    elif rest.degree > 0:
        found[rest] = found.get(rest, 0) + 1
    factors = sorted(found.items(), key=lambda t: (t[0].degree, t[0].coeffs))
    return content, factors


def is_irreducible(a: UniPoly) -> bool:
    _, fs = factor_upto_quartic(a)
    return len(fs) == 1 and fs[0][1] == 1
