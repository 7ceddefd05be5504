"""Shared helpers: conversion to sympy (used only as an independent oracle)."""

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume
from hypothesis import strategies as st

from dynforms.exactalg import UniPoly
from dynforms.projdyn import RationalMap

Z = sp.Symbol("z")


def to_sympy(u: UniPoly, var=Z):
    return sp.S(sum((sp.Rational(c.numerator, c.denominator) * var**i for i, c in enumerate(u.coeffs)), sp.S.Zero))


def from_sympy(expr, var=Z) -> UniPoly:
    coeffs = sp.Poly(expr, var).all_coeffs()[::-1]
    return UniPoly([Fraction(int(sp.numer(c)), int(sp.denom(c))) for c in coeffs])


def map_to_sympy(f: RationalMap):
    return to_sympy(f.num) / to_sympy(f.den)


def sympy_sigma(f: RationalMap) -> tuple:
    """sigma_1..sigma_{d+1} through sympy's own resultant, plus the multiplier at infinity."""
    lam, w = sp.Symbol("lam"), sp.Symbol("w")
    P, Q = to_sympy(f.num), to_sympy(f.den)
    phi = sp.expand(P - Z * Q)
    W = sp.expand(sp.diff(P, Z) * Q - P * sp.diff(Q, Z))
    T = sp.Poly(sp.resultant(phi, lam * Q**2 - W, Z), lam)
    T = T.monic() if T.degree() > 0 else sp.Poly(1, lam)
    d = max(f.num.degree, f.den.degree)
    inf_mult = d + 1 - sp.degree(phi, Z)
    if inf_mult:
        # multiplier at infinity from the chart w = 1/z
        chart = sp.cancel(1 / (P / Q).subs(Z, 1 / w))
        T = T * sp.Poly(lam - sp.diff(chart, w).subs(w, 0), lam) ** inf_mult
    coeffs = T.all_coeffs()
    return tuple((-1) ** i * coeffs[i] for i in range(1, d + 2))


small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def polys(draw, min_deg=0, max_deg=4, elements=small_ints):
    deg = draw(st.integers(min_value=min_deg, max_value=max_deg))
    coeffs = draw(st.lists(elements, min_size=deg + 1, max_size=deg + 1))
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    return UniPoly(coeffs)


@st.composite
def cubic_maps(draw, polynomial=False):
    num = draw(st.lists(small_ints, min_size=4, max_size=4))
    if polynomial:
        den = [draw(st.integers(min_value=1, max_value=3))]
        if num[3] == 0:
            num[3] = 1
    else:
        den = draw(st.lists(small_ints, min_size=4, max_size=4))
    try:
        f = RationalMap(num, den)
    except ValueError:
        assume(False)
    assume(f.degree == 3)
    return f


@pytest.fixture
def z():
    return Z


def multipoly_to_sympy(p):
    """MultiPoly over QQ to a sympy expression in symbols named like its variables."""
    syms = [sp.Symbol(v) for v in p.vars]
    out = sp.S.Zero
    for exps, c in p.terms.items():
        c = sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sp.Integer(int(c))
        out += c * sp.Mul(*(s**e for s, e in zip(syms, exps)))
    return sp.expand(out)


# acceptance criteria record their verdicts here; printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
