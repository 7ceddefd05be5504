"""Dense univariate polynomials over QQ or a prime field.

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial is the empty tuple.  Instances are immutable and hashable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import FieldMismatchError, InvalidInputError
from .fields import QQ, Field, GF


class UniPoly:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable = (), field: Field = QQ):
        conv = [field(c) for c in coeffs]
        while conv and conv[-1] == 0:
            conv.pop()
        object.__setattr__(self, "coeffs", tuple(conv))
        object.__setattr__(self, "field", field)

    @classmethod
    def _raw(cls, coeffs: list, field: Field) -> "UniPoly":
        # coefficients already canonical; only strips trailing zeros
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        object.__setattr__(obj, "field", field)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def x(cls, field: Field = QQ) -> "UniPoly":
        return cls._raw([field.zero, field.one], field)

    @classmethod
    def const(cls, c, field: Field = QQ) -> "UniPoly":
        return cls([c], field)

    @classmethod
    def monomial(cls, c, e: int, field: Field = QQ) -> "UniPoly":
        return cls([0] * e + [c], field)

    @classmethod
    def from_roots(cls, roots: Iterable, field: Field = QQ) -> "UniPoly":
        out = cls.const(1, field)
        for r in roots:
            out = out * cls([-field(r), 1], field)
        return out

    # -- basic accessors ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.const(other, self.field).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def __repr__(self):
        return f"UniPoly({self.to_str()}, {self.field!r})"

    def to_str(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1 and self.field.p is None:
                parts.append(f"-{mono}")
            else:
                cs = str(c)
                if "/" in cs and mono:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.const(other, self.field)
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    def _norm(self, c):
        p = self.field.p
        return c if p is None else c % p

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self._norm(out[i] + c)
        return UniPoly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([self._norm(-c) for c in self.coeffs], self.field)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UniPoly._raw([], self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        p = self.field.p
        if p is not None:
            out = [c % p for c in out]
        return UniPoly._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInputError("negative exponent")
        result = UniPoly.const(1, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "UniPoly":
        c = self.field(c)
        return UniPoly._raw([self._norm(x * c) for x in self.coeffs], self.field)

    def shift(self, k: int) -> "UniPoly":
        """Multiply by z**k."""
        if not self.coeffs:
            return self
        return UniPoly._raw([self.field.zero] * k + list(self.coeffs), self.field)

    def divmod(self, other) -> tuple["UniPoly", "UniPoly"]:
        b = self._coerce(other)
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        rem = list(self.coeffs)
        db = b.degree
        inv_lc = F.inv(b.lc)
        if len(rem) - 1 < db:
            return UniPoly._raw([], F), self
        quo = [F.zero] * (len(rem) - db)
        p = F.p
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c * inv_lc
            if p is not None:
                q %= p
            quo[k - db] = q
            for j, bc in enumerate(b.coeffs):
                v = rem[k - db + j] - q * bc
                rem[k - db + j] = v % p if p is not None else v
        return UniPoly._raw(quo, F), UniPoly._raw(rem[:db], F)

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InvalidInputError("polynomial division is not exact")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    # -- calculus and evaluation --------------------------------------------

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(
            [self._norm(i * c) for i, c in enumerate(self.coeffs)][1:], self.field
        )

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a field scalar or a UniPoly."""
        if isinstance(x, UniPoly):
            return self.compose(x)
        if self.field.p is None:
            if not isinstance(x, Fraction):
                x = QQ(x)
        else:
            x = self.field(x)
        acc = self.field.zero
        p = self.field.p
        for c in reversed(self.coeffs):
            acc = acc * x + c
            if p is not None:
                acc %= p
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        inner = self._coerce(inner)
        acc = UniPoly._raw([], self.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly._raw([c], self.field)
        return acc

    def reverse(self, n: int | None = None) -> "UniPoly":
        """Return z**n * self(1/z), with n defaulting to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise InvalidInputError("reversal degree below actual degree")
        padded = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return UniPoly._raw(padded[::-1], self.field)

    def homogeneous_substitute(self, num: "UniPoly", den: "UniPoly", n: int) -> "UniPoly":
        """Return den**n * self(num/den) for a formal degree n >= deg(self)."""
        if n < self.degree:
            raise InvalidInputError("formal degree below actual degree")
        num, den = self._coerce(num), self._coerce(den)
        acc = UniPoly._raw([], self.field)
        num_pows = [UniPoly.const(1, self.field)]
        for _ in range(n):
            num_pows.append(num_pows[-1] * num)
        den_pows = [UniPoly.const(1, self.field)]
        for _ in range(n):
            den_pows.append(den_pows[-1] * den)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                acc = acc + (num_pows[i] * den_pows[n - i]).scale(c)
        return acc

    # -- conversions ---------------------------------------------------------

    def to_field(self, field: Field) -> "UniPoly":
        return UniPoly(self.coeffs, field)

    def reduce_mod(self, p: int) -> "UniPoly":
        if self.field.p is not None:
            raise FieldMismatchError("already over a prime field")
        return UniPoly(self.coeffs, GF(p))

    def primitive_integer(self) -> tuple[Fraction, list[int]]:
        """Split a rational polynomial as ``content * integer_primitive``.

        The integer model has positive leading coefficient and coprime entries.
        """
        if self.field.p is not None:
            raise FieldMismatchError("integer model needs rational coefficients")
        if self.is_zero():
            return Fraction(0), []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]


# -- gcd, squarefree and resultants --------------------------------------------


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) is rejected."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")
    if a.is_zero() and b.is_zero():
        raise InvalidInputError("gcd of two zero polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(a: UniPoly) -> UniPoly:
    """Monic a / gcd(a, a').  Only valid in characteristic zero or below p."""
    if a.is_zero():
        raise InvalidInputError("squarefree part of the zero polynomial")
    if a.degree == 0:
        return UniPoly.const(1, a.field)
    g = poly_gcd(a, a.derivative())
    return a.exact_div(g).monic()


def squarefree_decomposition(a: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm over QQ: monic squarefree, pairwise coprime (g_i, i)."""
    if a.field.p is not None:
        raise FieldMismatchError("Yun decomposition is implemented over QQ only")
    if a.is_zero():
        raise InvalidInputError("decomposition of the zero polynomial")
    out: list[tuple[UniPoly, int]] = []
    if a.degree == 0:
        return out
    a = a.monic()
    da = a.derivative()
    g = poly_gcd(a, da)
    b = a.exact_div(g)
    c = da.exact_div(g)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def sylvester_matrix(a: Sequence, b: Sequence) -> list[list]:
    """Sylvester matrix of coefficient lists (lowest first, formal degrees kept)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    ahi = list(reversed(a))
    bhi = list(reversed(b))
    for i in range(n):
        rows.append([0] * i + ahi + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + bhi + [0] * (size - n - 1 - i))
    return rows


def poly_resultant(a: UniPoly, b: UniPoly):
    """Res(a, b) by the Euclidean recurrence.

    Agrees with the Sylvester determinant for the actual degrees.
    """
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")
    if a.is_zero() or b.is_zero():
        raise InvalidInputError("resultant with the zero polynomial")
    F = a.field
    p = F.p
    acc = F.one
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            v = acc * b.lc ** m
            return v % p if p is not None else v
        r = a % b
        if r.is_zero():
            return F.zero
        k = r.degree
        sign = -1 if (m * n) % 2 else 1
        acc = acc * sign * b.lc ** (m - k)
        if p is not None:
            acc %= p
        a, b = b, r


def homogeneous_resultant(a: UniPoly, b: UniPoly, n: int):
    """Resultant of a and b viewed as binary forms of formal degree n.

    Vanishes iff they share a root on the projective line, infinity included
    (both formal leading coefficients zero).  Zero inputs give zero.
    """
    from .linalg import determinant

    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")
    if a.degree > n or b.degree > n:
        raise InvalidInputError("formal degree below actual degree")
    F = a.field
    ca = [a.coeff(i) for i in range(n + 1)]
    cb = [b.coeff(i) for i in range(n + 1)]
    return determinant(sylvester_matrix(ca, cb), F)


def discriminant(a: UniPoly):
    """(-1)^(n(n-1)/2) Res(a, a') / lc(a)."""
    n = a.degree
    if n < 1:
        raise InvalidInputError("discriminant needs degree >= 1")
    if n == 1:
        return a.field.one
    r = poly_resultant(a, a.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    F = a.field
    v = sign * r * F.inv(a.lc)
    return v % F.p if F.p is not None else v


# -- rational roots -------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _int_eval(ints: list[int], num: int, den: int) -> int:
    """den^n f(num/den) for integer coefficients, lowest first."""
    acc, dpow = 0, 1
    for c in reversed(ints):
        acc = acc * num + c * dpow
        dpow *= den
    return acc


def _int_deflate(ints: list[int], num: int, den: int) -> list[int]:
    """Exact quotient by (den z - num); Gauss's lemma keeps it integral."""
    n = len(ints) - 1
    q = [0] * n
    carry = ints[n]
    for i in range(n - 1, -1, -1):
        q[i], r = divmod(carry, den)
        if r:
            raise ArithmeticError("inexact integer deflation")
        carry = ints[i] + num * q[i]
    if carry:
        raise ArithmeticError("inexact integer deflation")
    return q


def rational_roots(a: UniPoly) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity, by divisor search on the integer model."""
    if a.field.p is not None:
        raise FieldMismatchError("rational roots need QQ coefficients")
    if a.is_zero():
        raise InvalidInputError("roots of the zero polynomial")
    out: list[tuple[Fraction, int]] = []
    poly = a
    mult = 0
    while poly.degree > 0 and poly.coeff(0) == 0:
        poly = UniPoly._raw(list(poly.coeffs[1:]), poly.field)
        mult += 1
    if mult:
        out.append((Fraction(0), mult))
    if poly.degree <= 0:
        return out
    _, ints = poly.primitive_integer()
    cands = set()
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            if math.gcd(num, den) == 1:
                cands.add((num, den))
                cands.add((-num, den))
    # integer model throughout: q^n f(p/q) = sum c_i p^i q^(n-i)
    for num, den in sorted(cands, key=lambda t: Fraction(*t)):
        mult = 0
        while len(ints) > 1 and _int_eval(ints, num, den) == 0:
            ints = _int_deflate(ints, num, den)
            mult += 1
        if mult:
            out.append((Fraction(num, den), mult))
    out.sort(key=lambda t: t[0])
    return out


def interpolate(xs: Sequence, ys: Sequence, field: Field = QQ) -> UniPoly:
    """Unique polynomial of degree < len(xs) through the points (Newton form)."""
    if len(xs) != len(ys) or len(set(xs)) != len(xs):
        raise InvalidInputError("interpolation needs distinct abscissae, one value each")
    xs = [field(x) for x in xs]
    coef = [field(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * field.inv(xs[i] - xs[i - j])
            if field.p is not None:
                coef[i] %= field.p
    acc = UniPoly([], field)
    for i in range(n - 1, -1, -1):
        acc = acc * UniPoly([-xs[i], 1], field) + UniPoly([coef[i]], field)
    return acc


def poly_invmod(a: UniPoly, m: UniPoly) -> UniPoly:
    """Inverse of a modulo m (extended Euclid); a and m must be coprime."""
    if m.degree < 1:
        raise InvalidInputError("modulus must have positive degree")
    F = a.field
    r0, r1 = m, a % m
    s0, s1 = UniPoly([], F), UniPoly([1], F)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise InvalidInputError("polynomials are not coprime")
    return (s0.scale(F.inv(r0.lc))) % m
