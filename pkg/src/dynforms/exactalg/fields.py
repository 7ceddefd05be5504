"""Base fields: the rationals, prime fields F_p and quadratic extensions F_{p^2}.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field elements
inside polynomials are stored as ints in ``[0, p)``; :class:`PrimeFieldElem`
is the boxed form used at API boundaries.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import FieldMismatchError, InvalidInputError

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` into a reduced Fraction.

    Floats are rejected outright; decimals like ``"0.5"`` are too, since the
    wire format only carries integer ratios.
    """
    if isinstance(text, bool):
        raise InvalidInputError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, PrimeFieldElem):
        raise InvalidInputError("prime field element is not a rational")
    if not isinstance(text, str):
        raise InvalidInputError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise InvalidInputError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InvalidInputError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def is_rational_square(x: Fraction) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def rational_sqrt(x: Fraction) -> Fraction:
    if not is_rational_square(x):
        raise InvalidInputError(f"{x} is not a rational square")
    return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))


class Field:
    """Either the rationals (``p is None``) or the prime field F_p.

    Calling the field coerces a value into its canonical representative.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not is_prime(p):
            raise InvalidInputError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, x):
        p = self.p
        if p is None:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, PrimeFieldElem):
                raise FieldMismatchError("cannot coerce F_p element into QQ")
            return parse_rational(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, PrimeFieldElem):
            if x.modulus != p:
                raise FieldMismatchError(f"element of GF({x.modulus}) used in GF({p})")
            return x.value
        x = parse_rational(x)
        if x.denominator % p == 0:
            raise InvalidInputError(f"{x} has no image in GF({p})")
        return x.numerator * pow(x.denominator, -1, p) % p

    def inv(self, x):
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / x
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1


QQ = Field()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class PrimeFieldElem:
    value: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise InvalidInputError(f"{self.modulus} is not prime")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, PrimeFieldElem):
            if other.modulus != self.modulus:
                raise FieldMismatchError("moduli differ")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElem(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.modulus)

    def __pow__(self, e: int):
        return PrimeFieldElem(pow(self.value, e, self.modulus), self.modulus)

    def inverse(self) -> "PrimeFieldElem":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return PrimeFieldElem(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElem(o, self.modulus).inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value


class QuadraticExtension:
    """F_p[t]/(t^2 + b t + c) for the lexicographically first irreducible (b, c)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise InvalidInputError(f"{p} is not prime")
        self.p = p
        self.b, self.c = self._first_irreducible(p)

    @staticmethod
    def _first_irreducible(p: int) -> tuple[int, int]:
        for b in range(p):
            for c in range(p):
                if all((x * x + b * x + c) % p for x in range(p)):
                    return b, c
        raise AssertionError("every prime field has an irreducible quadratic")

    def __repr__(self):
        return f"GF({self.p}^2 = GF({self.p})[t]/(t^2+{self.b}t+{self.c}))"

    def __call__(self, x0: int, x1: int = 0) -> "ExtElem":
        return ExtElem(x0 % self.p, x1 % self.p, self)

    def elements(self):
        for x1 in range(self.p):
            for x0 in range(self.p):
                yield ExtElem(x0, x1, self)


class ExtElem:
    """Element x0 + x1*t of a :class:`QuadraticExtension`."""

    __slots__ = ("x0", "x1", "field")

    def __init__(self, x0: int, x1: int, field: QuadraticExtension):
        self.x0 = x0
        self.x1 = x1
        self.field = field

    def _lift(self, other) -> "ExtElem":
        if isinstance(other, ExtElem):
            return other
        if isinstance(other, int):
            return ExtElem(other % self.field.p, 0, self.field)
        if isinstance(other, PrimeFieldElem):
            return ExtElem(other.value, 0, self.field)
        raise TypeError(f"cannot combine ExtElem with {type(other).__name__}")

    def __add__(self, other):
        o = self._lift(other)
        p = self.field.p
        return ExtElem((self.x0 + o.x0) % p, (self.x1 + o.x1) % p, self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return ExtElem(-self.x0 % p, -self.x1 % p, self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        F = self.field
        p = F.p
        # t^2 = -b t - c
        a0, a1, b0, b1 = self.x0, self.x1, o.x0, o.x1
        hi = a1 * b1
        return ExtElem(
            (a0 * b0 - hi * F.c) % p,
            (a0 * b1 + a1 * b0 - hi * F.b) % p,
            F,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = ExtElem(1, 0, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self.x0 == o.x0 and self.x1 == o.x1

    def __hash__(self):
        return hash((self.x0, self.x1, self.field.p))

    def __bool__(self):
        return bool(self.x0 or self.x1)

    def __repr__(self):
        return f"({self.x0}+{self.x1}t)"
