"""Sparse multivariate polynomials over QQ or F_p in named variables.

Terms live in a dict from exponent tuples (ordered like ``vars``) to nonzero
coefficients.  In characteristic p, powers whose exponent is a multiple of p
go through the Frobenius map, which keeps iterated orbit polynomials sparse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import FieldMismatchError, InvalidInputError, ResourceCapExceeded
from .fields import QQ, Field, GF
from .unipoly import UniPoly

DEFAULT_TERM_CAP = 10**6


class MultiPoly:
    __slots__ = ("vars", "terms", "field", "cap")

    def __init__(
        self,
        vars: Iterable[str],
        terms: Mapping[tuple, object] | None = None,
        field: Field = QQ,
        cap: int = DEFAULT_TERM_CAP,
    ):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise InvalidInputError(f"repeated variable names in {vars}")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(vars) or any(e < 0 for e in exps):
                raise InvalidInputError(f"bad exponent vector {exps} for {vars}")
            clean[exps] = field(clean.get(exps, 0) + field(c))
        clean = {e: c for e, c in clean.items() if c != 0}
        self._init(vars, clean, field, cap)

    def _init(self, vars, terms, field, cap):
        if len(terms) > cap:
            raise ResourceCapExceeded(f"{len(terms)} terms exceed cap {cap}")
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "cap", cap)

    @classmethod
    def _raw(cls, vars, terms, field, cap) -> "MultiPoly":
        obj = object.__new__(cls)
        obj._init(vars, terms, field, cap)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def var(cls, name: str, vars: Iterable[str], field: Field = QQ, cap: int = DEFAULT_TERM_CAP):
        vars = tuple(vars)
        if name not in vars:
            raise InvalidInputError(f"{name!r} not among {vars}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {exps: field.one}, field, cap)

    @classmethod
    def const(cls, c, vars: Iterable[str], field: Field = QQ, cap: int = DEFAULT_TERM_CAP):
        vars = tuple(vars)
        c = field(c)
        terms = {(0,) * len(vars): c} if c != 0 else {}
        return cls._raw(vars, terms, field, cap)

    @classmethod
    def from_unipoly(cls, u: UniPoly, var: str, vars: Iterable[str], cap: int = DEFAULT_TERM_CAP):
        vars = tuple(vars)
        i = vars.index(var)
        terms = {}
        for e, c in enumerate(u.coeffs):
            if c != 0:
                exps = [0] * len(vars)
                exps[i] = e
                terms[tuple(exps)] = c
        return cls._raw(vars, terms, u.field, cap)

    def gens(self) -> tuple["MultiPoly", ...]:
        return tuple(MultiPoly.var(v, self.vars, self.field, self.cap) for v in self.vars)

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (
                self.vars == other.vars
                and self.field == other.field
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(other, self.vars, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, self.field, frozenset(self.terms.items())))

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def is_constant(self) -> bool:
        zero = (0,) * len(self.vars)
        return all(e == zero for e in self.terms)

    def involves(self, var: str) -> bool:
        i = self.vars.index(var)
        return any(e[i] for e in self.terms)

    def coefficient_in(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, still expressed over the same variables."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                ne = list(e)
                ne[i] = 0
                out[tuple(ne)] = c
        return MultiPoly._raw(self.vars, out, self.field, self.cap)

    def powers_of(self, var: str) -> list[int]:
        i = self.vars.index(var)
        return sorted({e[i] for e in self.terms})

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in descending graded-lex order (deterministic output)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def monomial_str(self, exps: tuple) -> str:
        parts = []
        for v, e in zip(self.vars, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"MultiPoly({self.to_str()}, vars={self.vars}, {self.field!r})"

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            m = self.monomial_str(e)
            if m == "1":
                out.append(str(c))
            elif c == 1:
                out.append(m)
            else:
                cs = str(c)
                if "/" in cs:
                    cs = f"({cs})"
                out.append(f"{cs}*{m}")
        return " + ".join(out).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise InvalidInputError(f"variable sets differ: {self.vars} vs {other.vars}")
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.vars, self.field, self.cap)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = self.field.p
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if p is not None:
                v %= p
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return MultiPoly._raw(self.vars, out, self.field, self.cap)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return MultiPoly._raw(
            self.vars,
            {e: (-c if p is None else (-c) % p) for e, c in self.terms.items()},
            self.field,
            self.cap,
        )

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
        p = self.field.p
        out: dict[tuple, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p is not None:
            out = {e: c % p for e, c in out.items()}
        out = {e: c for e, c in out.items() if c != 0}
        return MultiPoly._raw(self.vars, out, self.field, self.cap)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = self.field(c)
        if c == 0:
            return MultiPoly._raw(self.vars, {}, self.field, self.cap)
        p = self.field.p
        return MultiPoly._raw(
            self.vars,
            {e: (v * c if p is None else v * c % p) for e, v in self.terms.items()},
            self.field,
            self.cap,
        )

    def frobenius(self) -> "MultiPoly":
        """self**p in characteristic p: exponents times p, coefficients fixed."""
        p = self.field.p
        if p is None:
            raise FieldMismatchError("Frobenius needs a prime field")
        return MultiPoly._raw(
            self.vars,
            {tuple(x * p for x in e): c for e, c in self.terms.items()},
            self.field,
            self.cap,
        )

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInputError("negative exponent")
        p = self.field.p
        base = self
        if p is not None:
            while e and e % p == 0:
                base = base.frobenius()
                e //= p
        result = MultiPoly.const(1, self.vars, self.field, self.cap)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def slow_pow(self, e: int) -> "MultiPoly":
        """Repeated multiplication with no Frobenius shortcut (for cross-checks)."""
        result = MultiPoly.const(1, self.vars, self.field, self.cap)
        for _ in range(e):
            result = result * self
        return result

    # -- calculus, evaluation, substitution ---------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        p = self.field.p
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            v = c * k
            if p is not None:
                v %= p
            if v == 0:
                continue
            ne = list(e)
            ne[i] = k - 1
            out[tuple(ne)] = v
        return MultiPoly._raw(self.vars, out, self.field, self.cap)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a full assignment; values may be any ring elements
        supporting ``+``, ``*`` and ``**`` with ints (e.g. ExtElem)."""
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise InvalidInputError(f"no value for {missing}")
        vals = [values[v] for v in self.vars]
        if self.field.p is None:
            vals = [QQ(v) if isinstance(v, (int, str)) else v for v in vals]
        acc = None
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * (v ** k)
            acc = term if acc is None else acc + term
        if acc is None:
            return self.field.zero
        if isinstance(acc, int) and self.field.p is not None:
            return acc % self.field.p
        return acc

    def partial_evaluate(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute field scalars for some variables, keeping the variable list."""
        idx = {self.vars.index(v): self.field(x) for v, x in values.items()}
        p = self.field.p
        out: dict[tuple, object] = {}
        for e, c in self.terms.items():
            v = c
            ne = list(e)
            for i, x in idx.items():
                if ne[i]:
                    v = v * x ** ne[i]
                    ne[i] = 0
            t = tuple(ne)
            out[t] = out.get(t, 0) + v
        if p is not None:
            out = {e: c % p for e, c in out.items()}
        out = {e: c for e, c in out.items() if c != 0}
        return MultiPoly._raw(self.vars, out, self.field, self.cap)

    def substitute(self, var: str, value: "MultiPoly") -> "MultiPoly":
        """Replace ``var`` by a polynomial over the same variables."""
        value = self._coerce(value)
        i = self.vars.index(var)
        pow_cache: dict[int, MultiPoly] = {0: MultiPoly.const(1, self.vars, self.field, self.cap)}

        def power(k):
            if k not in pow_cache:
                pow_cache[k] = value ** k
            return pow_cache[k]

        acc = MultiPoly._raw(self.vars, {}, self.field, self.cap)
        by_power: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            by_power.setdefault(k, {})[tuple(ne)] = c
        for k, rest in sorted(by_power.items()):
            acc = acc + MultiPoly._raw(self.vars, rest, self.field, self.cap) * power(k)
        return acc

    def with_vars(self, new_vars: Iterable[str]) -> "MultiPoly":
        """Re-embed into a superset (or reordering) of the current variables."""
        new_vars = tuple(new_vars)
        for v in self.vars:
            if v not in new_vars and self.involves(v):
                raise InvalidInputError(f"variable {v!r} would be dropped")
        pos = [self.vars.index(v) if v in self.vars else None for v in new_vars]
        out = {}
        for e, c in self.terms.items():
            out[tuple(0 if j is None else e[j] for j in pos)] = c
        return MultiPoly._raw(new_vars, out, self.field, self.cap)

    def to_unipoly(self, var: str) -> UniPoly:
        i = self.vars.index(var)
        coeffs: dict[int, object] = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise InvalidInputError(f"polynomial involves variables other than {var!r}")
            coeffs[e[i]] = c
        if not coeffs:
            return UniPoly([], self.field)
        return UniPoly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)], self.field)

    def reduce_mod(self, p: int) -> "MultiPoly":
        """Image in F_p[vars]; every coefficient must be p-integral."""
        if self.field.p is not None:
            raise FieldMismatchError("already over a prime field")
        F = GF(p)
        out = {}
        for e, c in self.terms.items():
            v = F(c)
            if v:
                out[e] = v
        return MultiPoly._raw(self.vars, out, F, self.cap)

    def with_cap(self, cap: int) -> "MultiPoly":
        return MultiPoly._raw(self.vars, self.terms, self.field, cap)


def det3(m: list[list[MultiPoly]]) -> MultiPoly:
    """Cofactor expansion of a 3x3 matrix of polynomials."""
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def det2(m: list[list[MultiPoly]]) -> MultiPoly:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]
