"""Exact JSON encoding.

Every number travels as a string: rationals as "n" or "n/d", prime-field
elements as their least non-negative residue, quadratic-extension elements
as a pair [x0, x1] meaning x0 + x1 t.  Univariate polynomials are arrays,
lowest degree first.  Documents are dumped with sorted keys so output is
byte-for-byte reproducible.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .cubic import FpmClassification, SigmaPair
from .errors import InvalidInputError
from .exactalg import GF, QQ, ExtElem, MultiPoly, PrimeFieldElem, UniPoly, parse_rational, rational_str
from .projdyn import INF, Mobius, RationalMap, as_point
from .transversality import JacobianReport, SylvesterDatum


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}") from exc


# -- scalars and points ------------------------------------------------------------


def scalar_to_json(x) -> Any:
    if isinstance(x, ExtElem):
        return [str(x.x0), str(x.x1)]
    if isinstance(x, PrimeFieldElem):
        return str(x.value)
    return rational_str(x)


def point_to_json(x) -> str:
    return "inf" if x is INF else rational_str(x)


def point_from_json(s):
    if not isinstance(s, str):
        raise InvalidInputError(f"points are strings, got {s!r}")
    return as_point(s)


# -- univariate polynomials and maps -------------------------------------------------


def poly_to_json(u: UniPoly) -> list[str]:
    if u.is_zero():
        return ["0"]
    return [scalar_to_json(c) for c in u.coeffs]


def poly_from_json(doc, field=QQ) -> UniPoly:
    if not isinstance(doc, list) or not doc:
        raise InvalidInputError("a polynomial is a non-empty array of coefficient strings")
    if any(not isinstance(c, str) for c in doc):
        raise InvalidInputError("coefficients must be strings (exactness)")
    return UniPoly([field(parse_rational(c)) for c in doc], field)


def map_to_json(f: RationalMap) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def map_from_json(doc) -> RationalMap:
    if isinstance(doc, str):
        doc = loads(doc)
    if not isinstance(doc, dict) or "num" not in doc:
        raise InvalidInputError('a map is {"num": [...], "den": [...]}')
    den = poly_from_json(doc["den"]) if "den" in doc else UniPoly([1])
    return RationalMap(poly_from_json(doc["num"]), den)


def mobius_to_json(m: Mobius) -> dict:
    return {k: rational_str(getattr(m, k)) for k in "abcd"}


def mobius_from_json(doc) -> Mobius:
    return Mobius(*(parse_rational(doc[k]) for k in "abcd"))


# -- multivariate polynomials -------------------------------------------------------

_MONO_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def param_poly_to_json(p: MultiPoly) -> dict:
    terms = {p.monomial_str(e): scalar_to_json(c) for e, c in p.terms.items()}
    return {"field": repr(p.field), "vars": list(p.vars), "terms": terms}


def _field_from_json(name: str):
    if name == "QQ":
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", name)
    if not m:
        raise InvalidInputError(f"unknown field {name!r}")
    return GF(int(m.group(1)))


def param_poly_from_json(doc) -> MultiPoly:
    vars = tuple(doc["vars"])
    field = _field_from_json(doc.get("field", "QQ"))
    terms = {}
    for mono, coeff in doc["terms"].items():
        exps = [0] * len(vars)
        if mono != "1":
            for factor in mono.split("*"):
                m = _MONO_RE.match(factor)
                if not m or m.group(1) not in vars:
                    raise InvalidInputError(f"bad monomial {mono!r}")
                exps[vars.index(m.group(1))] += int(m.group(2) or 1)
        terms[tuple(exps)] = field(parse_rational(coeff))
    return MultiPoly(vars, terms, field)


# -- reports -------------------------------------------------------------------------


def sigma_pair_to_json(s: SigmaPair) -> dict:
    return {"sigma1": rational_str(s.sigma1), "sigma3": rational_str(s.sigma3)}


def _evidence_value(v):
    if isinstance(v, UniPoly):
        return poly_to_json(v)
    if isinstance(v, RationalMap):
        return map_to_json(v)
    if isinstance(v, Mobius):
        return mobius_to_json(v)
    if isinstance(v, Fraction):
        return rational_str(v)
    if isinstance(v, dict):
        return {str(k): _evidence_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_evidence_value(x) for x in v]
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    return str(v)


def classification_to_json(c: FpmClassification) -> dict:
    ev = dict(c.evidence)
    if "dynatomic_factors" in ev:
        ev["dynatomic_factors"] = [{"factor": poly_to_json(g), "multiplicity": m} for g, m in ev["dynatomic_factors"]]
    return {
        "outcome": c.outcome.value,
        "conjugate_count": c.conjugate_count,
        "dynatomic_galois": c.dynatomic_galois.value,
        "conjugated_map": map_to_json(c.conjugated_map) if c.conjugated_map is not None else None,
        "conjugator": mobius_to_json(c.conjugator) if c.conjugator is not None else None,
        "automorphism": mobius_to_json(c.automorphism) if c.automorphism is not None else None,
        "flags": list(c.flags),
        "evidence": _evidence_value(ev),
    }


def datum_to_json(sd: SylvesterDatum) -> dict:
    return {"d": sd.d, "k": sd.k, "p": sd.p, "r": sd.r, "t": sd.t, "s": str(sd.s)}


def jacobian_report_to_json(r: JacobianReport) -> dict:
    return {
        "d": r.d,
        "k": r.k,
        "m": r.m,
        "n": r.n,
        "ext": r.ext,
        "datum": datum_to_json(r.datum),
        "J": param_poly_to_json(r.J),
        "identity_holds": r.identity_holds,
        "partial_c_holds": r.partial_c_holds,
        "partial_a_holds": r.partial_a_holds,
        "intersection_points": [
            {"a": scalar_to_json(a), "c": scalar_to_json(c), "J": scalar_to_json(j)}
            for (a, c), j in r.intersection_points
        ],
        "all_transverse": r.all_transverse,
        "certified": r.certified,
    }
