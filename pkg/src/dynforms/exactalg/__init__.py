"""Exact field and polynomial kernel."""

from .factor import factor_upto_quartic, is_irreducible, resolvent_cubic
from .fields import (
    GF,
    QQ,
    ExtElem,
    Field,
    PrimeFieldElem,
    QuadraticExtension,
    is_prime,
    parse_rational,
    primes_upto,
    rational_str,
)
from .galois import GaloisLabel, quartic_galois_group
from .linalg import determinant, nullspace
from .multipoly import MultiPoly
from .unipoly import (
    UniPoly,
    discriminant,
    homogeneous_resultant,
    interpolate,
    poly_gcd,
    poly_invmod,
    poly_resultant,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
    sylvester_matrix,
)

__all__ = [
    "GF",
    "QQ",
    "ExtElem",
    "Field",
    "GaloisLabel",
    "MultiPoly",
    "PrimeFieldElem",
    "QuadraticExtension",
    "UniPoly",
    "determinant",
    "discriminant",
    "factor_upto_quartic",
    "homogeneous_resultant",
    "interpolate",
    "is_irreducible",
    "is_prime",
    "nullspace",
    "parse_rational",
    "poly_gcd",
    "poly_invmod",
    "poly_resultant",
    "primes_upto",
    "quartic_galois_group",
    "rational_roots",
    "rational_str",
    "resolvent_cubic",
    "squarefree_decomposition",
    "squarefree_part",
    "sylvester_matrix",
]
