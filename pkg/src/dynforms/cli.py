"""Command-line front end.

Every subcommand prints one JSON document (or writes it to ``--output``).
Exit status: 0 on success, 2 on invalid input, 3 when an internal
mathematical check fails, which always indicates a bug.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import cubic, critforms, projdyn, transversality
from . import serialize as ser
from .errors import DynformsError, InvalidInputError, ResourceCapExceeded, TheoremCheckFailure
from .exactalg import UniPoly, parse_rational, rational_str

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_THEOREM = 3


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _param(text: str):
    try:
        return parse_rational(text)
    except InvalidInputError:
        return text


def _quartic(args) -> UniPoly:
    if args.roots is not None:
        return UniPoly.from_roots([parse_rational(x) for x in args.roots.split(",")])
    return ser.poly_from_json(ser.loads(args.quartic))


# -- subcommands ---------------------------------------------------------------------


def cmd_sigma(args) -> dict:
    f = ser.map_from_json(args.map)
    spec = projdyn.multiplier_spectrum(f)
    return {"sigma": [rational_str(s) for s in spec.sigma], "multiplier_polynomial": ser.poly_to_json(spec.monic_poly_in_lambda)}


def cmd_phi(args) -> dict:
    s = cubic.SigmaPair(args.s1, args.s3)
    return {"map": ser.map_to_json(cubic.phi_normal_form(s))}


def cmd_classify_cubic(args) -> dict:
    f = ser.map_from_json(args.map)
    s = cubic.cubic_poly_to_sigma(f)
    return {
        "sigma": ser.sigma_pair_to_json(s),
        "on_curve_C": cubic.curve_C_member(s),
        "normal_form": ser.map_to_json(cubic.phi_normal_form(s)),
    }


def cmd_fpm_build(args) -> dict:
    phi = _quartic(args)
    F = cubic.lemma4_construct(phi)
    return {"quartic": ser.poly_to_json(phi.monic()), "map": ser.map_to_json(F)}


def cmd_fpm_classify(args) -> dict:
    return ser.classification_to_json(cubic.classify_partial_fpm(ser.map_from_json(args.map)))


def cmd_belyi(args) -> dict:
    bp = critforms.BelyiParams(args.d, args.k)
    out = {"poly": ser.poly_to_json(critforms.belyi_poly(bp))}
    if args.a is not None or args.c is not None:
        a = args.a if args.a is not None else Fraction(1)
        c = args.c if args.c is not None else Fraction(0)
        f = critforms.make_bicritical(a, c, bp)
        out["map"] = ser.map_to_json(f)
        out["ramification"] = {
            ser.point_to_json(x): e for x, e in projdyn.ramification_profile(f).points
        }
    return out


def cmd_ncrit(args) -> dict:
    gammas = [_param(g) for g in args.gammas.split(",")]
    for i in args.symbolic_gamma or []:
        if not 0 <= i < len(gammas):
            raise InvalidInputError(f"--symbolic-gamma {i} out of range")
        gammas[i] = "gamma" if len(args.symbolic_gamma) == 1 else f"gamma{i}"
    spec = critforms.NCritSpec(args.d, tuple(args.ks), tuple(gammas), _param(args.a), _param(args.c))
    poly = critforms.ncrit_polynomial(spec)
    out = {"poly": ser.param_poly_to_json(poly)}
    if args.mod is not None:
        red = poly.reduce_mod(args.mod)
        out["reduced"] = ser.param_poly_to_json(red)
        out["reduction_class"] = transversality.classify_reduction(red)
    return out


def _bicritical(text: str) -> critforms.Bicritical:
    parts = text.split(",")
    if len(parts) != 4:
        raise InvalidInputError(f"expected a,c,d,k: {text!r}")
    return critforms.Bicritical(parse_rational(parts[0]), parse_rational(parts[1]), int(parts[2]), int(parts[3]))


def cmd_bicritical_conj(args) -> dict:
    f0, f1 = _bicritical(args.f0), _bicritical(args.f1)

    def enc(b):
        return {"a": rational_str(b.a), "c": rational_str(b.c), "d": b.d, "k": b.k}

    return {
        "relation": critforms.bicritical_conjugacy(f0, f1),
        "canonical": [enc(critforms.canonicalize(f0)), enc(critforms.canonicalize(f1))],
    }


def cmd_transversality(args) -> dict:
    sd = transversality.sylvester_datum(args.d, args.k)
    transversality.belyi_reduce_mod_p(critforms.BelyiParams(args.d, args.k), sd)
    rep = transversality.jacobian_certify(sd, args.m, args.n, ext=args.ext)
    return ser.jacobian_report_to_json(rep)


def cmd_failure(args) -> dict:
    if args.case == "d10":
        rows = {}
        for p, (cls, red) in transversality.d10_report().items():
            rows[str(p)] = {"class": cls, "reduced": ser.param_poly_to_json(red)}
        return {"case": "d10", "primes": rows}
    form = transversality.tricritical_form_mod3(args.gamma0)
    det = transversality.tricritical_jacobian_mod3(args.m, args.n, args.k, args.gamma0)
    return {
        "case": "d4",
        "gamma0": args.gamma0,
        "form_mod_3": ser.param_poly_to_json(form),
        "determinant": ser.param_poly_to_json(det),
        "determinant_is_zero": det.is_zero(),
    }


# -- sweeps ---------------------------------------------------------------------------


def _phi_item(item):
    s1, s3 = item
    sig = projdyn.sigma_invariants(cubic.phi_normal_form(cubic.SigmaPair(s1, s3)))
    expected = (s1, 2 * s1 - 3, s3, 0)
    return tuple(sig) == expected, {"s1": rational_str(s1), "s3": rational_str(s3)}


def _transversality_item(item):
    d, k, m, n, ext = item
    sd = transversality.sylvester_datum(d, k)
    transversality.belyi_reduce_mod_p(critforms.BelyiParams(d, k), sd)
    rep = transversality.jacobian_certify(sd, m, n, ext=ext, strict=False)
    return rep.certified, {"d": d, "k": k, "m": m, "n": n, "ext": ext}


def _belyi_item(item):
    d, k = item
    B = critforms.belyi_poly(critforms.BelyiParams(d, k))
    spec = critforms.NCritSpec(d, (k,), (1,), 1, 0)
    ok = (
        all(c.denominator == 1 for c in B.coeffs)
        and B(0) == 0
        and B(1) == 1
        and critforms.verify_ramification(B, spec)
    )
    return ok, {"d": d, "k": k}


def sweep_items(args) -> tuple:
    if args.task == "phi-roundtrip":
        rng = range(args.lo, args.hi + 1)
        return _phi_item, [(Fraction(a), Fraction(b)) for a in rng for b in rng]
    if args.task == "transversality-grid":
        items = []
        for d in range(args.d_min, args.d_max + 1):
            for k in range(1, critforms.canonical_k_bound(d) + 1):
                for m in range(1, args.mn_max + 1):
                    for n in range(1, args.mn_max + 1):
                        items.append((d, k, m, n, args.ext if d <= args.ext_d_max else 1))
        return _transversality_item, items
    if args.task == "belyi-audit":
        items = [(d, k) for d in range(args.d_min, args.d_max + 1) for k in range(1, critforms.canonical_k_bound(d) + 1)]
        return _belyi_item, items
    raise InvalidInputError(f"unknown sweep task {args.task!r}")


def cmd_sweep(args) -> dict:
    fn, items = sweep_items(args)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * args.jobs))))
    else:
        results = [fn(x) for x in items]
    failures = [detail for ok, detail in results if not ok]
    return {
        "task": args.task,
        "checked": len(results),
        "failed": len(failures),
        "first_failure": failures[0] if failures else None,
        "passed": not failures,
    }


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynforms", description="Exact normal forms for polynomial and rational maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--output", type=Path, help="write the JSON document here instead of stdout")
        p.set_defaults(fn=fn)
        return p

    p = add("sigma", cmd_sigma, "sigma-invariants of a rational map")
    p.add_argument("--map", required=True, help='JSON {"num": [...], "den": [...]}')

    p = add("phi", cmd_phi, "normal form of the cubic polynomial class with given sigma1, sigma3")
    p.add_argument("--s1", type=_rational, required=True)
    p.add_argument("--s3", type=_rational, required=True)

    p = add("classify-cubic", cmd_classify_cubic, "sigma data and normal form of a cubic polynomial")
    p.add_argument("--map", required=True)

    p = add("fpm-build", cmd_fpm_build, "cubic map whose fixed points are the roots and equal their multipliers")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--quartic", help="JSON coefficient array, lowest degree first")
    g.add_argument("--roots", help="comma-separated rational roots")

    p = add("fpm-classify", cmd_fpm_classify, "decide whether a conjugate is in partial fixed-point multiplier form")
    p.add_argument("--map", required=True)

    p = add("belyi", cmd_belyi, "bicritical Belyi polynomial B_{d,k}")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", type=_rational)
    p.add_argument("--c", type=_rational)

    p = add("ncrit", cmd_ncrit, "n-critical normal form")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ks", type=_int_list, required=True)
    p.add_argument("--gammas", required=True, help="comma-separated rationals or names")
    p.add_argument("--symbolic-gamma", type=int, action="append", help="treat gamma_i as an indeterminate")
    p.add_argument("--a", default="a")
    p.add_argument("--c", default="c")
    p.add_argument("--mod", type=int, help="also reduce modulo this prime")

    p = add("bicritical-conj", cmd_bicritical_conj, "conjugacy of two bicritical maps a B_{d,k} + c")
    p.add_argument("--f0", required=True, help="a,c,d,k")
    p.add_argument("--f1", required=True, help="a,c,d,k")

    p = add("transversality", cmd_transversality, "certify transversality mod p")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ext", type=int, choices=(1, 2), default=1)

    p = add("failure", cmd_failure, "reproduce the three-critical-point failure examples")
    p.add_argument("--case", choices=("d10", "d4"), required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--gamma0", type=int, choices=(1, -1), default=1)

    p = add("sweep", cmd_sweep, "batch checks over parameter grids")
    p.add_argument("--task", choices=("phi-roundtrip", "transversality-grid", "belyi-audit"), required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--lo", type=int, default=-5)
    p.add_argument("--hi", type=int, default=5)
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, default=None)
    p.add_argument("--mn-max", type=int, default=3)
    p.add_argument("--ext", type=int, choices=(1, 2), default=2)
    p.add_argument("--ext-d-max", type=int, default=5, help="largest d scanned over the quadratic extension")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    if getattr(args, "d_max", 0) is None:
        args.d_max = 8 if args.task == "transversality-grid" else 12
    try:
        doc = args.fn(args)
    except TheoremCheckFailure as exc:
        print(f"theorem check failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except (InvalidInputError, ResourceCapExceeded, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except DynformsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = ser.dumps(doc)
    if args.output is not None:
        args.output.write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
