"""Command-line front end.

Machine output is JSON (stdout or ``--out``); human summaries go to stderr.
Exit status: 0 on success, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .checks import SUITE_GROUPS, SuiteConfig, run_suite, summary_table
from .families import FAMILIES, gen_p2qr, gen_x2h, h_poly, spectrum_p2qr, spectrum_x2h
from .mf import MatrixFactorization, knoerrer_sheet, mf_cokernel, mf_syzygy, mf_verify
from .modules import (ModulePresentation, SpectrumDeclaration, classify_punctured_locus,
                      cyclic_mcm_enumerate, fitting_ideal, is_free, localize_at, minimalize)
from .poly import DEFAULT_PRIME, PolynomialSyntaxError, field_modulus
from .rings import annihilator, make_quotient, polynomial_ring

FIELD_ENV = "MFKIT_FIELD"


class InputError(Exception):
    pass


def resolve_field(flag: str | None) -> int | None:
    """Flag beats ``MFKIT_FIELD``, which beats the default (rationals)."""
    name = flag or os.environ.get(FIELD_ENV) or "q"
    try:
        return field_modulus(name)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _family_mf(args, modulus):
    fam = args.family
    if fam not in FAMILIES:
        raise InputError(f"unknown family {fam!r}; choose from {sorted(FAMILIES)}")
    gen = FAMILIES[fam].generate
    if fam == "xn-yg":
        return gen(args.i if args.i is not None else 1, args.n if args.n is not None else 4,
                   modulus=modulus)
    if fam == "xy-zn":
        idx = args.n if args.n is not None else args.i
    else:
        idx = args.i
    return gen(idx if idx is not None else 1, modulus=modulus)


def _load_factorization(args, modulus) -> MatrixFactorization:
    if getattr(args, "file", None):
        doc = _load_json(args.file)
        if "A" not in doc:
            raise InputError(f"{args.file}: not a factorization (missing 'A')")
        return MatrixFactorization.from_json(doc, modulus)
    if not args.family:
        raise InputError("give --family or --file")
    return _family_mf(args, modulus)


def _load_presentation(args, modulus):
    """A presentation plus the factorization it came from (None for raw presentations)."""
    if getattr(args, "file", None):
        doc = _load_json(args.file)
        if "A" in doc:
            mf = MatrixFactorization.from_json(doc, modulus)
            return mf_cokernel(mf), mf
        from .rings import RingDescriptor
        ring = RingDescriptor.from_json(doc["ring"], modulus)
        return ModulePresentation.from_json(doc, ring), None
    mf = _load_factorization(args, modulus)
    return mf_cokernel(mf), mf


def _spectrum(args, pres, mf) -> SpectrumDeclaration:
    if getattr(args, "spectrum", None):
        return SpectrumDeclaration.from_json(_load_json(args.spectrum), pres.ring)
    if mf is not None and args.family:
        return FAMILIES[args.family].spectrum(mf)
    raise InputError("a spectrum file is needed (--spectrum)")


def _pres_json(p: ModulePresentation) -> dict:
    return {"rows": p.ngens, "cols": p.nrels,
            "entries": [[p.ring.show(a) for a in r] for r in p.matrix.rows]}


# --------------------------------------------------------------------------
# subcommands; each returns (json document, exit status)

def cmd_verify(args, modulus):
    mf = _load_factorization(args, modulus)
    rep = mf_verify(mf)
    doc = {"command": "verify", **rep.to_json(), "size": mf.size, "f": str(mf.f)}
    return doc, 0 if rep.ok else 1


def cmd_syzygy(args, modulus):
    return mf_syzygy(_load_factorization(args, modulus)).to_json(), 0


def cmd_knoerrer(args, modulus):
    mf = _load_factorization(args, modulus)
    pr = mf.ring.poly_ring
    names = set(pr.names) | set(args.g_vars or [])
    from .poly import PolyRing
    gring = PolyRing(tuple(pr.names) + tuple(sorted(names - set(pr.names))), pr.modulus)
    sheet = knoerrer_sheet(mf, gring.parse(args.g), var=args.var)
    rep = mf_verify(sheet)
    return {"factorization": sheet.to_json(), "verify": rep.to_json()}, 0 if rep.ok else 1


def cmd_fitting(args, modulus):
    if args.r is None or args.r < 0:
        raise InputError("--r must be a nonnegative integer")
    pres, _ = _load_presentation(args, modulus)
    gens = fitting_ideal(pres, args.r)
    return {"command": "fitting", "r": args.r, "generators": [pres.ring.show(g) for g in gens]}, 0


def cmd_localize(args, modulus):
    pres, mf = _load_presentation(args, modulus)
    spec = _spectrum(args, pres, mf)
    if not args.prime:
        raise InputError("--prime is required")
    try:
        prime = spec.prime(args.prime)
    except KeyError as exc:
        raise InputError(exc.args[0]) from exc
    loc = localize_at(pres, prime)
    verdict = is_free(loc)
    mp = minimalize(loc)
    return {"command": "localize", "prime": prime.name, "minimal": _pres_json(mp),
            "gens": mp.ngens, "rels": mp.nrels, **{"free": verdict.free, "rank": verdict.rank}}, 0


def cmd_classify(args, modulus):
    pres, mf = _load_presentation(args, modulus)
    c = classify_punctured_locus(pres, _spectrum(args, pres, mf))
    return c.to_json(), 0


def cmd_annihilator(args, modulus):
    if not args.vars:
        raise InputError("--vars is required")
    base = polynomial_ring(args.vars.split(","), modulus)
    R = make_quotient(base, [base.poly_ring.parse(t) for t in args.relations or []])
    e = R.poly_ring.parse(args.element)
    gens = annihilator(e, R)
    return {"command": "annihilator", "element": str(e),
            "generators": [R.show(g) for g in gens]}, 0


def cmd_cyclic(args, modulus):
    fam = args.family or "p2qr"
    if fam == "p2qr":
        mf = gen_p2qr(1, modulus=modulus)
        pr = mf.ring.poly_ring
        factors = [(pr.gen("p"), 2), (pr.gen("q"), 1), (pr.gen("r"), 1)]
        spec = spectrum_p2qr(mf)
    elif fam == "x2h":
        mf = gen_x2h(1, modulus=modulus)
        factors = [(mf.ring.poly_ring.gen("x"), 2), (h_poly(mf.ring), 1)]
        spec = spectrum_x2h(mf)
    else:
        raise InputError("cyclic enumeration is available for p2qr and x2h")
    mods = cyclic_mcm_enumerate(factors, spec, mf.ring)
    return {"command": "cyclic", "family": fam,
            "modules": [{"divisor": str(c.divisor), "exponents": list(c.exponents),
                         **c.classification.to_json()} for c in mods]}, 0


def cmd_checks(args, modulus):
    groups = tuple(g.strip() for g in args.families.split(",")) if args.families else SUITE_GROUPS
    try:
        cfg = SuiteConfig(max_i=args.max_i, groups=groups, modulus=modulus,
                          inject_fault=args.inject_fault)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    reports = run_suite(cfg)
    print(summary_table(reports), file=sys.stderr)
    doc = [r.to_json(timings=args.timings) for r in reports]
    return doc, 0 if all(r.passed for r in reports) else 1


COMMANDS = {
    "verify": cmd_verify,
    "syzygy": cmd_syzygy,
    "knoerrer": cmd_knoerrer,
    "fitting": cmd_fitting,
    "localize": cmd_localize,
    "classify": cmd_classify,
    "annihilator": cmd_annihilator,
    "cyclic": cmd_cyclic,
    "paper-checks": cmd_checks,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help=f"q or gf<p> (e.g. gf{DEFAULT_PRIME}); "
                                        f"default from ${FIELD_ENV}, else q")
    common.add_argument("--out", help="write JSON here instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--family", choices=sorted(FAMILIES))
    source.add_argument("--i", type=int, help="family index")
    source.add_argument("--n", type=int, help="exponent n (xn-yg) or index (xy-zn)")
    source.add_argument("--file", help="factorization or presentation JSON")

    parser = argparse.ArgumentParser(prog="mfkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common, source], help="check AB = BA = fE")
    sub.add_parser("syzygy", parents=[common, source], help="swap (A, B)")
    p = sub.add_parser("knoerrer", parents=[common, source], help="sheet over S[var]")
    p.add_argument("--g", default="1", help="polynomial g (default 1)")
    p.add_argument("--g-vars", type=lambda s: s.split(","), help="extra variables used by g")
    p.add_argument("--var", default="w", help="the new variable (default w)")
    p = sub.add_parser("fitting", parents=[common, source], help="Fitting ideal Fitt_r")
    p.add_argument("--r", type=int, required=True)
    for name in ("localize", "classify"):
        p = sub.add_parser(name, parents=[common, source])
        p.add_argument("--spectrum", help="spectrum declaration JSON")
        if name == "localize":
            p.add_argument("--prime", help="declared prime name")
    p = sub.add_parser("annihilator", parents=[common], help="(0 :_R e)")
    p.add_argument("--vars", required=True, help="comma-separated variables")
    p.add_argument("--relations", nargs="*", help="relations of R")
    p.add_argument("--element", required=True)
    p = sub.add_parser("cyclic", parents=[common], help="cyclic MCM enumeration")
    p.add_argument("--family", choices=["p2qr", "x2h"], default="p2qr")
    p = sub.add_parser("paper-checks", parents=[common], help="run the reproduction suite")
    p.add_argument("--max-i", type=int, default=8)
    p.add_argument("--families", help=f"comma-separated subset of {','.join(SUITE_GROUPS)}")
    p.add_argument("--timings", action="store_true", help="include wall_time per check")
    p.add_argument("--inject-fault", action="store_true",
                   help="test mode: flip the sign of A[0,0] in every family member")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        modulus = resolve_field(args.field)
        doc, status = COMMANDS[args.command](args, modulus)
    except (InputError, PolynomialSyntaxError, ValueError, KeyError) as exc:
        print(f"mfkit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
