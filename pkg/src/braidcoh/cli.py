"""Batch command-line interface.

Every subcommand emits a single JSON document by default (``--format text``
for aligned lines) and exits 0 exactly when all requested checks pass, 1 on
a failed check, 2 on usage errors.  Output is deterministic for fixed
flags: keys are sorted, scalars are printed as exact rational strings, and
anything randomized takes --rng-seed (default 0).
"""

import argparse
import json
import os
import random
import sys

from .algebra import load_presentation
from .braided import check_bimonoid_axioms, coproduct
from .cup import cup_table, make_comparisons, verify_braided_commutativity
from .duoidal import verify_coduoid
from .errors import BraidcohError, NotConfluentError
from .resolutions import (builtin_resolution, cohomology_dims,
                          parse_resolution, validate)
from .scalars import format_rational
from .simplicial import verify_dec_cocommutativity, verify_dec_window


def _emit(doc, fmt):
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, indent=2, default=str))
    else:
        _emit_text(doc, "")


def _emit_text(doc, indent):
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)):
                print(f"{indent}{k}:")
                _emit_text(v, indent + "  ")
            else:
                print(f"{indent}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)):
                _emit_text(v, indent)
                print()
            else:
                print(f"{indent}{v}")
    else:
        print(f"{indent}{doc}")


def _load_algebra(args, default_trunc=None):
    trunc = args.trunc
    if trunc is None:
        env = os.environ.get("BRAIDCOH_TRUNC")
        trunc = int(env) if env else default_trunc
    return load_presentation(args.algebra, truncation=trunc), trunc


def _load_resolution(args, pres, n_max):
    spec = getattr(args, "resolution", None)
    if spec:
        if not spec.startswith("file:"):
            raise BraidcohError("--resolution takes file:PATH")
        from pathlib import Path
        data = json.loads(Path(spec[5:]).read_text())
        return parse_resolution(data, pres)
    return builtin_resolution(args.algebra, n_max=n_max)


def _seed_flag(args):
    return getattr(args, "seed_paper_maps", "off") == "on"


def cmd_check_presentation(args):
    pres, trunc = _load_algebra(args, default_trunc=None)
    depth = trunc if trunc is not None else 5
    try:
        conf = pres.ensure_confluent()
        confluent = True
    except NotConfluentError as exc:
        conf = exc.report
        confluent = False
    doc = {
        "algebra": args.algebra,
        "confluent": confluent,
        "ambiguities": [
            {"word": pres.format_word(a.word), "kind": a.kind,
             "resolves": a.resolves} for a in conf.ambiguities],
    }
    if confluent:
        rep = check_bimonoid_axioms(pres, depth)
        doc["bimonoid"] = {"degree": depth, "checked": rep.checked,
                           "ok": rep.ok, "failures": rep.failures}
        ok = rep.ok
    else:
        ok = False
    _emit(doc, args.format)
    return 0 if ok else 1


def cmd_basis(args):
    pres, _ = _load_algebra(args)
    words = pres.graded_basis(args.degree)
    _emit({"degree": args.degree, "dimension": len(words),
           "words": [pres.format_word(w) for w in words]}, args.format)
    return 0


def cmd_nf(args):
    pres, _ = _load_algebra(args)
    elem = pres.parse_element(args.expr)
    out = pres.format_element(elem)
    if args.format == "text":
        print(out)
    else:
        _emit({"expr": args.expr, "normal_form": out}, args.format)
    return 0


def cmd_act(args):
    pres, _ = _load_algebra(args)
    elem = pres.act(args.power, pres.parse_element(args.expr))
    out = pres.format_element(elem)
    if args.format == "text":
        print(out)
    else:
        _emit({"expr": args.expr, "power": args.power, "result": out},
              args.format)
    return 0


def cmd_coproduct(args):
    pres, _ = _load_algebra(args)
    elem = coproduct(pres, pres.parse_element(args.expr))
    terms = sorted(
        (pres.format_word(a), pres.format_word(b), format_rational(c))
        for (a, b), c in elem.items())
    _emit({"expr": args.expr,
           "coproduct": [{"left": a, "right": b, "coeff": c}
                         for a, b, c in terms]}, args.format)
    return 0


def cmd_cohomology(args):
    pres, _ = _load_algebra(args)
    res = _load_resolution(args, pres, n_max=args.max_h + 1)
    dims = cohomology_dims(res, args.max_h)
    _emit({"H": dims}, args.format)
    return 0


def cmd_validate_resolution(args):
    pres, trunc = _load_algebra(args)
    depth = trunc if trunc is not None else 8
    spec = getattr(args, "resolution", None)
    if spec:
        from pathlib import Path
        data = json.loads(Path(spec[5:]).read_text())
        res = parse_resolution(data, pres, check=False)
    else:
        res = builtin_resolution(args.algebra, n_max=max(depth, 1))
    rep = validate(res, depth)
    _emit({"ok": rep.ok, "minimal": rep.minimal,
           "hom_range": rep.hom_range, "internal_range": rep.internal_range,
           "errors": [list(map(str, e)) for e in rep.errors]}, args.format)
    return 0 if rep.ok else 1


def cmd_cup_table(args):
    pres, trunc = _load_algebra(args, default_trunc=args.p + args.q + 2)
    res = _load_resolution(args, pres, n_max=args.p + args.q)
    rows = cup_table(res, args.p, args.q, seed_paper=_seed_flag(args),
                     standard_order=args.standard_order)
    doc = [{"p": r["p"], "q": r["q"], "psi": r["psi"], "phi": r["phi"],
            "generator": r["generator"], "value": format_rational(r["value"])}
           for r in rows]
    _emit({"order": "standard" if args.standard_order else "opposite",
           "rows": doc}, args.format)
    return 0


def cmd_verify_commutativity(args):
    pres, trunc = _load_algebra(args, default_trunc=args.p + args.q + 2)
    res = _load_resolution(args, pres, n_max=args.p + args.q)
    rep = verify_braided_commutativity(
        res, args.p, args.q, trunc if trunc is not None else args.p + args.q + 2,
        seed_paper=_seed_flag(args))
    rows = [{"p": r["p"], "q": r["q"], "generator": r["generator"],
             "psi": r["psi"], "phi": r["phi"],
             "lhs": format_rational(r["lhs"]), "rhs": format_rational(r["rhs"]),
             "sign": format_rational(r["sign"]), "pass": r["pass"]}
            for r in rep.rows]
    _emit({"ok": rep.ok, "minimal": rep.minimal, "rows": rows,
           "seeds_flagged": len(rep.seed_report)}, args.format)
    return 0 if rep.ok else 1


def cmd_verify_dec(args):
    pres, trunc = _load_algebra(args, default_trunc=4)
    depth = trunc if trunc is not None else 4
    if args.p is not None and args.q is not None:
        rep = verify_dec_cocommutativity(pres, args.p, args.q, depth)
        window = {"p": args.p, "q": args.q}
    else:
        rep = verify_dec_window(pres, args.max_arity, depth)
        window = {"max_arity": args.max_arity}
    _emit({"ok": rep.ok, "checked": rep.checked, "max_degree": depth,
           **window,
           "failures": [str(f[:4]) for f in rep.failures]}, args.format)
    return 0 if rep.ok else 1


def cmd_verify_coduoid(args):
    pres, trunc = _load_algebra(args, default_trunc=6)
    depth = trunc if trunc is not None else 6
    hom_limit = None
    if args.algebra == "super-jordan":
        # quadratic growth of P (.) P: keep the flag-gated window small
        hom_limit = min(args.hom_max if args.hom_max else 3, 3)
        depth = min(depth, 6)
        res = builtin_resolution(args.algebra, n_max=hom_limit + 1)
    else:
        res = _load_resolution(args, pres, n_max=4)
    rng = random.Random(args.rng_seed)
    rep = verify_coduoid(res, depth, hom_limit=hom_limit, rng=rng)
    _emit({"ok": rep.ok, "algebra": rep.algebra,
           "max_internal": rep.max_internal,
           "base_square": rep.base_square_ok,
           "chain_maps": rep.chain_maps_ok,
           "zeta_well_defined": rep.zeta_well_defined,
           "homotopy_found": rep.homotopy_found,
           "counit_homotopy_found": rep.counit_homotopy_found,
           "witness": str(rep.witness) if rep.witness else None},
          args.format)
    return 0 if rep.ok else 1


def build_parser():
    top = argparse.ArgumentParser(
        prog="braidcoh",
        description="Exact Hochschild cohomology checks for braided "
                    "presented algebras over k[t,t^-1]")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, resolution=False, seeds=False):
        p.add_argument("--algebra", default="jordan",
                       help="jordan | super-jordan | file:PATH")
        p.add_argument("--trunc", type=int, default=None,
                       help="internal degree truncation "
                            "(default from BRAIDCOH_TRUNC)")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--rng-seed", type=int, default=0)
        if resolution:
            p.add_argument("--resolution", default=None, help="file:PATH")
        if seeds:
            p.add_argument("--seed-paper-maps", choices=["on", "off"],
                           default="off",
                           help="use the published comparison-map values "
                                "as verified lifting seeds")

    p = sub.add_parser("check-presentation",
                       help="confluence and bimonoid axioms")
    common(p)
    p.set_defaults(func=cmd_check_presentation)

    p = sub.add_parser("basis", help="graded basis of one internal degree")
    common(p)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("nf", help="normal form of an expression")
    common(p)
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("act", help="apply t^k to an expression")
    common(p)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("coproduct", help="braided coproduct of an expression")
    common(p)
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_coproduct)

    p = sub.add_parser("cohomology",
                       help="H^*(A,k) dimensions from the resolution")
    common(p, resolution=True)
    p.add_argument("--max-h", type=int, default=5)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("validate-resolution",
                       help="d^2, exactness, grading, t-equivariance")
    common(p, resolution=True)
    p.set_defaults(func=cmd_validate_resolution)

    p = sub.add_parser("cup-table",
                       help="cup products of dual functionals")
    common(p, resolution=True, seeds=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--standard-order", action="store_true",
                   help="emit the classical segment order instead")
    p.set_defaults(func=cmd_cup_table)

    p = sub.add_parser("verify-commutativity",
                       help="braided commutativity of the opposite cup")
    common(p, resolution=True, seeds=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_verify_commutativity)

    p = sub.add_parser("verify-dec",
                       help="strict identities behind deconcatenation "
                            "cocommutativity")
    common(p)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--max-arity", type=int, default=4)
    p.set_defaults(func=cmd_verify_dec)

    p = sub.add_parser("verify-coduoid",
                       help="homotopy for the interchange square on P")
    common(p, resolution=True)
    p.add_argument("--hom-max", type=int, default=None)
    p.set_defaults(func=cmd_verify_coduoid)
    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BraidcohError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
