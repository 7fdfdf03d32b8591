"""``maghyper`` command-line front end.

Every command writes one JSON document. Exit codes: 0 success, 1 a verdict
failed, 2 bad input, 3 a resource cap was hit (partial output is marked
incomplete).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import core, functor, homology, magnitude, metric, product
from .series import series_expand
from .core import ClosureCapExceeded, HypergraphError
from .homology import GeneratorCapExceeded
from .metric import format_half

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("bound must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("cap must be positive")
    return v


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> core.Hypergraph:
    try:
        return core.parse(_read(path))
    except HypergraphError as exc:
        raise InputError(f"{path}: {exc}") from None


# -- commands -------------------------------------------------------------------


def cmd_distance(args):
    return metric.distance_matrix(_load(args.file)).to_json(), EXIT_OK


def cmd_magnitude(args):
    h = _load(args.file)
    out: dict = {"order": args.order}
    mat = neu = None
    if args.method in ("matrix", "both"):
        rat = magnitude.magnitude_rational(h)
        mat = series_expand(rat, args.order)
        out["rational"] = rat.to_json()
        out["matrix"] = mat.to_json()
    if args.method in ("neumann", "both"):
        neu = magnitude.neumann_magnitude(h, args.order)
        out["neumann"] = neu.to_json()
    if args.method == "both":
        out["match"] = mat == neu
        if not out["match"]:
            out["diff"] = [
                {"q": format_half(i), "matrix": str(a), "neumann": str(b)}
                for i, (a, b) in enumerate(zip(mat.coeffs, neu.coeffs)) if a != b
            ]
            return out, EXIT_MISMATCH
    return out, EXIT_OK


def _homology_doc(table: homology.HomologyTable, incomplete: bool = False) -> dict:
    doc = {"flavor": table.flavor, "lmax": format_half(table.length2_max), "cells": table.to_json()}
    if incomplete:
        doc["incomplete"] = True
    return doc


def cmd_homology(args):
    h = _load(args.file)
    try:
        table = homology.homology_table(h, args.flavor, args.lmax, k_max=args.kmax, cap=args.generator_cap)
    except GeneratorCapExceeded as exc:
        return _homology_doc(exc.partial, incomplete=True), EXIT_CAP
    return _homology_doc(table), EXIT_OK


def cmd_product(args):
    p = product.cartesian_product(_load(args.fileG), _load(args.fileH))
    doc = core.to_dict(p.hypergraph)
    if args.emit:
        Path(args.emit).write_text(core.serialize(p.hypergraph), encoding="utf-8")
        return {"emitted": args.emit, "vertices": p.hypergraph.n_vertices,
                "hyperedges": p.hypergraph.n_edges}, EXIT_OK
    return doc, EXIT_OK


def cmd_kunneth(args):
    if args.flavor != "simple":
        raise InputError("the Künneth comparison is only defined for the simple flavor")
    g, h = _load(args.fileG), _load(args.fileH)
    try:
        rows = product.kunneth_check(g, h, args.nmax, args.lmax, cap=args.generator_cap)
    except GeneratorCapExceeded as exc:
        return {"incomplete": True, "error": str(exc)}, EXIT_CAP
    doc = {"nmax": args.nmax, "lmax": format_half(args.lmax),
           "rows": [r.to_json() for r in rows], "ok": all(r.ok for r in rows)}
    return doc, EXIT_OK if doc["ok"] else EXIT_MISMATCH


def cmd_induced(args):
    g, h = _load(args.fileG), _load(args.fileH)
    try:
        data = json.loads(_read(args.map).decode("utf-8"))
        f = functor.morphism_from_json(g, h, data)
        report = functor.check_morphism(f)
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"{args.map}: {exc}") from None
    try:
        maps = functor.induced_homology_map(f, args.lmax, cap=args.generator_cap)
    except GeneratorCapExceeded as exc:
        return {"incomplete": True, "error": str(exc)}, EXIT_CAP
    except functor.ChainMapError as exc:
        # only possible for maps that increase some distance
        return {"morphism": report.to_json(), "chain_map": False, "error": str(exc)}, EXIT_MISMATCH
    doc = {
        "morphism": report.to_json(),
        "chain_map": True,
        "maps": {f"({k},{format_half(l2)})": m.to_json() for (k, l2), m in maps.items()},
    }
    return doc, EXIT_OK


def cmd_euler_check(args):
    h = _load(args.file)
    try:
        verdicts = homology.euler_check(h, args.lmax, cap=args.generator_cap)
    except GeneratorCapExceeded as exc:
        return {"incomplete": True, "error": str(exc)}, EXIT_CAP
    doc = {"gradings": [v.to_json() for v in verdicts], "ok": all(v.ok for v in verdicts)}
    return doc, EXIT_OK if doc["ok"] else EXIT_MISMATCH


def cmd_closure(args):
    h = _load(args.file)
    try:
        return core.to_dict(core.simplicial_closure(h, cap=args.closure_cap)), EXIT_OK
    except ClosureCapExceeded as exc:
        return {"incomplete": True, "error": str(exc)}, EXIT_CAP


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")
    common.add_argument("--generator-cap", type=_positive, default=homology.DEFAULT_GENERATOR_CAP)
    common.add_argument("--closure-cap", type=_positive, default=core.DEFAULT_CLOSURE_CAP)

    parser = argparse.ArgumentParser(prog="maghyper", description="Magnitude and magnitude homology of hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", parents=[common], help="intercrossing and external distances")
    p.add_argument("file")
    p.set_defaults(run=cmd_distance)

    p = sub.add_parser("magnitude", parents=[common], help="magnitude as a rational function and series")
    p.add_argument("file")
    p.add_argument("--order", type=_nonneg, required=True, help="highest power of sqrt(q)")
    p.add_argument("--method", choices=("matrix", "neumann", "both"), default="matrix")
    p.set_defaults(run=cmd_magnitude)

    p = sub.add_parser("homology", parents=[common], help="bigraded magnitude homology")
    p.add_argument("file")
    p.add_argument("--flavor", choices=homology.FLAVORS, default="hyperedge")
    p.add_argument("--lmax", type=_nonneg, required=True, help="length bound in half-units")
    p.add_argument("--kmax", type=_nonneg, help="highest homological degree")
    p.set_defaults(run=cmd_homology)

    p = sub.add_parser("product", parents=[common], help="Cartesian product of two hypergraphs")
    p.add_argument("fileG")
    p.add_argument("fileH")
    p.add_argument("--emit", help="write the product hypergraph to this file")
    p.set_defaults(run=cmd_product)

    p = sub.add_parser("kunneth", parents=[common], help="compare MH of a product with its factors")
    p.add_argument("fileG")
    p.add_argument("fileH")
    p.add_argument("--nmax", type=_nonneg, required=True)
    p.add_argument("--lmax", type=_nonneg, required=True, help="length bound in half-units")
    p.add_argument("--flavor", choices=homology.FLAVORS, default="simple")
    p.set_defaults(run=cmd_kunneth)

    p = sub.add_parser("induced", parents=[common], help="maps induced on homology by a morphism")
    p.add_argument("fileG")
    p.add_argument("fileH")
    p.add_argument("--map", required=True, help="JSON map from source to target hyperedge index")
    p.add_argument("--lmax", type=_nonneg, required=True, help="length bound in half-units")
    p.set_defaults(run=cmd_induced)

    p = sub.add_parser("euler-check", parents=[common], help="Euler characteristic against magnitude")
    p.add_argument("file")
    p.add_argument("--lmax", type=_nonneg, required=True, help="length bound in half-units")
    p.set_defaults(run=cmd_euler_check)

    p = sub.add_parser("closure", parents=[common], help="simplicial closure")
    p.add_argument("file")
    p.set_defaults(run=cmd_closure)
    return parser


def _emit(doc, args) -> None:
    text = json.dumps(doc, indent=2 if args.pretty else None, ensure_ascii=False) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        doc, code = args.run(args)
    except (InputError, HypergraphError, functor.MorphismError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}, ensure_ascii=False) + "\n")
        return EXIT_INPUT
    _emit(doc, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
