"""Command-line front end.

Exit codes: 0 ok, 2 invalid input, 3 a checked statement does not hold.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import datasets
from .constructions import FamilySpec, family
from .crosspolytope import bounds_check, census
from .digraph import PolytopalDigraph, PropertyReport, classify, load_orientation
from .errors import LimitExceeded, ValidationError
from .geometry import (
    line_shelling,
    load_geometry,
    random_generic_line,
    two_facet_start_shelling,
    verify_vh,
)
from .lattice import FaceLattice, build_face_lattice, dump_incidence, load_incidence
from .reproduce import CLAIMS, claim_verify_omega
from .shelling import is_shelling, shelling_property_all, shelling_property_exists

EXIT_OK, EXIT_INVALID, EXIT_CLAIM = 0, 2, 3


class CliError(Exception):
    pass


def _emit(doc: dict | list) -> None:
    print(json.dumps(doc, indent=2, sort_keys=False))


def _lattice(spec: str) -> FaceLattice:
    """A dataset name or a polytope JSON path."""
    try:
        return datasets.dataset_lattice(spec)
    except KeyError:
        pass
    path = Path(spec)
    if not path.exists():
        raise CliError(f"{spec!r} is neither a dataset nor a file")
    return build_face_lattice(load_incidence(path))


def _digraph(polytope: str, orientation: str | None) -> PolytopalDigraph:
    if orientation is None:
        if polytope in datasets.DIGRAPHS:
            return datasets.DIGRAPHS[polytope]()
        raise CliError(f"dataset {polytope!r} has no built-in orientation; pass an orientation file")
    return load_orientation(orientation, _lattice(polytope))


def _bool(flag: bool) -> str:
    return "yes" if flag else "no"


def _report_text(G: PolytopalDigraph) -> tuple[str, PropertyReport]:
    rep = classify(G)
    doc = rep.to_json(G.lattice)
    lines = [
        f"polytope: {G.lattice.name or '-'}  vertices: {G.n}  dimension: {G.lattice.dimension}",
        f"acyclic:    {_bool(rep.acyclic)}",
        f"uso:        {_bool(rep.uso)}",
        f"holt-klee:  {_bool(rep.holt_klee)}",
        f"shelling:   {_bool(rep.shelling)}",
        f"x-type:     {_bool(rep.x_type)}",
    ]
    for key, value in doc["witness"].items():
        lines.append(f"witness {key}: {json.dumps(value)}")
    return "\n".join(lines), rep


# --- commands ------------------------------------------------------------------------


def cmd_check(args) -> int:
    if args.dataset and args.polytope and args.orientation:
        raise CliError("give the polytope either positionally or with --dataset")
    if args.dataset:
        # a lone positional argument is then the orientation file
        args.orientation = args.orientation or args.polytope
        args.polytope = args.dataset
    if not args.polytope:
        raise CliError("no polytope given")
    G = _digraph(args.polytope, args.orientation)
    text, rep = _report_text(G)
    if args.json:
        _emit(rep.to_json(G.lattice))
    else:
        print(text)
    if args.dot:
        Path(args.dot).write_text(G.to_dot())
    if args.expect_x_type and not rep.x_type:
        return EXIT_CLAIM
    return EXIT_OK


def cmd_shelling_check(args) -> int:
    lat = _lattice(args.polytope)
    order = [x.strip() for x in args.order.split(",") if x.strip()]
    try:
        verdict = is_shelling(lat, order)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.json:
        _emit(verdict.to_json())
    elif verdict.is_shelling:
        print("shelling: yes")
    else:
        print(f"shelling: no  failing index: {verdict.failing_index}  reason: {verdict.failing_reason.value}")
        print("boundary: " + " ".join("{" + ",".join(b) + "}" for b in verdict.boundary_names))
    return EXIT_OK if verdict.is_shelling else EXIT_CLAIM


def cmd_shelling_property(args) -> int:
    G = _digraph(args.polytope, args.orientation)
    exists = shelling_property_exists(G)
    doc = {"exists": exists}
    if args.audit:
        doc["all"] = shelling_property_all(G, audit=True, max_sorts=args.max_sorts)
    if args.json:
        _emit(doc)
    else:
        for k, v in doc.items():
            print(f"{k}: {_bool(v)}")
    return EXIT_OK


def cmd_family(args) -> int:
    G0 = _digraph(args.base, args.orientation)
    splits: list = []
    inc, G = family(None, G0, FamilySpec(args.dim, args.vertices), splits)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    poly_path = prefix.with_name(prefix.name + ".polytope.json")
    orient_path = prefix.with_name(prefix.name + ".orientation.json")
    dump_incidence(inc, poly_path)
    doc = G.to_json()
    doc["polytope"] = str(poly_path)
    orient_path.write_text(json.dumps(doc) + "\n")
    text, rep = _report_text(G)
    if args.json:
        _emit({
            "polytope": str(poly_path),
            "orientation": str(orient_path),
            "truncations": splits,
            "report": rep.to_json(G.lattice),
        })
    else:
        print(f"wrote {poly_path} and {orient_path}")
        for k, s in enumerate(splits, 1):
            print(f"truncation {k}: v={s['vertex']} split={','.join(s['split'])}")
        print(text)
    return EXIT_OK


def cmd_xcensus(args) -> int:
    rows = []
    bounds = {r.d: r.passed for r in bounds_check(max(args.dmax, 4))}
    for d in range(1, args.dmax + 1):
        c = census(d, limit=args.limit, hk_limit=args.dmax if args.full_hk else 4)
        row = c.to_json()
        row["bounds_pass"] = bounds.get(d)
        rows.append(row)
    if args.json:
        _emit(rows)
    else:
        print("d\ttotal\ta_d\tb_d\tx_type\tbounds_pass")
        for r in rows:
            bp = "-" if r["bounds_pass"] is None else str(r["bounds_pass"]).lower()
            print(f"{r['d']}\t{r['total']}\t{r['a_d']}\t{r['b_d']}\t{r['x_type']}\t{bp}")
    return EXIT_OK if all(r["consistent"] for r in rows) else EXIT_CLAIM


def cmd_bounds(args) -> int:
    rows = bounds_check(args.dmax)
    if args.json:
        _emit([r.to_json() for r in rows])
    else:
        print("d\ta_d\tb_d\tlower\tupper\tb_d-a_d\tfloor\tratio_ok\tpass")
        for r in rows:
            j = r.to_json()
            print("\t".join(str(j[k]).lower() if isinstance(j[k], bool) else str(j[k]) for k in (
                "d", "a_d", "b_d", "lower", "upper", "b_d_minus_a_d", "excluded_floor", "ratio_ok", "pass"
            )))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_CLAIM


def cmd_line_shelling(args) -> int:
    if Path(args.geometry).exists():
        points, halfspaces = load_geometry(args.geometry)
        lat = None
    else:
        try:
            points, halfspaces = datasets.dataset_geometry(args.geometry)
        except KeyError as exc:
            raise CliError(str(exc.args[0])) from None
        lat = datasets.dataset_lattice(args.geometry)
    if lat is None:
        lat = build_face_lattice(verify_vh(points, halfspaces))
    names = [h.name or f"F_{i + 1}" for i, h in enumerate(halfspaces)]
    orders = []
    if args.start:
        pair = [x.strip() for x in args.start.split(",")]
        if len(pair) != 2 or any(p not in names for p in pair):
            raise CliError("--start takes two facet names separated by a comma")
        i, j = (names.index(p) for p in pair)
        orders.append(two_facet_start_shelling(points, halfspaces, i, j, reverse=args.reverse))
    else:
        rng = random.Random(args.seed)
        for _ in range(args.lines):
            orders.append(line_shelling(halfspaces, random_generic_line(points, halfspaces, rng)))
    results = []
    for order in orders:
        verdict = is_shelling(lat, order)
        results.append({"order": [names[i] for i in order], "is_shelling": verdict.is_shelling})
    if args.json:
        _emit(results)
    else:
        for r in results:
            print(("ok  " if r["is_shelling"] else "BAD ") + " ".join(r["order"]))
    return EXIT_OK if all(r["is_shelling"] for r in results) else EXIT_CLAIM


def _table(path: str | None):
    return load_incidence(path) if path else None


def _geometry(path: str | None):
    return load_geometry(path) if path else None


def cmd_verify_omega(args) -> int:
    claim = claim_verify_omega(_table(args.table), _geometry(args.geometry))
    if args.json:
        _emit(claim.to_json())
    else:
        for row in claim.detail["facets"]:
            mark = "ok " if row["match"] else "BAD"
            print(f"{mark} {row['facet']}: expected {row['expected']} computed {row['computed']}")
        print("PASS" if claim.passed else "FAIL")
    return EXIT_OK if claim.passed else EXIT_CLAIM


def cmd_reproduce(args) -> int:
    if args.only:
        unknown = [c for c in args.only if c not in CLAIMS]
        if unknown:
            raise CliError(f"unknown claims: {', '.join(unknown)}")
    claims = []
    for name, fn in CLAIMS.items():
        if args.only and name not in args.only:
            continue
        if name == "verify-omega":
            claims.append(fn(_table(args.table)))
        else:
            claims.append(fn())
    if args.json:
        _emit([c.to_json() for c in claims])
    else:
        for c in claims:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({c.seconds:.2f}s)")
    return EXIT_OK if all(c.passed for c in claims) else EXIT_CLAIM


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polydigraph", description="Polytopal digraph toolkit.")
    sub = p.add_subparsers(dest="command", required=True)
    datasets_help = "dataset name (omega, omega*, xseven, cubeN, simplexN, crossN) or polytope JSON path"

    c = sub.add_parser("check", help="decide the four properties of an oriented polytope")
    c.add_argument("polytope", nargs="?", help=datasets_help)
    c.add_argument("--dataset", help="built-in dataset name, instead of the positional polytope")
    c.add_argument("orientation", nargs="?", help="orientation JSON (built-in for omega and xseven)")
    c.add_argument("--dot", metavar="FILE", help="also write the digraph in DOT format")
    c.add_argument("--expect-x-type", action="store_true", help="exit 3 unless the digraph is X-type")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("shelling-check", help="verify a facet order")
    c.add_argument("polytope", help=datasets_help)
    c.add_argument("--order", required=True, help="comma-separated facet names")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_shelling_check)

    c = sub.add_parser("shelling-property", help="does some (or every) topological sort shell the polar")
    c.add_argument("polytope", help=datasets_help)
    c.add_argument("orientation", nargs="?")
    c.add_argument("--audit", action="store_true", help="also check every topological sort")
    c.add_argument("--max-sorts", type=int, default=100_000)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_shelling_property)

    c = sub.add_parser("family", help="truncate, then take pyramids, to reach (d, n)")
    c.add_argument("--base", default="omega", help=datasets_help)
    c.add_argument("--orientation", help="orientation JSON for a file base")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--vertices", type=int, required=True)
    c.add_argument("--out", required=True, help="output prefix for the JSON files")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_family)

    c = sub.add_parser("xcensus", help="count pair sequences by class")
    c.add_argument("--dmax", type=int, default=6)
    c.add_argument("--limit", type=int, default=6, help="largest d to enumerate")
    c.add_argument("--full-hk", action="store_true", help="run Holt-Klee on every orientation up to dmax")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_xcensus)

    c = sub.add_parser("bounds", help="check the two-sided bound on good pair sequences")
    c.add_argument("--dmax", type=int, default=8)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("line-shelling", help="facet orders from generic lines")
    c.add_argument("geometry", help="omega*, xseven, cubeN or a geometry JSON path")
    c.add_argument("--lines", type=int, default=20)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--start", metavar="F,G", help="start with two adjacent facets")
    c.add_argument("--reverse", action="store_true", help="with --start, end with them instead")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_line_shelling)

    c = sub.add_parser("verify-omega", help="check the embedded coordinates against the facet lists")
    c.add_argument("--table", help="polytope JSON with the expected facet vertex lists")
    c.add_argument("--geometry", help="geometry JSON overriding the embedded coordinates")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_verify_omega)

    c = sub.add_parser("reproduce", help="evaluate every checkable statement")
    c.add_argument("--table", help="polytope JSON overriding the expected omega* facet lists")
    c.add_argument("--only", nargs="*", metavar="CLAIM", help=f"subset of: {', '.join(CLAIMS)}")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, LimitExceeded, CliError, OSError, json.JSONDecodeError, KeyError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc.args[0]) if exc.args else str(exc)}
        print(json.dumps(err), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
