"""Command-line interface.

Reads structure and point data from JSON files, prints one deterministic
JSON document to stdout (sorted keys, fixed separators, rationals as "p/q"
strings) and exits with:

* 0 -- success,
* 2 -- a well-posed computation with a negative outcome (axiom FAIL,
  degenerate cone, beta not interior, enumeration mismatch, ...),
* 3 -- unusable input (bad JSON, unknown kind, malformed flags).

Structure spec JSON (--spec)::

    {"kind": "veronese", "m": 3}
    {"kind": "product_sv", "partition": [2, 1], "base_points": [["1","0"], ["1","0"]]}
    {"kind": "standard_sv", "partition": [1, 1], "gammas": [["0","1"], ["1","0"]]}
    {"kind": "decomposable_sv", "partition": [2, 1],
     "dec_form": [{"j": 1, "r": 2, "a": ["1","0"]}, {"j": 2, "r": 1, "a": ["1","0"]}]}
    {"kind": "product", "factors": [SPEC, SPEC], "s": [...], "t": [...]}

Point data JSON (--points)::

    {"groups": [["0", "1", "2"], ["1/2"]]}            # cone/facets/polytope
    {"xs": ["0", "1", "2"], "scales": ["1", "1", "1"]}  # delzant
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import curves, lattice, polyhedra, structure
from .ratlin import rat_from_str, rat_to_str, vec
from .structure import (
    DimensionMismatch,
    FactorizationStructure,
    QuotientDegenerate,
    QuotientNotFactorization,
)
from .tensor import Tensor

EXIT_OK = 0
EXIT_NEGATIVE = 2
EXIT_USAGE = 3


class InputError(Exception):
    pass


class NegativeOutcome(Exception):
    def __init__(self, payload):
        super().__init__("negative outcome")
        self.payload = payload


def _rats(values) -> tuple:
    try:
        return tuple(rat_from_str(str(v)) for v in values)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad rational: {e}")


def _render(obj):
    """Recursively replace Fractions with 'p/q' strings."""
    if isinstance(obj, Fraction):
        return rat_to_str(obj)
    if isinstance(obj, dict):
        return {k: _render(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_render(v) for v in obj]
    return obj


def _emit(obj) -> None:
    sys.stdout.write(
        json.dumps(_render(obj), sort_keys=True, separators=(",", ":")) + "\n"
    )


def build_structure(spec: dict) -> FactorizationStructure:
    try:
        kind = spec["kind"]
        if kind == "veronese":
            return structure.build_veronese(int(spec["m"]))
        if kind == "product_sv":
            base = spec.get("base_points")
            if base is not None:
                base = [_rats(b) for b in base]
            return structure.build_product_sv(spec["partition"], base)
        if kind == "standard_sv":
            partition = [int(d) for d in spec["partition"]]
            m = sum(partition)
            gammas = []
            for j, coeffs in enumerate(spec["gammas"], start=1):
                gammas.append(Tensor(m - partition[j - 1], _rats(coeffs)))
            return structure.build_standard_sv(partition, gammas)
        if kind == "decomposable_sv":
            dec = {
                (int(e["j"]), int(e["r"])): _rats(e["a"])
                for e in spec["dec_form"]
            }
            return structure.build_decomposable_sv(spec["partition"], dec)
        if kind == "product":
            fa = build_structure(spec["factors"][0])
            fb = build_structure(spec["factors"][1])
            s = Tensor(fa.m, _rats(spec["s"]))
            t = Tensor(fb.m, _rats(spec["t"]))
            return structure.product(fa, fb, s, t)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad structure spec: {e}")
    except DimensionMismatch as e:
        raise NegativeOutcome({"error": "DimensionMismatch", "detail": str(e)})
    raise InputError(f"unknown structure kind {spec.get('kind')!r}")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}")


def _structure_from_args(args) -> FactorizationStructure:
    return build_structure(_load_json(args.spec))


def _cone_from_args(args, f: FactorizationStructure) -> polyhedra.Cone:
    data = _load_json(args.points)
    if "groups" not in data:
        raise InputError('points file needs a "groups" key')
    groups = [_rats(g) for g in data["groups"]]
    chart = polyhedra.default_chart(f)
    try:
        return polyhedra.build_cone(f, chart, groups)
    except polyhedra.NotFullDimensional as e:
        raise NegativeOutcome({"error": "NotFullDimensional", "detail": str(e)})
    except ValueError as e:
        raise InputError(str(e))


def _cert_json(c: polyhedra.FacetCertificate) -> dict:
    return {
        "kind": c.kind,
        "normal": list(c.normal),
        "incident": list(c.incident),
    }


def cmd_build(args) -> int:
    f = _structure_from_args(args)
    _emit(
        {
            "m": f.m,
            "dim": f.image.dim,
            "partition": list(f.partition()),
            "basis": [list(h.coeffs) for h in f.basis],
        }
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _structure_from_args(args)
    report = structure.verify_axiom(f, seed=args.seed, samples_per_slot=args.samples)
    _emit(
        {
            "passed": report.passed,
            "generic_dims": list(report.generic_dims),
            "exceptional": [
                {"slot": s, "point": str(p), "dim": d}
                for s, p, d in report.exceptional
            ],
        }
    )
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_curve(args) -> int:
    f = _structure_from_args(args)
    if not 1 <= args.group <= f.k:
        raise InputError(f"group must be in 1..{f.k}")
    c = polyhedra.group_curve(f, args.group)
    _emit(
        {
            "slot": c.slot,
            "degree": c.degree,
            "coords": [list(p.coeffs) for p in c.coords],
        }
    )
    return EXIT_OK


def cmd_cone(args) -> int:
    f = _structure_from_args(args)
    cone = _cone_from_args(args, f)
    _emit(
        {
            "generators": [list(g) for g in cone.generators],
            "provenance": [{"group": g, "param": t} for g, t in cone.provenance],
            "pointed": polyhedra.is_pointed(cone),
        }
    )
    return EXIT_OK


def cmd_facets(args) -> int:
    f = _structure_from_args(args)
    cone = _cone_from_args(args, f)
    out = {}
    if args.method in ("gale", "both"):
        out["gale"] = [_cert_json(c) for c in polyhedra.enumerate_facets_gale(cone)]
    if args.method in ("bruteforce", "both"):
        out["bruteforce"] = [
            _cert_json(c) for c in polyhedra.enumerate_facets_bruteforce(cone)
        ]
    code = EXIT_OK
    if args.method == "both":
        agree = polyhedra.facet_sets_equal(
            polyhedra.enumerate_facets_gale(cone),
            polyhedra.enumerate_facets_bruteforce(cone),
        )
        out["agree"] = agree
        if not agree:
            code = EXIT_NEGATIVE
    _emit(out)
    return code


def cmd_polytope(args) -> int:
    f = _structure_from_args(args)
    cone = _cone_from_args(args, f)
    beta = _rats(args.beta.split(","))
    facets = polyhedra.enumerate_facets_gale(cone)
    try:
        section = polyhedra.polytope_section(cone, facets, beta)
    except polyhedra.BetaNotInterior as e:
        raise NegativeOutcome({"error": "BetaNotInterior", "detail": str(e)})
    _emit(
        {
            "beta": list(section.beta),
            "vertices": [list(v) for v in section.vertices],
            "incidence": [list(i) for i in section.incidence],
            "simplicial": polyhedra.is_simplicial(facets, cone.m),
        }
    )
    return EXIT_OK


def cmd_delzant(args) -> int:
    f = _structure_from_args(args)
    data = _load_json(args.points)
    if "xs" not in data or "scales" not in data:
        raise InputError('points file needs "xs" and "scales"')
    xs = _rats(data["xs"])
    scales = _rats(data["scales"])
    beta = _rats(args.beta.split(","))
    chart = polyhedra.default_chart(f)
    verdict = lattice.simplex_delzant_check(f, xs, scales, beta, chart)
    _emit(
        {
            "status": verdict.status,
            "coords": list(verdict.coords),
            "rescale": list(verdict.rescale) if verdict.rescale else None,
            "lattice": [list(v) for v in verdict.lattice]
            if verdict.lattice
            else None,
        }
    )
    return EXIT_OK if verdict.status != "BetaNotInterior" else EXIT_NEGATIVE


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="factorstruct",
        description="Exact computations with factorization structures, "
        "their curves, compatible cones and polytopes.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **extra):
        sp = sub.add_parser(name)
        sp.add_argument("--spec", required=True, help="structure spec JSON file")
        sp.set_defaults(fn=fn)
        return sp

    add("build", cmd_build)
    sp = add("verify", cmd_verify)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=5)
    sp = add("curve", cmd_curve)
    sp.add_argument("--group", type=int, required=True)
    sp = add("cone", cmd_cone)
    sp.add_argument("--points", required=True)
    sp = add("facets", cmd_facets)
    sp.add_argument("--points", required=True)
    sp.add_argument(
        "--method", choices=("gale", "bruteforce", "both"), default="both"
    )
    sp = add("polytope", cmd_polytope)
    sp.add_argument("--points", required=True)
    sp.add_argument("--beta", required=True, help="comma-separated rationals")
    sp = add("delzant", cmd_delzant)
    sp.add_argument("--points", required=True)
    sp.add_argument("--beta", required=True, help="comma-separated rationals")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0,) else 0
    try:
        return args.fn(args)
    except InputError as e:
        _emit({"error": "InputError", "detail": str(e)})
        return EXIT_USAGE
    except NegativeOutcome as e:
        _emit(e.payload)
        return EXIT_NEGATIVE
    except (
        QuotientDegenerate,
        QuotientNotFactorization,
        polyhedra.BetaNotInterior,
        polyhedra.NotFullDimensional,
        polyhedra.ChartDegenerate,
    ) as e:
        _emit({"error": type(e).__name__, "detail": str(e)})
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
