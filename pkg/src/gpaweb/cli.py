"""Command-line interface.

Exit codes: 0 success, 1 relation failures, 2 usage or input errors,
3 lattice precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from .bruhat_tits import BruhatTitsBuilding
from .coeffs import Field, gaussian_binomial, is_prime
from .gpa_eval import Evaluator, exhaustive_starts, path_json, random_starts, verify_relation
from .graph_core import BuildingGraph, Path, PrecisionError, export_dot, export_json
from .relations import RELATION_IDS, relation_grid, relation_instance
from .webdsl import WebSyntaxError, WebValidationError, parse
from .weight_lattice import WeightLattice

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def build_graph(args) -> BuildingGraph:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.model == "weight-lattice":
        return WeightLattice(args.n)
    if args.q is None:
        raise UsageError("--q is required for the bruhat-tits model")
    if not is_prime(args.q):
        raise UsageError(f"--q must be prime, got {args.q}")
    if args.radius < 0:
        raise UsageError("--radius must be nonnegative")
    return BruhatTitsBuilding(args.n, args.q, precision=args.radius + 2)


def parse_field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def hypothesis_warning(g: BuildingGraph, fld: Field) -> Optional[str]:
    if g.kind != "bruhat-tits":
        return None
    p = fld.characteristic
    if p == 0:
        return "warning: characteristic 0; the relations are expected to fail on this building"
    if p < g.n - 1 or g.q % p != 1:
        return (f"warning: field F{p} does not satisfy p >= n - 1 and q = 1 mod p "
                f"(n={g.n}, q={g.q}); failures may be genuine")
    return None


def parse_path_spec(g: BuildingGraph, start, spec: str) -> Path:
    """Parse ``label:index,...`` (a bare ``n`` is a stay step) into a path from ``start``."""
    verts = [start]
    labels = []
    spec = spec.strip()
    if spec:
        for item in spec.split(","):
            item = item.strip()
            try:
                if ":" in item:
                    lab, idx = (int(x) for x in item.split(":"))
                else:
                    lab, idx = int(item), None
            except ValueError:
                raise UsageError(f"bad path step {item!r}; use label:index") from None
            if lab == g.n:
                verts.append(verts[-1])
            elif 1 <= lab < g.n:
                if idx is None:
                    raise UsageError(f"step {item!r} needs a neighbour index")
                nbrs = g.neighbors(verts[-1], lab)
                if not 0 <= idx < len(nbrs):
                    raise UsageError(f"neighbour index {idx} out of range 0..{len(nbrs) - 1}")
                verts.append(nbrs[idx])
            else:
                raise UsageError(f"label {lab} outside [1, {g.n}]")
            labels.append(lab)
    return Path(tuple(verts), tuple(labels))


RELATION_GROUPS = {
    "LOLLIPOP": ["LOLLIPOP-A", "LOLLIPOP-B"],
    "SLN": ["SLN-L", "SLN-R"],
    "SS-SPECIAL": ["SS1-SPECIAL", "SS2-SPECIAL"],
}


def relation_filter(text: Optional[str]) -> Optional[list[str]]:
    if not text:
        return None
    out = []
    for name in text.split(","):
        name = name.strip().upper()
        if name in RELATION_GROUPS:
            out.extend(RELATION_GROUPS[name])
        elif name in RELATION_IDS:
            out.append(name)
        else:
            raise UsageError(f"unknown relation {name!r}")
    return out


# -- commands ---------------------------------------------------------------------

def run_suite(g: BuildingGraph, fld: Field, *, seed: int = 0, families=None,
              min_pairs: int = 200, base_radius: int = 2, max_witnesses: int = 10) -> dict:
    """Verify every relation instance of the default grid; returns the merged report."""
    ev = Evaluator(g, fld)
    results = []
    for rel, params in relation_grid(g.n, families):
        lhs, rhs = relation_instance(rel, params, g.n)
        if g.kind == "weight-lattice":
            samples = exhaustive_starts(g, lhs.dom, [g.base_vertex()])
            need = None
        else:
            rng = random.Random(f"{seed}:{rel}:{sorted(params.items())}")
            samples = random_starts(g, lhs.dom, rng, base_radius=base_radius)
            need = min_pairs
        results.append(verify_relation(g, (lhs, rhs), samples, fld, relation=rel, params=params,
                                       min_pairs=need, max_witnesses=max_witnesses, evaluator=ev))
    return {
        "model": {"kind": g.kind, "n": g.n, "q": g.q},
        "field": str(fld),
        "seed": seed if g.kind != "weight-lattice" else None,
        "sampling": "exhaustive from the origin" if g.kind == "weight-lattice"
        else f"random, at least {min_pairs} pairs per instance",
        "instances": len(results),
        "failing_instances": sum(1 for r in results if r["disagreements"]),
        "pairs_tested": sum(r["pairs_tested"] for r in results),
        "disagreements": sum(r["disagreements"] for r in results),
        "results": results,
    }


def cmd_verify_relations(args) -> int:
    g = build_graph(args)
    fld = parse_field(args.field)
    warn = hypothesis_warning(g, fld)
    if warn:
        print(warn, file=sys.stderr)
    report = run_suite(g, fld, seed=args.seed, families=relation_filter(args.relations),
                       min_pairs=args.min_pairs, base_radius=args.base_radius,
                       max_witnesses=args.max_witnesses)
    text = dump_json(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = [r for r in report["results"] if r["disagreements"]]
    for r in bad:
        w = r["failures"][0]
        print(f"FAIL {r['relation']} {json.dumps(r['params'], sort_keys=True)}: "
              f"{r['disagreements']}/{r['pairs_tested']} pairs differ "
              f"(e.g. lhs={w['lhs']} rhs={w['rhs']})", file=sys.stderr)
    print(f"{report['instances']} instances, {report['pairs_tested']} pairs, "
          f"{report['disagreements']} disagreements", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_eval_web(args) -> int:
    g = build_graph(args)
    fld = parse_field(args.field)
    try:
        with open(args.web) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read web file: {e}") from None
    web = parse(text)
    if web.n != g.n:
        raise UsageError(f"web is for n={web.n} but the model has n={g.n}")
    start = g.base_vertex()
    p1 = parse_path_spec(g, start, args.p1)
    p2 = parse_path_spec(g, start, args.p2 if args.p2 is not None else args.p1)
    if p1.end != p2.end:
        raise UsageError("p1 and p2 must end at the same vertex")
    value = Evaluator(g, fld).eval_web(web, p1, p2)
    if args.json:
        sys.stdout.write(dump_json({
            "web": web.text(),
            "model": {"kind": g.kind, "n": g.n, "q": g.q},
            "field": str(fld),
            "p1": path_json(g, p1),
            "p2": path_json(g, p2),
            "value": fld.to_json(value),
        }))
    else:
        print(fld.format(value))
    return EXIT_OK


def cmd_export_graph(args) -> int:
    g = build_graph(args)
    center = g.base_vertex()
    if args.format == "json":
        text = dump_json(export_json(g, center, args.radius))
    else:
        text = export_dot(g, center, args.radius)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_count(args) -> int:
    if args.q < 1:
        raise UsageError("--q must be at least 1")
    print(gaussian_binomial(args.n, args.k, args.q))
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------

def _model_args(p: argparse.ArgumentParser, radius_default: int):
    p.add_argument("--model", choices=["weight-lattice", "bruhat-tits"], default="weight-lattice")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, help="residue field order (bruhat-tits only, prime)")
    p.add_argument("--radius", type=int, default=radius_default,
                   help="ball radius; lattice precision is radius + 2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpaweb", description=(
        "Evaluate SL_n webs in graph planar algebras of A~_{n-1} buildings."))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-relations", help="check the web relations on a building")
    _model_args(p, 5)
    p.add_argument("--field", default="Q", help="Q or Fp, e.g. F2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--relations", help="comma-separated relation ids (default: all)")
    p.add_argument("--min-pairs", type=int, default=200,
                   help="boundary pairs per instance when sampling")
    p.add_argument("--base-radius", type=int, default=2,
                   help="sampled base vertices lie within this distance of the origin")
    p.add_argument("--max-witnesses", type=int, default=10)
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=cmd_verify_relations)

    p = sub.add_parser("eval-web", help="evaluate one web on a boundary pair")
    _model_args(p, 5)
    p.add_argument("--field", default="Q")
    p.add_argument("--web", required=True, help="file containing the web in the text format")
    p.add_argument("--p1", required=True, help="path spec label:index,... from the origin")
    p.add_argument("--p2", help="path spec for the top boundary (default: same as p1)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval_web)

    p = sub.add_parser("export-graph", help="export a ball of the building")
    _model_args(p, 1)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_graph)

    p = sub.add_parser("count", help="number of k-dimensional subspaces of F_q^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_count)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrecisionError as e:
        hint = f" (at least {e.required - 2})" if e.required is not None else ""
        print(f"error: {e}; rerun with a larger --radius{hint}", file=sys.stderr)
        return EXIT_PRECISION
    except (UsageError, WebSyntaxError, WebValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
