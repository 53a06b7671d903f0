"""Command line: ``edgepoly {analyze,generate,certify,probe,verify-suite}``.

Exit codes: 0 finished, 1 bad input or failed precondition, 2 a verifier
reported a violation, 3 the prober saw a bound inconsistency.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from .antipodality import Lemma3Diagnostic, NotApplicable, lemma3_certificate
from .constructions import FAMILIES, FamilySpec, generate
from .norms import by_name
from .polytope import GeometryError, NotConvexPosition
from .prober import SearchConfig, config_dict, probe
from .reports import (
    InputError,
    analyze_instance,
    any_violated,
    build_report,
    instance_digest,
    load_json,
    parse_vertexfile,
    to_jsonable,
    vertexfile_dict,
    write_json_atomic,
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATED, EXIT_INCONSISTENT = 0, 1, 2, 3
THREADS_ENV = "EDGEPOLY_THREADS"

log = logging.getLogger("edgepoly")


def _emit(doc: dict, output) -> None:
    if output and output != "-":
        write_json_atomic(doc, output)
    else:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _summary(c) -> str:
    v = c.values
    if c.name == "lambda":
        lam = v["lambda"]
        return f"diam={lam.diameter} min={lam.min_distance} lambda^2={lam.ratio_squared}"
    if c.name == "dimension":
        return f"n={v['ambient_dim']} d={v['affine_dim']} |V|={v['vertex_count']} norm={v['norm']}"
    if c.name == "edges":
        return f"{v['count']} edges"
    keys = ("vertex_count", "bound", "tight", "relative_diameter", "lambda_relative")
    parts = [f"{k}={v[k] if k != 'lambda_relative' else v[k].ratio_squared}" for k in keys if k in v]
    return " ".join(parts) or c.message


def _print_table(checks, stream) -> None:
    width = max(len(c.name) for c in checks)
    for c in checks:
        print(f"  {c.name:<{width}}  {c.status.value:<14}  {_summary(c)}", file=stream)


def _load(path: str, reduce: bool):
    doc = load_json(path)
    V = parse_vertexfile(doc, reduce=reduce)
    inst = doc.get("instance", doc)
    return V, inst.get("recommended_norm")


def cmd_analyze(args) -> int:
    V, recommended = _load(args.input, args.reduce)
    n = by_name(args.norm or recommended or "relative", V)
    checks = analyze_instance(V, n)
    command = {"name": "analyze", "input": args.input, "norm": n.name, "reduce": args.reduce}
    _emit(build_report(command, V, checks, args.seed), args.output)
    _print_table(checks, sys.stderr)
    return EXIT_VIOLATED if any_violated(checks) else EXIT_OK


def _family_params(args) -> dict:
    params = {}
    if args.eps is not None:
        params["eps"] = Fraction(args.eps)
    params["seed"] = args.seed
    if args.points is not None:
        params["point_count"] = args.points
    if args.bound is not None:
        params["coordinate_bound"] = args.bound
    return params


def cmd_generate(args) -> int:
    params = _family_params(args)
    spec = FamilySpec(args.family, args.dim, params)
    V, norm = generate(spec)
    family = {"family": spec.family, "dim": spec.dim,
              **{k: str(v) for k, v in params.items() if spec.family == "random" or k == "eps"}}
    doc = vertexfile_dict(V, norm.name, family)
    _emit(doc, args.output)
    print(f"{spec.family} dim {spec.dim}: {len(V)} vertices in R^{V.ambient_dim}", file=sys.stderr)
    return EXIT_OK


def cmd_certify(args) -> int:
    V, recommended = _load(args.input, False)
    n = by_name(args.norm or recommended or "relative", V)
    i, j = args.pair
    if not (0 <= i < len(V) and 0 <= j < len(V)):
        raise InputError(f"pair labels must lie in 0..{len(V) - 1}")
    cert = lemma3_certificate(V, n, i, j)
    doc = {
        "command": {"name": "certify", "input": args.input, "pair": [i, j], "norm": n.name},
        "seed": args.seed,
        "instance_digest": instance_digest(V),
        "instance": vertexfile_dict(V),
        "certificate": to_jsonable(cert),
    }
    _emit(doc, args.output)
    print(f"pair {i},{j}: lower_bound={cert.lower_bound} distance={cert.distance} "
          f"tight={cert.tight} valid={cert.valid}", file=sys.stderr)
    return EXIT_OK if cert.valid else EXIT_VIOLATED


def cmd_probe(args) -> int:
    cfg = SearchConfig(dim=args.dim, objective=args.objective, iterations=args.iterations,
                       seed=args.seed, add_weight=args.add_weight, delete_weight=args.delete_weight,
                       perturb_weight=args.perturb_weight, height=args.height, restarts=args.restarts)
    workers = int(os.environ.get(THREADS_ENV, "1") or 1)
    rep = probe(cfg, workers=workers)
    doc = {
        "command": {"name": "probe", **config_dict(cfg)},
        "seed": cfg.seed,
        "best_score": str(rep.best_score),
        "best_restart": rep.best_restart,
        "best_instance": vertexfile_dict(rep.best_instance),
        "instance_digest": instance_digest(rep.best_instance),
        "verified_edge_antipodal": rep.verified,
        "max_feasible_vertices": rep.max_feasible_vertices,
        "feasible_history": [[r, it, str(s)] for r, it, s in rep.feasible_history],
        "restarts": [{"restart": r.restart, "start": r.start, "best_score": str(r.best_score),
                      "accepted": r.accepted, "max_feasible_vertices": r.max_feasible_vertices}
                     for r in rep.restarts],
        "inconsistencies": rep.inconsistencies,
    }
    _emit(doc, args.output)
    print(f"best score {rep.best_score} (restart {rep.best_restart}), "
          f"{len(rep.best_instance)} vertices", file=sys.stderr)
    return EXIT_OK if rep.consistent else EXIT_INCONSISTENT


def cmd_verify_suite(args) -> int:
    from .suite import run_suite

    results = run_suite(quick=args.quick, only=args.only, stream=sys.stdout)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgepoly", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="echoed in every report")
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")

    a = sub.add_parser("analyze", parents=[common], help="run every predicate and verifier")
    a.add_argument("input")
    a.add_argument("--norm", choices=("l1", "l2", "linf", "relative"))
    a.add_argument("--reduce", action="store_true", help="drop duplicates and non-vertices first")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", parents=[common], help="write a vertex file for a family")
    g.add_argument("family", choices=FAMILIES + ("cross-polytope", "l1-subspace"))
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--eps", help="talata parameter, e.g. 1/10")
    g.add_argument("--points", type=int, help="random: number of points drawn")
    g.add_argument("--bound", type=int, help="random: coordinate height bound")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("certify", parents=[common], help="certificate for a non-adjacent pair")
    c.add_argument("input")
    c.add_argument("--pair", type=int, nargs=2, required=True, metavar=("I", "J"))
    c.add_argument("--norm", choices=("l1", "l2", "linf", "relative"))
    c.set_defaults(func=cmd_certify)

    pr = sub.add_parser("probe", parents=[common], help="search for extremal edge-antipodal sets")
    pr.add_argument("--dim", type=int, required=True)
    pr.add_argument("--objective", default="max-vertices",
                    choices=("max-vertices", "max-lambda", "max-lambda-relative"))
    pr.add_argument("--iterations", type=int, default=200)
    pr.add_argument("--restarts", type=int, default=3)
    pr.add_argument("--height", type=int, default=4)
    pr.add_argument("--add-weight", type=float, default=1.0)
    pr.add_argument("--delete-weight", type=float, default=0.5)
    pr.add_argument("--perturb-weight", type=float, default=1.0)
    pr.set_defaults(func=cmd_probe)

    s = sub.add_parser("verify-suite", help="run the acceptance criteria")
    s.add_argument("--quick", action="store_true", help="smaller corpora and budgets")
    s.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    s.set_defaults(func=cmd_verify_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, NotApplicable, NotConvexPosition, GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Lemma3Diagnostic as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
