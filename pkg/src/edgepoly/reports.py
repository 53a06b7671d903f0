"""JSON vertex files, analysis reports and their exact serialisation.

Every rational is written as a string (``"3/7"``, ``"-2"``), never a JSON
number, so files survive any JSON implementation without rounding.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import tempfile
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .antipodality import (
    CheckReport,
    LambdaValue,
    NotApplicable,
    Status,
    antipodal_violation,
    bridge_check,
    edge_antipodal_violation,
    equidistant_bound_check,
    lambda_monotonicity_check,
    lambda_value,
    lemma2_check,
    lemma3_check,
    subequilateral_violation,
    theorem3_check_euclidean,
    theorem_bound_check,
)
from .exact_core import scalar
from .norms import Norm, NormValue, by_name
from .polytope import VertexSet, edges, from_points, non_vertices

FORMAT_VERSION = 1


class InputError(ValueError):
    """Malformed vertex or report file."""


# --------------------------------------------------------------------------
# vertex files
# --------------------------------------------------------------------------

def vertexfile_dict(V: VertexSet, recommended_norm: Optional[str] = None, family: Optional[dict] = None) -> dict:
    doc = {
        "ambient_dim": V.ambient_dim,
        "vertices": [[str(x) for x in p] for p in V.points],
    }
    if V.affine_constraints:
        doc["affine_constraints"] = [[str(x) for x in row] for row in V.affine_constraints]
    if recommended_norm:
        doc["recommended_norm"] = recommended_norm
    if family:
        doc["family"] = family
    return doc


def parse_vertexfile(doc: dict, reduce: bool = False) -> VertexSet:
    """Validate a vertex-file document and build the VertexSet.

    A report document is accepted too; its embedded ``instance`` is used.
    """
    if "instance" in doc and "vertices" not in doc:
        doc = doc["instance"]
    try:
        n = doc["ambient_dim"]
        rows = doc["vertices"]
    except (KeyError, TypeError):
        raise InputError("vertex file needs 'ambient_dim' and 'vertices'") from None
    if not isinstance(n, int) or n < 1:
        raise InputError("'ambient_dim' must be a positive integer")
    pts = []
    for r, row in enumerate(rows):
        if len(row) != n:
            raise InputError(f"vertex {r} has {len(row)} coordinates, expected {n}")
        pts.append(tuple(_parse_scalar(x, f"vertex {r}") for x in row))
    cons = []
    for r, row in enumerate(doc.get("affine_constraints") or []):
        if len(row) != n + 1:
            raise InputError(f"affine constraint {r} needs {n + 1} entries")
        cons.append(tuple(_parse_scalar(x, f"affine constraint {r}") for x in row))
    try:
        return from_points(pts, cons, reduce=reduce)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _parse_scalar(text, where: str) -> Fraction:
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise InputError(f"{where}: coordinates must be rational strings, got {text!r}")
    try:
        return scalar(str(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: cannot parse {text!r} as a rational") from None


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def instance_digest(V: VertexSet) -> str:
    canon = json.dumps(vertexfile_dict(V), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def write_json_atomic(doc: dict, path) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# --------------------------------------------------------------------------
# exact JSON encoding
# --------------------------------------------------------------------------

def to_jsonable(obj):
    """Recursively turn results into JSON data with rationals as strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, NormValue):
        return obj.to_json()
    if isinstance(obj, LambdaValue):
        return {
            "diam": obj.diameter.to_json(),
            "min": obj.min_distance.to_json(),
            "ratio_squared": str(obj.ratio_squared),
            "achieving_max_pairs": [list(p) for p in obj.achieving_max_pairs],
            "achieving_min_pairs": [list(p) for p in obj.achieving_min_pairs],
        }
    if isinstance(obj, VertexSet):
        return vertexfile_dict(obj)
    if isinstance(obj, CheckReport):
        return {
            "name": obj.name,
            "status": obj.status.value,
            "values": to_jsonable(obj.values),
            "witnesses": to_jsonable(obj.witnesses),
            **({"message": obj.message} if obj.message else {}),
        }
    if dataclasses.is_dataclass(obj):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for prop in ("tight", "valid"):
            if isinstance(getattr(type(obj), prop, None), property):
                out[prop] = getattr(obj, prop)
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return [to_jsonable(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# --------------------------------------------------------------------------
# analysis
# --------------------------------------------------------------------------

def _flag(name: str, ok: bool, **witnesses) -> CheckReport:
    return CheckReport(name, Status.of(ok), witnesses={k: v for k, v in witnesses.items() if v is not None})


def analyze_instance(V: VertexSet, n: Norm) -> list[CheckReport]:
    """Run every predicate and verifier on a vertex set in convex position."""
    d = V.affine_dim
    checks = [
        CheckReport("dimension", Status.TRUE, {"ambient_dim": V.ambient_dim, "affine_dim": d,
                                                "vertex_count": len(V), "norm": n.name}),
        _flag("convex_position", not non_vertices(V)),
        CheckReport("edges", Status.TRUE, {"count": len(edges(V))},
                    {"pairs": sorted(edges(V))}),
    ]
    lam = lambda_value(V, n)
    checks.append(CheckReport("equidistant", Status.of(lam.equidistant)))
    short = subequilateral_violation(V, n)
    checks.append(_flag("subequilateral", short is None, short_edge=short))
    checks.append(_flag("edge_antipodal", (bad := edge_antipodal_violation(V)) is None,
                        edge_without_slab=bad))
    checks.append(_flag("antipodal", (bad := antipodal_violation(V)) is None, pair_without_slab=bad))
    checks.append(CheckReport("lambda", Status.TRUE, {"lambda": lam}))
    checks.append(lemma2_check(V, n))
    if short is None and d >= 2:
        checks.append(lemma3_check(V, n))
        checks.append(lambda_monotonicity_check(V, n))
    else:
        checks.append(CheckReport("lemma3", Status.NOT_APPLICABLE,
                                  message="not a subequilateral polytope of dimension >= 2"))
    checks.append(theorem_bound_check(V, "edge_antipodal"))
    checks.append(theorem_bound_check(V, "subequilateral", n))
    checks.append(bridge_check(V, n))
    checks.append(equidistant_bound_check(V, n))
    if n.name == "l2":
        checks.append(theorem3_check_euclidean(V))
    return checks


def build_report(command: dict, V: VertexSet, checks: list, seed: Optional[int] = None) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "command": command,
        "seed": seed,
        "instance_digest": instance_digest(V),
        "instance": vertexfile_dict(V),
        "checks": [to_jsonable(c) for c in checks],
    }


def any_violated(checks) -> bool:
    return any(c.status is Status.VIOLATED for c in checks)


def norm_for(doc_or_name, V: VertexSet, default: str = "relative") -> Norm:
    name = doc_or_name or default
    return by_name(name, V)


__all__ = [
    "InputError", "NotApplicable", "analyze_instance", "any_violated", "build_report",
    "instance_digest", "load_json", "parse_vertexfile", "to_jsonable", "vertexfile_dict",
    "write_json_atomic",
]
