"""Slab tests, non-equidistance and the vertex-count bounds built on them.

Predicates (``is_*``) answer yes/no.  Verifiers (``*_check``) return a
:class:`CheckReport` whose status separates three outcomes: the claim
``holds``, it is ``violated`` (which would mean a bug here, since every
claim checked is a theorem), or its hypothesis fails (``not_applicable``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from .exact_core import Constraint, LinearProgram, Vector, dot, solve_lp, sub
from .norms import L2, Norm, NormValue, RelativeNorm, _rational_sqrt, ratio_squared
from .polytope import (
    CaratheodoryDecomposition,
    FaceWitness,
    GeometryError,
    VertexSet,
    caratheodory,
    edges,
    is_edge,
    require_convex_position,
    segment_entry,
)


class Status(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"
    TRUE = "true"
    FALSE = "false"

    @classmethod
    def of(cls, flag: bool) -> "Status":
        return cls.TRUE if flag else cls.FALSE

    @classmethod
    def verdict(cls, ok: bool) -> "Status":
        return cls.HOLDS if ok else cls.VIOLATED


class NotApplicable(ValueError):
    """A verifier's hypothesis does not hold for this input."""


@dataclass
class CheckReport:
    name: str
    status: Status
    values: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    message: str = ""

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED


# --------------------------------------------------------------------------
# distances
# --------------------------------------------------------------------------

def pair_distances(V: VertexSet, n: Norm) -> dict:
    return {(i, j): n.distance(V[i], V[j]) for i, j in combinations(V.labels, 2)}


def diameter(V: VertexSet, n: Norm) -> tuple[NormValue, list]:
    """Largest pairwise distance and every pair attaining it."""
    if len(V) < 2:
        raise GeometryError("diameter needs at least two points")
    dist = pair_distances(V, n)
    top = max(dist.values())
    return top, [p for p, v in dist.items() if v == top]


@dataclass(frozen=True)
class LambdaValue:
    """Diameter over minimum distance, kept as an exact squared ratio."""

    diameter: NormValue
    min_distance: NormValue
    ratio_squared: Fraction
    achieving_max_pairs: tuple
    achieving_min_pairs: tuple

    @property
    def value(self) -> Fraction:
        return NormValue(self.ratio_squared).value

    @property
    def equidistant(self) -> bool:
        return self.ratio_squared == 1


def lambda_value(V: VertexSet, n: Norm) -> LambdaValue:
    if len(V) < 2:
        raise GeometryError("lambda needs at least two points")
    dist = pair_distances(V, n)
    top, low = max(dist.values()), min(dist.values())
    return LambdaValue(
        top, low, ratio_squared(top, low),
        tuple(p for p, v in dist.items() if v == top),
        tuple(p for p, v in dist.items() if v == low),
    )


def is_equidistant(V: VertexSet, n: Norm) -> bool:
    return lambda_value(V, n).equidistant


def subequilateral_violation(V: VertexSet, n: Norm) -> Optional[tuple]:
    """An edge shorter than the diameter, or None if V is subequilateral."""
    require_convex_position(V)
    if V.affine_dim < 1:
        raise GeometryError("subequilateral needs affine dimension >= 1")
    diam, _ = diameter(V, n)
    for i, j in sorted(edges(V)):
        if n.distance(V[i], V[j]) != diam:
            return (i, j)
    return None


def is_subequilateral(V: VertexSet, n: Norm) -> bool:
    return subequilateral_violation(V, n) is None


# --------------------------------------------------------------------------
# slabs
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SlabWitness:
    functional: Vector
    upper_level: Fraction
    lower_level: Fraction
    upper_vertex: int
    lower_vertex: int

    def verify(self, V: VertexSet) -> bool:
        if not self.upper_level > self.lower_level:
            return False
        vals = [dot(self.functional, p) for p in V.points]
        return (all(self.lower_level <= v <= self.upper_level for v in vals)
                and vals[self.upper_vertex] == self.upper_level
                and vals[self.lower_vertex] == self.lower_level)


def _require_slab_dim(V: VertexSet) -> None:
    if V.affine_dim < 1:
        raise GeometryError("slab tests need affine dimension >= 1")


def antipodal_pair(V: VertexSet, i: int, j: int) -> Optional[SlabWitness]:
    """Parallel supporting hyperplanes through ``V[i]`` and ``V[j]``, if any.

    Solves for f with ``f.p_j <= f.p_k <= f.p_i`` for every k and
    ``f.(p_i - p_j) = 1``.  Within the affine hull the two hyperplanes of
    a slab can never coincide, so the normalisation loses nothing.
    """
    if i == j:
        raise ValueError("slab test needs two distinct vertices")
    _require_slab_dim(V)
    pi, pj = V[i], V[j]
    rows = [Constraint(sub(pi, pj), "=", 1)]
    for k, p in enumerate(V.points):
        if k not in (i, j):
            rows.append(Constraint(sub(pi, p), ">=", 0))
            rows.append(Constraint(sub(p, pj), ">=", 0))
    out = solve_lp(LinearProgram((Fraction(0),) * V.ambient_dim, tuple(rows)))
    if not out.optimal:
        return None
    f = out.primal
    return SlabWitness(f, dot(f, pi), dot(f, pj), i, j)


def antipodal_violation(V: VertexSet) -> Optional[tuple]:
    require_convex_position(V)
    for i, j in combinations(V.labels, 2):
        if antipodal_pair(V, i, j) is None:
            return (i, j)
    return None


def edge_antipodal_violation(V: VertexSet) -> Optional[tuple]:
    """An edge with no slab through its endpoints, or None."""
    require_convex_position(V)
    _require_slab_dim(V)
    for i, j in combinations(V.labels, 2):
        # the slab LP is cheaper to fail than the edge LP is to pass
        if antipodal_pair(V, i, j) is None and is_edge(V, i, j):
            return (i, j)
    return None


def is_antipodal(V: VertexSet) -> bool:
    return antipodal_violation(V) is None


def is_edge_antipodal(V: VertexSet) -> bool:
    return edge_antipodal_violation(V) is None


# --------------------------------------------------------------------------
# verifiers
# --------------------------------------------------------------------------

def bridge_check(V: VertexSet, n: Optional[Norm] = None) -> CheckReport:
    """Both directions between edge-antipodality and subequilateral sets.

    Edge-antipodal sets must be subequilateral with diameter exactly 1 in
    their own relative norm; sets subequilateral in ``n`` must be
    edge-antipodal.
    """
    require_convex_position(V)
    values: dict = {}
    witnesses: dict = {}
    ok = True
    applicable = False
    bad_edge = edge_antipodal_violation(V)
    edge_antipodal = bad_edge is None
    values["edge_antipodal"] = edge_antipodal
    if edge_antipodal:
        applicable = True
        rel = RelativeNorm(V)
        diam, _ = diameter(V, rel)
        short = subequilateral_violation(V, rel)
        values["relative_diameter"] = diam
        values["relative_subequilateral"] = short is None
        if short is not None:
            witnesses["short_edge"] = short
        ok &= short is None and diam == 1
    else:
        witnesses["edge_without_slab"] = bad_edge
    if n is not None:
        sub_eq = is_subequilateral(V, n)
        values["subequilateral"] = sub_eq
        if sub_eq:
            applicable = True
            ok &= edge_antipodal
    status = Status.verdict(ok) if applicable else Status.NOT_APPLICABLE
    return CheckReport("bridge", status, values, witnesses)


def _expand_power(r: Fraction, d: int) -> tuple[Fraction, Fraction]:
    """``(1 + sqrt(r))^d = A + B sqrt(r)``; returns (A, B)."""
    a = b = Fraction(0)
    for k in range(d + 1):
        if k % 2 == 0:
            a += comb(d, k) * r ** (k // 2)
        else:
            b += comb(d, k) * r ** (k // 2)
    return a, b


def count_bound_le(m: int, r: Fraction, d: int) -> tuple[bool, bool]:
    """Exact ``m <= (sqrt(r) + 1)^d``; also reports equality."""
    a, b = _expand_power(r, d)
    gap = m - a
    if gap <= 0:
        return True, gap == 0 and b * b * r == 0
    rhs = b * b * r
    return gap * gap <= rhs, gap * gap == rhs


def lemma2_check(V: VertexSet, n: Norm) -> CheckReport:
    """``|V| <= (lambda + 1)^d`` with d the affine dimension of V."""
    if len(V) < 2:
        return CheckReport("lemma2", Status.NOT_APPLICABLE, message="needs two points")
    lam = lambda_value(V, n)
    d = V.affine_dim
    holds, tight = count_bound_le(len(V), lam.ratio_squared, d)
    r = lam.ratio_squared
    a, b = _expand_power(r, d)
    root = _rational_sqrt(r)
    if root is not None:
        bound = (root + 1) ** d
    else:
        bound = f"{a} + {b}*sqrt({r})"
    return CheckReport("lemma2", Status.verdict(holds), {
        "vertex_count": len(V), "dim": d, "lambda": lam,
        "bound": bound,
        "tight": tight,
    })


@dataclass(frozen=True)
class Lemma3Side:
    """One half of the chain: the endpoint, where the segment meets the
    inner hull, and the dominant vertex of that point's decomposition."""

    endpoint: int
    meet_point: Vector
    t: Fraction
    face_witness: FaceWitness
    decomposition: CaratheodoryDecomposition
    dominant_label: int
    dominant_coefficient: Fraction
    endpoint_to_meet: NormValue
    meet_to_dominant: NormValue
    face_vertices_at_diameter: bool
    chain_holds: bool


@dataclass(frozen=True)
class Lemma3Certificate:
    pair: tuple
    dim: int
    t_min: Fraction
    t_max: Fraction
    diameter: NormValue
    x_side: Lemma3Side
    y_side: Lemma3Side
    lower_bound: NormValue
    distance: NormValue

    @property
    def tight(self) -> bool:
        return self.distance == self.lower_bound

    @property
    def valid(self) -> bool:
        inv_d = Fraction(1, self.dim)
        return (self.x_side.chain_holds and self.y_side.chain_holds
                and self.x_side.dominant_coefficient >= inv_d
                and self.y_side.dominant_coefficient >= inv_d
                and self.distance >= self.lower_bound)


class Lemma3Diagnostic(RuntimeError):
    """The certificate construction met a configuration the argument excludes."""


def _lemma3_side(V, n, diam, d, end, meet, t, face: FaceWitness, others) -> Lemma3Side:
    x = V[end]
    face_labels = sorted(face.face_vertices)
    face_set = VertexSet(tuple(V[others[k]] for k in face_labels))
    dec = caratheodory(meet, face_set)
    if dec is None:
        raise Lemma3Diagnostic("meeting point is not in its supporting face")
    support = tuple((others[face_labels[k]], c) for k, c in dec.support)
    dec = CaratheodoryDecomposition(support)
    if len(support) > d:
        raise Lemma3Diagnostic(f"face decomposition needs {len(support)} > d points")
    dominant, coeff = max(support, key=lambda kc: (kc[1], -kc[0]))
    z = V[dominant]
    at_diam = all(n.distance(x, V[others[k]]) == diam for k in face_labels)
    spread_ok = all(n.distance(V[k], z) <= diam for k, _ in support)
    meet_to_dom = n.distance(meet, z)
    end_to_meet = n.distance(x, meet)
    chain = (at_diam and spread_ok
             and meet_to_dom <= diam.scaled(1 - coeff)
             and end_to_meet >= diam.scaled(coeff)
             and coeff >= Fraction(1, d))
    witness = FaceWitness(face.functional, face.level,
                          frozenset(others[k] for k in face.face_vertices))
    return Lemma3Side(end, meet, t, witness, dec, dominant, coeff,
                      end_to_meet, meet_to_dom, at_diam, chain)


def lemma3_certificate(V: VertexSet, n: Norm, i: int, j: int) -> Lemma3Certificate:
    """Witness chain showing ``||p_i - p_j|| >= (2/d) diam`` for a non-edge.

    The segment ``p_i p_j`` meets the hull of the remaining points in
    ``[x', y']``.  On each side a supporting face through the meeting point
    (read off the LP dual) consists of neighbours of the endpoint, so a
    Caratheodory decomposition over that face has a coefficient of at
    least ``1/d``; the triangle inequality then pushes the endpoint at
    least ``diam/d`` away from its meeting point.
    """
    d = V.affine_dim
    if d < 2:
        raise NotApplicable("needs a polytope of dimension >= 2")
    short = subequilateral_violation(V, n)
    if short is not None:
        raise NotApplicable(f"not subequilateral: edge {short} is shorter than the diameter")
    if i == j:
        raise ValueError("pair must have distinct labels")
    if is_edge(V, i, j):
        raise NotApplicable("bound is definitional for edges")
    others = [k for k in V.labels if k not in (i, j)]
    inner = V.without(i, j)
    seg = segment_entry(V[i], V[j], inner)
    if seg is None:
        raise Lemma3Diagnostic("segment misses the hull of the other vertices")
    diam, _ = diameter(V, n)
    x_side = _lemma3_side(V, n, diam, d, i, seg.entry_point, seg.t_min, seg.entry_witness, others)
    y_side = _lemma3_side(V, n, diam, d, j, seg.exit_point, seg.t_max, seg.exit_witness, others)
    return Lemma3Certificate(
        (i, j), d, seg.t_min, seg.t_max, diam, x_side, y_side,
        diam.scaled(Fraction(2, d)), n.distance(V[i], V[j]),
    )


def lemma3_check(V: VertexSet, n: Norm) -> CheckReport:
    """``lambda <= d/2`` for subequilateral polytopes."""
    d = V.affine_dim
    if d < 2:
        raise NotApplicable("needs a polytope of dimension >= 2")
    short = subequilateral_violation(V, n)
    if short is not None:
        raise NotApplicable(f"not subequilateral: edge {short} is shorter than the diameter")
    lam = lambda_value(V, n)
    bound_sq = Fraction(d * d, 4)
    holds = lam.ratio_squared <= bound_sq
    values = {"lambda": lam, "dim": d, "bound": Fraction(d, 2),
              "tight": lam.ratio_squared == bound_sq}
    witnesses = {}
    for i, j in lam.achieving_min_pairs:
        if not is_edge(V, i, j):
            try:
                cert = lemma3_certificate(V, n, i, j)
            except Lemma3Diagnostic as exc:
                return CheckReport("lemma3", Status.VIOLATED, values, {"pair": (i, j)}, str(exc))
            witnesses["certificate"] = cert
            holds &= cert.valid
            break
    return CheckReport("lemma3", Status.verdict(holds), values, witnesses)


def theorem_bound(d: int) -> Fraction:
    return (Fraction(d, 2) + 1) ** d


def theorem_bound_check(V: VertexSet, mode: str = "edge_antipodal", n: Optional[Norm] = None) -> CheckReport:
    """Vertex count against ``(d/2 + 1)^d`` under the chosen hypothesis."""
    d = V.affine_dim
    name = "theorem1" if mode == "edge_antipodal" else "theorem2"
    if mode == "edge_antipodal":
        hyp = is_edge_antipodal(V)
    elif mode == "subequilateral":
        if n is None:
            raise ValueError("subequilateral mode needs a norm")
        hyp = is_subequilateral(V, n)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    bound = theorem_bound(d)
    values = {"vertex_count": len(V), "dim": d, "bound": bound}
    if d < 2 or not hyp:
        return CheckReport(name, Status.NOT_APPLICABLE, values, message=f"{mode} hypothesis fails")
    values["tight"] = len(V) == bound
    return CheckReport(name, Status.verdict(len(V) <= bound), values)


def theorem3_check_euclidean(V: VertexSet) -> CheckReport:
    """Euclidean subequilateral polytopes must be equilateral simplices."""
    require_convex_position(V)
    d = V.affine_dim
    if d < 1 or not is_subequilateral(V, L2):
        return CheckReport("theorem3", Status.NOT_APPLICABLE, {"dim": d},
                           message="not subequilateral in l2")
    simplex = len(V) == d + 1
    equi = is_equidistant(V, L2)
    return CheckReport("theorem3", Status.verdict(simplex and equi),
                       {"dim": d, "vertex_count": len(V), "equidistant": equi})


def equidistant_bound_check(V: VertexSet, n: Norm) -> CheckReport:
    """Equidistant sets have at most ``2^d`` points."""
    d = V.affine_dim
    if len(V) < 2 or not is_equidistant(V, n):
        return CheckReport("equidistant_bound", Status.NOT_APPLICABLE, {"dim": d})
    return CheckReport("equidistant_bound", Status.verdict(len(V) <= 2 ** d),
                       {"dim": d, "vertex_count": len(V), "bound": 2 ** d})


def lambda_monotonicity_check(V: VertexSet, n: Norm) -> CheckReport:
    """Compare lambda in ``n`` with lambda in the relative norm of V.

    For V subequilateral in ``n`` with diameter 1, the unit ball of ``n``
    contains P - P, so ``n <= ||.||_P`` and hence
    ``lambda(V, ||.||_P) <= lambda(V, n)``; that direction is the verdict.
    The reverse order is reported as ``n_le_relative`` without judging it.
    """
    short = subequilateral_violation(V, n)
    if short is not None:
        raise NotApplicable(f"not subequilateral: edge {short} is shorter than the diameter")
    lam_n = lambda_value(V, n)
    lam_p = lambda_value(V, RelativeNorm(V))
    return CheckReport("lambda_monotonicity", Status.verdict(lam_p.ratio_squared <= lam_n.ratio_squared), {
        "lambda_norm": lam_n,
        "lambda_relative": lam_p,
        "n_le_relative": lam_n.ratio_squared <= lam_p.ratio_squared,
        "relative_le_n": lam_p.ratio_squared <= lam_n.ratio_squared,
    })
