"""Combinatorics of conv(V) decided by exact linear programs.

Nothing here enumerates facets.  Vertices, edges and supporting faces are
certified on demand by LP feasibility, with strict inequalities encoded as
a margin of 1 (functionals can be rescaled, so ``< c`` and ``<= c - 1``
describe the same cones).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .exact_core import (
    ONE,
    ZERO,
    Constraint,
    LinearProgram,
    Vector,
    combination,
    dot,
    nullspace_vector,
    rank,
    scalar,
    solve_lp,
    sub,
    vector,
)


class GeometryError(ValueError):
    """Input violates a geometric precondition (convex position, dimension)."""


class NotConvexPosition(GeometryError):
    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__(f"points not in convex position; non-vertices: {list(self.labels)}")


@dataclass(frozen=True)
class VertexSet:
    """A finite labelled point set; its convex hull is the polytope P.

    ``affine_constraints`` optionally records equations ``a . x = b`` that
    cut out a subspace containing the points (subspace-embedded examples
    keep their ambient coordinates this way).
    """

    points: tuple
    affine_constraints: tuple = ()
    affine_dim: int = field(init=False, compare=False)

    def __post_init__(self):
        pts = tuple(vector(p) for p in self.points)
        if not pts:
            raise GeometryError("empty vertex set")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise GeometryError("points have inconsistent dimensions")
        if len(set(pts)) != len(pts):
            raise GeometryError("duplicate points")
        cons = []
        for row in self.affine_constraints:
            row = vector(row)
            if len(row) != n + 1:
                raise GeometryError(f"affine constraint rows need {n + 1} entries")
            coeffs, rhs = row[:-1], row[-1]
            if any(dot(coeffs, p) != rhs for p in pts):
                raise GeometryError("a point violates an affine constraint")
            cons.append(row)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "affine_constraints", tuple(cons))
        object.__setattr__(self, "affine_dim", rank([sub(p, pts[0]) for p in pts[1:]]))

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i) -> Vector:
        return self.points[i]

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0])

    @property
    def labels(self) -> range:
        return range(len(self.points))

    def without(self, *labels) -> "VertexSet":
        drop = set(labels)
        return VertexSet(tuple(p for k, p in enumerate(self.points) if k not in drop),
                         self.affine_constraints)

    def require_dim(self, d: int) -> None:
        if self.affine_dim != d:
            raise GeometryError(f"expected a {d}-polytope, got affine dimension {self.affine_dim}")


@dataclass(frozen=True)
class FaceWitness:
    """Supporting hyperplane ``{functional . z = level}`` and the face it cuts."""

    functional: Vector
    level: Fraction
    face_vertices: frozenset

    def verify(self, V: VertexSet) -> bool:
        for k, p in enumerate(V.points):
            v = dot(self.functional, p)
            if k in self.face_vertices:
                if v != self.level:
                    return False
            elif not v < self.level:
                return False
        return True


@dataclass(frozen=True)
class CaratheodoryDecomposition:
    support: tuple  # ((label, coefficient), ...)

    @property
    def labels(self) -> tuple:
        return tuple(k for k, _ in self.support)

    @property
    def coefficients(self) -> tuple:
        return tuple(c for _, c in self.support)

    def point(self, V: VertexSet) -> Vector:
        return combination(self.coefficients, [V[k] for k in self.labels])

    def verify(self, V: VertexSet, x: Sequence) -> bool:
        cs = self.coefficients
        if not cs or any(c <= 0 for c in cs) or sum(cs) != 1:
            return False
        if len(cs) > V.affine_dim + 1:
            return False
        return self.point(V) == tuple(x)


def _face_from_functional(V: VertexSet, f: Vector, level) -> FaceWitness:
    face = frozenset(k for k, p in enumerate(V.points) if dot(f, p) == level)
    return FaceWitness(tuple(f), level, face)


# --------------------------------------------------------------------------
# vertices and edges
# --------------------------------------------------------------------------

@lru_cache(maxsize=8192)
def vertex_witness(V: VertexSet, i: int) -> Optional[FaceWitness]:
    """A functional exposing ``V[i]`` alone, or None if it is not a vertex."""
    n = V.ambient_dim
    pi = V[i]
    # f . (p_i - p_k) >= 1 for every other k
    rows = [Constraint(sub(pi, p), ">=", 1) for k, p in enumerate(V.points) if k != i]
    out = solve_lp(LinearProgram((ZERO,) * n, tuple(rows)))
    if not out.optimal:
        return None
    f = out.primal
    return _face_from_functional(V, f, dot(f, pi))


def is_vertex(V: VertexSet, i: int) -> bool:
    return vertex_witness(V, i) is not None


def non_vertices(V: VertexSet) -> list[int]:
    return [k for k in V.labels if not is_vertex(V, k)]


def in_convex_position(V: VertexSet) -> bool:
    return not non_vertices(V)


def require_convex_position(V: VertexSet) -> None:
    bad = non_vertices(V)
    if bad:
        raise NotConvexPosition(bad)


def reduce_to_vertices(V: VertexSet) -> VertexSet:
    """Drop every point that is not a vertex of conv(V)."""
    return V.without(*non_vertices(V))


@lru_cache(maxsize=65536)
def _edge_lp(V: VertexSet, i: int, j: int) -> Optional[FaceWitness]:
    n = V.ambient_dim
    pi, pj = V[i], V[j]
    # variables (f, c): f.p_i = f.p_j = c, f.p_k <= c - 1 otherwise
    rows = [Constraint(pi + (-ONE,), "=", 0), Constraint(pj + (-ONE,), "=", 0)]
    for k, p in enumerate(V.points):
        if k not in (i, j):
            rows.append(Constraint(p + (-ONE,), "<=", -1))
    out = solve_lp(LinearProgram((ZERO,) * (n + 1), tuple(rows)))
    if not out.optimal:
        return None
    f, c = out.primal[:n], out.primal[n]
    return _face_from_functional(V, f, c)


def edge_witness(V: VertexSet, i: int, j: int) -> Optional[FaceWitness]:
    """Supporting hyperplane meeting conv(V) exactly in segment ``V[i] V[j]``."""
    if i == j:
        raise ValueError("an edge needs two distinct labels")
    require_convex_position(V)
    return _edge_lp(V, min(i, j), max(i, j))


def is_edge(V: VertexSet, i: int, j: int) -> bool:
    return edge_witness(V, i, j) is not None


@lru_cache(maxsize=4096)
def edges(V: VertexSet) -> frozenset:
    """All 1-faces of conv(V) as sorted label pairs."""
    require_convex_position(V)
    return frozenset((i, j) for i, j in combinations(V.labels, 2) if _edge_lp(V, i, j) is not None)


# --------------------------------------------------------------------------
# membership and Caratheodory
# --------------------------------------------------------------------------

def reduce_support(points: Sequence[Vector], coeffs: Sequence[Fraction]) -> list[tuple[int, Fraction]]:
    """Shrink a convex combination to an affinely independent support.

    Standard Caratheodory reduction: while the support has an affine
    dependence ``sum a_k p_k = 0, sum a_k = 0``, move along it until a
    coefficient hits zero.  Returns (index, coefficient) pairs.
    """
    support = [(k, c) for k, c in enumerate(coeffs) if c]
    while True:
        cols = [points[k] for k, _ in support]
        rows = [[p[r] for p in cols] for r in range(len(cols[0]))] + [[ONE] * len(cols)]
        alpha = nullspace_vector(rows)
        if alpha is None:
            return support
        if all(a <= 0 for a in alpha):
            alpha = tuple(-a for a in alpha)
        theta, drop = None, None
        for pos, ((_, c), a) in enumerate(zip(support, alpha)):
            if a > 0:
                r = c / a
                if theta is None or r < theta:
                    theta, drop = r, pos
        support = [(k, c - theta * a) for (k, c), a in zip(support, alpha)]
        support[drop] = (support[drop][0], ZERO)
        support = [(k, c) for k, c in support if c]


def caratheodory(x: Sequence, V: VertexSet) -> Optional[CaratheodoryDecomposition]:
    """Convex combination of at most affine_dim + 1 points of V equal to x."""
    x = vector(x)
    if len(x) != V.ambient_dim:
        raise ValueError("dimension mismatch")
    m, n = len(V), V.ambient_dim
    rows = [Constraint(tuple(p[r] for p in V.points), "=", x[r]) for r in range(n)]
    rows.append(Constraint((ONE,) * m, "=", 1))
    out = solve_lp(LinearProgram.nonnegative((ZERO,) * m, rows))
    if not out.optimal:
        return None
    support = reduce_support(V.points, out.primal)
    return CaratheodoryDecomposition(tuple(support))


def membership(x: Sequence, V: VertexSet) -> bool:
    return caratheodory(x, V) is not None


# --------------------------------------------------------------------------
# segment against hull
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SegmentEntry:
    """``{t in [0,1] : x + t(y - x) in conv(V)} = [t_min, t_max]``.

    ``entry_witness`` supports conv(V) at the entry point and separates x;
    ``exit_witness`` does the same at the exit point for y.
    """

    t_min: Fraction
    t_max: Fraction
    entry_point: Vector
    exit_point: Vector
    entry_witness: FaceWitness
    exit_witness: FaceWitness


def _segment_lp(x, y, V: VertexSet, sense: str):
    m, n = len(V), V.ambient_dim
    d = sub(y, x)
    # variables (t, mu_1..mu_m): sum mu_k p_k - t (y - x) = x, sum mu = 1
    rows = [Constraint((-d[r],) + tuple(p[r] for p in V.points), "=", x[r]) for r in range(n)]
    rows.append(Constraint((ZERO,) + (ONE,) * m, "=", 1))
    lp = LinearProgram((ONE,) + (ZERO,) * m, tuple(rows), sense,
                       lower=(ZERO,) * (m + 1), upper=(ONE,) + (None,) * m)
    out = solve_lp(lp)
    if not out.optimal:
        return None
    u = out.dual[:n]
    level = -out.dual[n]
    return out.primal[0], _face_from_functional(V, tuple(u), level)


def segment_entry(x: Sequence, y: Sequence, V: VertexSet) -> Optional[SegmentEntry]:
    """Intersect the segment ``xy`` with conv(V); None when they are disjoint.

    Supporting hyperplanes come from the optimal LP duals: the multipliers
    of the coordinate rows form a functional that is maximised over V
    exactly on the face containing the entry (exit) point.
    """
    x, y = vector(x), vector(y)
    if x == y:
        raise ValueError("segment endpoints coincide")
    lo = _segment_lp(x, y, V, "min")
    if lo is None:
        return None
    hi = _segment_lp(x, y, V, "max")
    t_min, entry = lo
    t_max, exit_ = hi
    d = sub(y, x)
    return SegmentEntry(
        t_min, t_max,
        tuple(a + t_min * b for a, b in zip(x, d)),
        tuple(a + t_max * b for a, b in zip(x, d)),
        entry, exit_,
    )


# --------------------------------------------------------------------------
# difference body
# --------------------------------------------------------------------------

def difference_generators(V: VertexSet) -> VertexSet:
    """Points ``p_i - p_j`` whose hull is the difference body P - P."""
    seen = {}
    for p in V.points:
        for q in V.points:
            seen.setdefault(sub(p, q), None)
    return VertexSet(tuple(seen))


def affinely_independent(points: Sequence[Vector]) -> bool:
    if len(points) <= 1:
        return True
    return rank([sub(p, points[0]) for p in points[1:]]) == len(points) - 1


def from_points(points, affine_constraints=(), reduce: bool = False) -> VertexSet:
    """Build a VertexSet; with ``reduce`` drop duplicates and non-vertices."""
    pts = [vector(p) for p in points]
    if reduce:
        pts = list(dict.fromkeys(pts))
    V = VertexSet(tuple(pts), tuple(affine_constraints))
    return reduce_to_vertices(V) if reduce else V


__all__ = [
    "CaratheodoryDecomposition", "FaceWitness", "GeometryError", "NotConvexPosition",
    "SegmentEntry", "VertexSet", "affinely_independent", "caratheodory",
    "difference_generators", "edge_witness", "edges", "from_points", "in_convex_position",
    "is_edge", "is_vertex", "membership", "non_vertices", "reduce_support",
    "reduce_to_vertices", "require_convex_position", "scalar", "segment_entry",
    "vertex_witness",
]
