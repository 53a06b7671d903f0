"""Generators for the polytope families used throughout the package."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .exact_core import ONE, ZERO, scalar, unit
from .norms import L1, L2, LINF, Norm, RelativeNorm
from .polytope import GeometryError, VertexSet, from_points, require_convex_position

FAMILIES = ("simplex", "hypercube", "crosspolytope", "l1subspace", "talata", "random")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    dim: int
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        fam = self.family.lower().replace("-", "").replace("_", "")
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        object.__setattr__(self, "family", fam)
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if fam == "l1subspace" and self.dim < 2:
            raise ValueError("l1subspace needs dim >= 2")
        if fam == "talata":
            if self.dim < 4:
                raise ValueError("talata needs dim >= 4")
            eps = scalar(self.params.get("eps", Fraction(1, 10)))
            if not 0 < eps < Fraction(self.dim - 1, 2) - 1:
                raise ValueError(f"talata needs 0 < eps < {Fraction(self.dim - 1, 2) - 1}")


def simplex(d: int) -> VertexSet:
    """Regular simplex as the standard basis of R^(d+1)."""
    return VertexSet(tuple(unit(d + 1, i) for i in range(d + 1)),
                     ((ONE,) * (d + 1) + (ONE,),))


def hypercube(d: int) -> VertexSet:
    return VertexSet(tuple(tuple(Fraction(v) for v in p) for p in product((0, 1), repeat=d)))


def cross_polytope(d: int) -> VertexSet:
    pts = []
    for i in range(d):
        e = unit(d, i)
        pts.append(e)
        pts.append(tuple(-v for v in e))
    return VertexSet(tuple(pts))


def l1_subspace(d: int) -> VertexSet:
    """``{d e_i - c : i <= d} U {+-2 e_(d+1)}`` inside ``sum_(i<=d) x_i = 0``.

    Lies in R^(d+1) with affine dimension d.  Under l1 every pair is at
    distance 2d except the two apexes, which are 4 apart.
    """
    n = d + 1
    pts = []
    for i in range(d):
        pts.append(tuple(Fraction(d - 1) if k == i else (Fraction(-1) if k < d else ZERO)
                         for k in range(n)))
    pts.append(tuple(Fraction(2) if k == d else ZERO for k in range(n)))
    pts.append(tuple(Fraction(-2) if k == d else ZERO for k in range(n)))
    constraint = tuple(ONE if k < d else ZERO for k in range(n)) + (ZERO,)
    return VertexSet(tuple(pts), (constraint,))


def talata_parameter(d: int, eps) -> Fraction:
    return Fraction(d - 1, 2) - scalar(eps)


def talata(d: int, eps=Fraction(1, 10)) -> VertexSet:
    """Edge-antipodal, non-antipodal polytope ``{o, e_1..e_d, p, e_d + lam p}``.

    ``p = 2/(d-1) * (e_1 + ... + e_(d-1))`` and ``lam = (d-1)/2 - eps``.
    Convex position is checked rather than assumed.
    """
    FamilySpec("talata", d, {"eps": eps})
    lam = talata_parameter(d, eps)
    p = tuple(Fraction(2, d - 1) if k < d - 1 else ZERO for k in range(d))
    top = tuple(lam * v + (ONE if k == d - 1 else ZERO) for k, v in enumerate(p))
    pts = [(ZERO,) * d] + [unit(d, i) for i in range(d)] + [p, top]
    V = VertexSet(tuple(pts))
    require_convex_position(V)
    return V


def random_rational(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_polytope(d: int, m: int, seed: int, height: int = 6, max_attempts: int = 1000) -> VertexSet:
    """Random full-dimensional vertex set with at most m points.

    Draws m distinct points with coordinates ``a/b``, ``|a| <= height``,
    ``1 <= b <= height``, drops those that are not vertices, and redraws
    the whole set if the survivors are not d-dimensional.
    """
    if m < d + 1:
        raise ValueError("need at least d + 1 points for a d-polytope")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        pts = set()
        while len(pts) < m:
            pts.add(tuple(random_rational(rng, height) for _ in range(d)))
        V = from_points(sorted(pts), reduce=True)
        if V.affine_dim == d:
            return V
    raise GeometryError("could not draw a full-dimensional random polytope")


def recommended_norm(spec: FamilySpec, V: VertexSet) -> Norm:
    return {
        "simplex": L2,
        "hypercube": LINF,
        "crosspolytope": L1,
        "l1subspace": L1,
    }.get(spec.family) or RelativeNorm(V)


def generate(spec: FamilySpec) -> tuple[VertexSet, Norm]:
    """Build the family's vertex set and the norm it is usually studied in."""
    fam, d, params = spec.family, spec.dim, spec.params
    if fam == "simplex":
        V = simplex(d)
    elif fam == "hypercube":
        V = hypercube(d)
    elif fam == "crosspolytope":
        V = cross_polytope(d)
    elif fam == "l1subspace":
        V = l1_subspace(d)
    elif fam == "talata":
        V = talata(d, params.get("eps", Fraction(1, 10)))
    else:
        V = random_polytope(d, int(params.get("point_count", 2 * d + 2)),
                            int(params.get("seed", 0)),
                            int(params.get("coordinate_bound", 6)))
    return V, recommended_norm(spec, V)
