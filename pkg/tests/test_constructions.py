from fractions import Fraction as F
from itertools import combinations

import pytest

from edgepoly.antipodality import is_antipodal, is_edge_antipodal, is_equidistant, is_subequilateral
from edgepoly.constructions import (
    FamilySpec,
    cross_polytope,
    generate,
    hypercube,
    l1_subspace,
    random_polytope,
    simplex,
    talata,
    talata_parameter,
)
from edgepoly.norms import L1, L2, LINF, RelativeNorm
from edgepoly.polytope import in_convex_position


def test_l1_subspace_d4_distances():
    V = l1_subspace(4)
    assert len(V) == 6
    for i, j in combinations(V.labels, 2):
        assert L1.distance(V[i], V[j]) == (4 if (i, j) == (4, 5) else 8)


def test_l1_subspace_lies_in_hyperplane():
    V = l1_subspace(5)
    assert all(sum(p[:5]) == 0 for p in V.points)
    assert V.affine_constraints == ((1, 1, 1, 1, 1, 0, 0),)


def test_talata_vertex_list():
    V = talata(4, F(1, 10))
    assert talata_parameter(4, F(1, 10)) == F(7, 5)
    assert len(V) == 7
    p = (F(2, 3), F(2, 3), F(2, 3), 0)
    assert V[5] == p
    assert V[6] == (F(14, 15), F(14, 15), F(14, 15), 1)


def test_hypercube_equidistant():
    V = hypercube(3)
    assert len(V) == 8 and is_equidistant(V, LINF)


def test_family_claims():
    assert is_equidistant(simplex(3), L2)
    assert is_equidistant(cross_polytope(3), L1)
    for d in (2, 3, 4):
        V = l1_subspace(d)
        assert is_subequilateral(V, L1) and is_antipodal(V)
    V = talata(5, F(1, 2))
    assert is_edge_antipodal(V) and not is_antipodal(V)


@pytest.mark.parametrize("family, dim, params", [
    ("talata", 3, {}),
    ("talata", 4, {"eps": F(1, 2)}),
    ("talata", 4, {"eps": 0}),
    ("l1subspace", 1, {}),
    ("octahedron", 3, {}),
])
def test_spec_validation(family, dim, params):
    with pytest.raises(ValueError):
        FamilySpec(family, dim, params)


def test_generate_recommended_norms():
    assert generate(FamilySpec("hypercube", 3))[1] is LINF
    assert generate(FamilySpec("l1-subspace", 3))[1] is L1
    assert isinstance(generate(FamilySpec("talata", 4))[1], RelativeNorm)


def test_generation_is_deterministic():
    spec = FamilySpec("random", 3, {"seed": 5, "point_count": 9})
    assert generate(spec)[0] == generate(spec)[0]
    assert random_polytope(3, 9, seed=1) == random_polytope(3, 9, seed=1)
    assert random_polytope(3, 9, seed=1) != random_polytope(3, 9, seed=2)


def test_random_polytope_is_vertex_set():
    for seed in range(10):
        V = random_polytope(3, 8, seed=seed)
        assert V.affine_dim == 3 and in_convex_position(V) and len(V) <= 8
