from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from edgepoly.constructions import hypercube, l1_subspace, random_polytope, talata
from edgepoly.exact_core import add, dot, scale
from edgepoly.norms import L1, L2, LINF, NormValue, RelativeNorm, by_name, distance, dual_eval, le_sum, norm_eval
from edgepoly.polytope import GeometryError, VertexSet


def test_norm_value_ordering_across_kinds():
    assert NormValue.sqrt(2) < NormValue.rational(F(3, 2))
    assert NormValue.sqrt(4) == NormValue.rational(2) == 2
    assert NormValue.sqrt(3) > 1
    assert str(NormValue.sqrt(3)) == "sqrt(3)"
    assert NormValue.sqrt(F(9, 4)).value == F(3, 2)
    with pytest.raises(ValueError):
        NormValue.sqrt(2).value


def test_norm_value_json_roundtrip():
    for v in (NormValue.rational(F(5, 7)), NormValue.sqrt(3)):
        assert NormValue.from_json(v.to_json()) == v


def test_le_sum():
    # sqrt(2) <= 1 + 1 but 2 + 1/100 > 1 + 1
    assert le_sum(NormValue.sqrt(2), NormValue.rational(1), NormValue.rational(1))
    assert not le_sum(NormValue.rational(F(201, 100)), NormValue.rational(1), NormValue.rational(1))
    assert le_sum(NormValue.sqrt(8), NormValue.sqrt(2), NormValue.sqrt(2))


def test_basic_examples(unit_square):
    assert norm_eval(L1, (3, -4)) == 7
    assert norm_eval(L2, (3, -4)) == 5
    assert norm_eval(LINF, (3, -4)) == 4
    assert distance(L1, (1, 0), (0, 1)) == 2
    assert distance(LINF, (0, 0), (1, 1)) == 1
    assert norm_eval(RelativeNorm(unit_square), (1, 1)) == 1
    assert norm_eval(RelativeNorm(unit_square), (F(1, 2), -2)) == 2


def test_dual_examples(unit_square):
    assert dual_eval(L1, (3, -4)) == 4
    assert dual_eval(LINF, (3, -4)) == 7
    assert dual_eval(L2, (3, -4)) == 5
    assert dual_eval(RelativeNorm(unit_square), (1, 1)) == 2


def test_talata_relative_distance():
    V = talata(4, F(1, 10))
    P = RelativeNorm(V)
    o, e4, p = V[0], V[4], V[5]
    assert P.distance(p, o) == F(5, 7)
    assert P.distance(e4, o) == 1


def test_l1_subspace_distances():
    V = l1_subspace(4)
    assert distance(L1, V[0], V[1]) == 8
    assert distance(L1, V[4], V[5]) == 4


def test_relative_norm_outside_affine_directions():
    V = l1_subspace(3)
    P = RelativeNorm(V)
    assert P.distance(V[0], V[1]) > 0
    with pytest.raises(GeometryError):
        P.eval((1, 0, 0, 0))


def test_by_name():
    assert by_name("L1") is L1
    with pytest.raises(ValueError):
        by_name("relative")
    with pytest.raises(ValueError):
        by_name("l3")


def test_relative_diameter_is_one():
    for V in (hypercube(3), talata(4), random_polytope(3, 7, seed=4)):
        P = RelativeNorm(V)
        dists = [P.distance(a, b) for a, b in combinations(V.points, 2)]
        assert max(dists) == 1


def _holder(n, f, x) -> bool:
    # <f, x> <= ||f||* ||x|| with the right side compared through squares
    lhs = dot(f, x)
    if lhs <= 0:
        return True
    return lhs * lhs <= dual_eval(n, f).square * norm_eval(n, x).square


coord = st.fractions(min_value=-5, max_value=5, max_denominator=4)
vec3 = st.tuples(coord, coord, coord)
REL = RelativeNorm(random_polytope(3, 6, seed=1))
NORMS = [L1, L2, LINF, REL]


@given(st.sampled_from(NORMS), vec3, coord)
def test_homogeneity(n, x, a):
    assert norm_eval(n, scale(a, x)) == norm_eval(n, x).scaled(abs(a))


@given(st.sampled_from(NORMS), vec3, vec3)
def test_triangle_inequality(n, x, y):
    assert le_sum(norm_eval(n, add(x, y)), norm_eval(n, x), norm_eval(n, y))


@given(st.sampled_from(NORMS), vec3)
def test_definiteness_and_symmetry(n, x):
    assert (norm_eval(n, x) == 0) == (not any(x))
    assert norm_eval(n, x) == norm_eval(n, tuple(-c for c in x))


@given(st.sampled_from(NORMS), vec3, vec3)
def test_generalised_holder(n, f, x):
    assert _holder(n, f, x)
