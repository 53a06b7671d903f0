import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from edgepoly.constructions import hypercube, l1_subspace, random_polytope
from edgepoly.exact_core import sub
from edgepoly.oracles import edges_by_enumeration, in_hull_by_search, is_vertex_by_search
from edgepoly.polytope import (
    GeometryError,
    NotConvexPosition,
    VertexSet,
    caratheodory,
    difference_generators,
    edge_witness,
    edges,
    from_points,
    is_edge,
    is_vertex,
    membership,
    segment_entry,
    vertex_witness,
)


def test_vertexset_rejects_duplicates():
    with pytest.raises(GeometryError):
        VertexSet(((0, 0), (0, 0), (1, 0)))


def test_affine_dim():
    assert VertexSet(((0, 0, 0), (1, 0, 0), (2, 0, 0))).affine_dim == 1
    assert hypercube(3).affine_dim == 3
    V = l1_subspace(4)
    assert (V.ambient_dim, V.affine_dim) == (5, 4)


def test_is_vertex_examples(unit_triangle):
    assert is_vertex(unit_triangle, 0)
    assert not is_vertex(VertexSet(((0, 0), (2, 0), (1, 0))), 2)
    cube_center = VertexSet(hypercube(3).points + ((F(1, 2),) * 3,))
    assert not is_vertex(cube_center, 8)
    assert all(is_vertex(cube_center, i) for i in range(8))


def test_vertex_witness_verifies(unit_square):
    for i in unit_square.labels:
        w = vertex_witness(unit_square, i)
        assert w.verify(unit_square)
        assert w.face_vertices == frozenset({i})


def test_edge_examples(unit_triangle, unit_square):
    assert is_edge(unit_triangle, 1, 2)
    assert not is_edge(unit_square, 0, 2)
    assert edges(unit_triangle) == {(0, 1), (0, 2), (1, 2)}
    assert edges(unit_square) == {(0, 1), (1, 2), (2, 3), (0, 3)}


def test_cube_edges_are_unit_steps():
    C = hypercube(3)
    E = edges(C)
    assert len(E) == 12
    for i, j in E:
        assert sum(a != b for a, b in zip(C[i], C[j])) == 1
    assert set(E) == edges_by_enumeration(C.points)


def test_edge_witness_verifies():
    C = hypercube(3)
    for i, j in edges(C):
        w = edge_witness(C, i, j)
        assert w.verify(C) and w.face_vertices == frozenset({i, j})


def test_edges_require_convex_position():
    V = VertexSet(((0, 0), (2, 0), (0, 2), (F(1, 2), F(1, 2))))
    with pytest.raises(NotConvexPosition):
        edges(V)


def test_membership_examples(unit_triangle):
    dec = caratheodory((F(1, 3), F(1, 3)), unit_triangle)
    assert sorted(dec.coefficients) == [F(1, 3)] * 3
    assert dec.verify(unit_triangle, (F(1, 3), F(1, 3)))
    assert not membership((2, 2), unit_triangle)
    assert caratheodory((2, 2), unit_triangle) is None


def test_caratheodory_support_is_bounded():
    C = hypercube(3)
    x = (F(1, 3), F(1, 2), F(2, 3))
    dec = caratheodory(x, C)
    assert len(dec.support) <= C.affine_dim + 1
    assert all(c > 0 for c in dec.coefficients) and sum(dec.coefficients) == 1
    assert dec.point(C) == x


def test_segment_through_square(unit_square):
    seg = segment_entry((-1, F(1, 2)), (2, F(1, 2)), unit_square)
    assert (seg.t_min, seg.t_max) == (F(1, 3), F(2, 3))
    assert seg.entry_point == (0, F(1, 2)) and seg.exit_point == (1, F(1, 2))
    assert seg.entry_witness.verify(unit_square)
    assert seg.exit_witness.verify(unit_square)


def test_segment_disjoint(unit_square):
    assert segment_entry((5, 5), (6, 7), unit_square) is None


def test_segment_between_apexes_meets_at_midpoint():
    for d in (2, 4, 6):
        V = l1_subspace(d)
        inner = V.without(d, d + 1)
        seg = segment_entry(V[d], V[d + 1], inner)
        assert seg.t_min == seg.t_max == F(1, 2)


def test_difference_generators_examples(unit_square):
    assert set(difference_generators(VertexSet(((0, 0), (1, 0)))).points) == {(0, 0), (1, 0), (-1, 0)}
    assert set(difference_generators(unit_square).points) == {(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)}


def test_from_points_reduce():
    V = from_points([("0", "0"), ("2", "0"), ("0", "2"), ("1/2", "1/2")], reduce=True)
    assert len(V) == 3


def test_edges_match_facet_oracle_on_random_polytopes():
    rng = random.Random(3)
    for _ in range(25):
        V = random_polytope(3, rng.randint(4, 8), seed=rng.randrange(10**6), height=4)
        assert set(edges(V)) == edges_by_enumeration(V.points)


coord = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def point_sets(draw, dim=2, lo=3, hi=7):
    pts = draw(st.lists(st.tuples(*[coord] * dim), min_size=lo, max_size=hi, unique=True))
    return VertexSet(tuple(pts))


@given(point_sets())
def test_is_vertex_matches_search(V):
    for i in V.labels:
        assert is_vertex(V, i) == is_vertex_by_search(V.points, i)


@given(point_sets(), st.tuples(coord, coord))
def test_membership_matches_search(V, x):
    assert membership(x, V) == in_hull_by_search(x, V.points)
    dec = caratheodory(x, V)
    if dec is not None:
        assert dec.verify(V, x) and len(dec.support) <= V.affine_dim + 1


@given(point_sets(), st.tuples(coord, coord), st.tuples(coord, coord))
def test_segment_entry_bounds_are_sharp(V, x, y):
    if x == y:
        return
    seg = segment_entry(x, y, V)
    d = sub(y, x)
    at = lambda t: tuple(a + t * b for a, b in zip(x, d))
    if seg is None:
        for t in (0, F(1, 4), F(1, 2), F(3, 4), 1):
            assert not membership(at(t), V)
        return
    assert 0 <= seg.t_min <= seg.t_max <= 1
    assert membership(seg.entry_point, V) and membership(seg.exit_point, V)
    for t in (seg.t_min - F(1, 97), seg.t_max + F(1, 97)):
        if 0 <= t <= 1:
            assert not membership(at(t), V)


@given(point_sets(lo=2, hi=6))
def test_difference_generators_symmetric(V):
    G = set(difference_generators(V).points)
    assert (0, 0) in G
    assert all(tuple(-c for c in g) in G for g in G)
    m = len(V)
    assert len(G) <= m * m - m + 1
