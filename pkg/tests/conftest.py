from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F = Fraction


@pytest.fixture
def unit_square():
    from edgepoly.polytope import VertexSet

    return VertexSet(((0, 0), (1, 0), (1, 1), (0, 1)))


@pytest.fixture
def unit_triangle():
    from edgepoly.polytope import VertexSet

    return VertexSet(((0, 0), (1, 0), (0, 1)))
