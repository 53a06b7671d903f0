import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from edgepoly.exact_core import (
    Constraint,
    LinearProgram,
    Status,
    dot,
    nullspace_vector,
    primal_feasible,
    rank,
    scalar,
    solve_lp,
    verify_outcome,
)
from edgepoly.oracles import lp_by_vertex_enumeration
from edgepoly.suite import random_lp


def test_minimize_x_at_least_3():
    out = solve_lp(LinearProgram((1,), [((1,), ">=", 3)]))
    assert out.status is Status.OPTIMAL
    assert out.objective_value == 3
    assert out.primal == (3,)
    assert verify_outcome(LinearProgram((1,), [((1,), ">=", 3)]), out)


def test_contradictory_bounds_give_farkas_certificate():
    lp = LinearProgram((0,), [((1,), ">=", 1), ((1,), "<=", 0)])
    out = solve_lp(lp)
    assert out.status is Status.INFEASIBLE
    # rows in >= form: x >= 1 and -x >= 0; multipliers (1, 1) give 0 >= 1
    assert out.dual == (1, 1)
    assert verify_outcome(lp, out)


def test_unbounded():
    lp = LinearProgram.nonnegative((-1,))
    assert solve_lp(lp).status is Status.UNBOUNDED


def test_max_sense_and_duals():
    # max x + y, x + 2y <= 4, 3x + y <= 6, x, y >= 0  -> (8/5, 6/5), value 14/5
    lp = LinearProgram.nonnegative((1, 1), [((1, 2), "<=", 4), ((3, 1), "<=", 6)], sense="max")
    out = solve_lp(lp)
    assert out.objective_value == F(14, 5)
    assert out.primal == (F(8, 5), F(6, 5))
    assert verify_outcome(lp, out)


def test_equality_rows_and_upper_bounds():
    lp = LinearProgram((1, -1), [((1, 1), "=", 3)], lower=(0, 0), upper=(None, 2))
    out = solve_lp(lp)
    assert out.objective_value == -1
    assert primal_feasible(lp, out.primal)
    assert verify_outcome(lp, out)


@pytest.mark.parametrize("vectors, expected", [
    ([(1, 0), (0, 1)], 2),
    ([(1, 1), (2, 2)], 1),
    ([], 0),
    ([(F(1, 2), F(1, 3), 1), (3, 2, 6), (0, 0, 1)], 2),
])
def test_rank(vectors, expected):
    assert rank(vectors) == expected


def test_nullspace_vector():
    rows = [(1, 2, 3), (2, 4, 6)]
    v = nullspace_vector(rows)
    assert any(v)
    assert all(dot(r, v) == 0 for r in rows)
    assert nullspace_vector([(1, 0), (0, 1)]) is None


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", "x"])
def test_scalar_refuses_inexact_input(bad):
    with pytest.raises((TypeError, ValueError)):
        scalar(bad)


def test_scalar_parses_rational_strings():
    assert scalar("-3/6") == F(-1, 2)
    assert scalar(" 7 ") == 7


def test_malformed_lp_rejected():
    with pytest.raises(ValueError):
        LinearProgram((1, 2), [((1,), "<=", 1)])
    with pytest.raises(ValueError):
        Constraint((1,), "<", 1)


def test_matches_vertex_enumeration_oracle():
    rng = random.Random(5)
    for _ in range(150):
        lp = random_lp(rng)
        out = solve_lp(lp)
        status, value = lp_by_vertex_enumeration(lp)
        assert out.status.value == status
        if status == "optimal":
            assert out.objective_value == value
        assert verify_outcome(lp, out)


def test_deterministic():
    rng = random.Random(11)
    for _ in range(20):
        lp = random_lp(rng)
        assert solve_lp(lp) == solve_lp(lp)


small = st.integers(-4, 4)


@st.composite
def lps(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 4))
    rows = [(tuple(draw(small) for _ in range(n)), draw(st.sampled_from(["<=", ">=", "="])), draw(small))
            for _ in range(m)]
    return LinearProgram(tuple(draw(small) for _ in range(n)), rows,
                         draw(st.sampled_from(["min", "max"])),
                         lower=tuple(draw(st.sampled_from([None, 0])) for _ in range(n)))


@given(lps())
def test_certificates_always_verify(lp):
    out = solve_lp(lp)
    assert verify_outcome(lp, out)
    if out.optimal:
        assert all(c.satisfied_by(out.primal) for c in lp.constraints)
