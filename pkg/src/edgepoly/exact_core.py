"""Exact rational kernel: vectors, rank, and a two-phase simplex solver.

Everything here works over :class:`fractions.Fraction`; the simplex
tableau runs on ``gmpy2.mpq`` for speed and converts back at the boundary.
There is no floating-point path.  The solver uses Bland's rule, so it terminates on
every input and returns the same answer for the same LP.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction.

    Floats and decimal strings are refused: they would silently carry a
    binary rounding error into predicates that test equality.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def vector(values: Iterable) -> Vector:
    return tuple(scalar(v) for v in values)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def neg(a: Vector) -> Vector:
    return tuple(-x for x in a)


def dot(a: Sequence, b: Sequence) -> Fraction:
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def combination(coeffs: Sequence, vectors: Sequence[Vector]) -> Vector:
    """Return sum(c_i * v_i) for a nonempty family of equal-length vectors."""
    out = [ZERO] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                out[k] += c * x
    return tuple(out)


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [scalar(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in fr])
    return out


def rank(vectors: Sequence[Sequence]) -> int:
    """Exact linear rank via fraction-free (Bareiss) elimination."""
    if not vectors:
        return 0
    m = _integer_rows(vectors)
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def nullspace_vector(rows: Sequence[Sequence]) -> Optional[Vector]:
    """A nonzero solution of ``rows @ x = 0`` or None if only x = 0 works."""
    if not rows:
        return None
    a = [[scalar(x) for x in row] for row in rows]
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    x = [ZERO] * ncols
    x[fc] = ONE
    for i, c in enumerate(pivots):
        x[c] = -a[i][fc]
    return tuple(x)


# --------------------------------------------------------------------------
# Linear programming
# --------------------------------------------------------------------------

class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: Vector
    relation: Relation
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vector(self.coeffs))
        object.__setattr__(self, "relation", Relation(self.relation))
        object.__setattr__(self, "rhs", scalar(self.rhs))

    def satisfied_by(self, x: Sequence) -> bool:
        lhs = dot(self.coeffs, x)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """``min`` or ``max`` of ``objective . x`` over linear constraints.

    Variables are free unless ``lower``/``upper`` give bounds; a ``None``
    entry means unbounded on that side.  Use :meth:`nonnegative` for the
    common case of ``x >= 0``.
    """

    objective: Vector
    constraints: tuple = ()
    sense: str = "min"
    lower: Optional[tuple] = None
    upper: Optional[tuple] = None

    def __post_init__(self):
        obj = vector(self.objective)
        n = len(obj)
        rows = tuple(c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints)
        for row in rows:
            if len(row.coeffs) != n:
                raise ValueError(f"constraint has {len(row.coeffs)} coefficients, expected {n}")
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        lower = self._bounds(self.lower, n)
        upper = self._bounds(self.upper, n)
        for lo, hi in zip(lower, upper):
            if lo is not None and hi is not None and lo > hi:
                raise ValueError("lower bound exceeds upper bound")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", rows)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @staticmethod
    def _bounds(bounds, n):
        if bounds is None:
            return (None,) * n
        if len(bounds) != n:
            raise ValueError("bound vector has wrong length")
        return tuple(None if b is None else scalar(b) for b in bounds)

    @classmethod
    def nonnegative(cls, objective, constraints=(), sense="min"):
        return cls(objective, tuple(constraints), sense, lower=(ZERO,) * len(objective))

    @property
    def n_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    """Resolution of a :class:`LinearProgram`.

    Dual multipliers refer to the minimisation form ``min c_min . x`` with
    ``c_min = objective`` (or ``-objective`` for ``max``), every inequality
    read in ``>=`` orientation (a ``<=`` row ``a.x <= b`` becomes
    ``-a.x >= -b``).  In that reading:

    * ``dual[i] >= 0`` for inequality rows, free for equality rows;
    * ``lower_dual[j] >= 0`` multiplies ``x_j >= lower_j`` and
      ``upper_dual[j] >= 0`` multiplies ``-x_j >= -upper_j``;
    * Optimal: the multipliers reproduce ``c_min`` exactly and their
      objective equals the primal minimum.
    * Infeasible: the multipliers combine the rows into ``0 >= 1``.
    """

    status: Status
    primal: Optional[Vector] = None
    objective_value: Optional[Fraction] = None
    dual: Optional[Vector] = None
    lower_dual: Optional[Vector] = None
    upper_dual: Optional[Vector] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    @property
    def feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE


def _oriented_rows(lp: LinearProgram):
    for con in lp.constraints:
        if con.relation is Relation.LE:
            yield [-a for a in con.coeffs], False, -con.rhs
        else:
            yield list(con.coeffs), con.relation is Relation.EQ, con.rhs


_Q0 = mpq(0)
_Q1 = mpq(1)


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class _Tableau:
    """Dense tableau over gmpy2 rationals; the last column is the rhs."""

    def __init__(self, rows, basis, n_cols):
        self.rows = rows
        self.basis = basis
        self.n_cols = n_cols
        self.blocked: set = set()

    def pivot(self, r: int, c: int, cost: list) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            prow = [x / p for x in prow]
            self.rows[r] = prow
        nz = [j for j, x in enumerate(prow) if x]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = cost[c]
        if f:
            for j in nz:
                cost[j] -= f * prow[j]
        self.basis[r] = c

    def reduced_costs(self, costs) -> list:
        """Objective row ``[c_j - c_B B^-1 A_j ..., -c_B B^-1 b]``."""
        out = list(costs) + [_Q0]
        for row, b in zip(self.rows, self.basis):
            cb = costs[b]
            if cb:
                for j, x in enumerate(row):
                    if x:
                        out[j] -= cb * x
        return out

    def run(self, cost: list) -> bool:
        """Bland's-rule primal simplex; False if unbounded."""
        blocked = self.blocked
        while True:
            enter = next((j for j in range(self.n_cols)
                          if cost[j] < 0 and j not in blocked), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter, cost)


def solve_lp(lp: LinearProgram) -> LpOutcome:
    """Solve ``lp`` exactly with a two-phase simplex method.

    Rows whose surplus column can start in the basis get no artificial
    variable.  Either way every row owns one identity column of the
    starting tableau, and the reduced costs of those columns give the
    dual multipliers at the end of each phase.
    """
    n = lp.n_vars
    sgn = 1 if lp.sense == "min" else -1
    c_min = [sgn * c for c in lp.objective]

    # standard form x' >= 0: one shifted column per bounded-below variable,
    # a +/- pair per free variable
    shift = [lo if lo is not None else ZERO for lo in lp.lower]
    cols: list[tuple[int, int]] = []
    for j in range(n):
        cols.append((j, 1))
        if lp.lower[j] is None:
            cols.append((j, -1))

    oriented = list(_oriented_rows(lp))
    upper_rows = [j for j in range(n) if lp.upper[j] is not None]
    for j in upper_rows:
        coeffs = [ZERO] * n
        coeffs[j] = -ONE
        oriented.append((coeffs, False, -lp.upper[j]))

    m = len(oriented)
    n_x = len(cols)
    surplus_of = {}
    k = n_x
    for i, (_, is_eq, _) in enumerate(oriented):
        if not is_eq:
            surplus_of[i] = k
            k += 1
    n_real = k

    rows = []
    sigma = []
    ident = []  # identity column of each row in the starting tableau
    n_art = 0
    for i, (coeffs, is_eq, rhs) in enumerate(oriented):
        b = rhs - dot(coeffs, shift)
        s = -1 if b < 0 else 1
        sigma.append(s)
        qc = [mpq(c) if c else _Q0 for c in coeffs]
        q = [qc[j] * (s * sign) for j, sign in cols]
        row = q + [_Q0] * (n_real - n_x)
        if i in surplus_of:
            row[surplus_of[i]] = mpq(-s)
        row.append(mpq(s * b))
        rows.append(row)
        if i in surplus_of and s == -1:
            ident.append(surplus_of[i])
        else:
            ident.append(n_real + n_art)
            n_art += 1
    n_cols = n_real + n_art
    for row in rows:
        rhs = row.pop()
        row.extend([_Q0] * n_art)
        row.append(rhs)
    for i, c in enumerate(ident):
        rows[i][c] = _Q1

    tab = _Tableau(rows, list(ident), n_cols)

    # Phase 1: y_std_i = cost(ident_i) - rc(ident_i)
    cost1 = [_Q0] * n_real + [_Q1] * n_art
    red = tab.reduced_costs(cost1)
    tab.run(red)
    if red[-1] < 0:
        y = [sigma[i] * _to_fraction(cost1[ident[i]] - red[ident[i]]) for i in range(m)]
        lower_dual = _lower_multipliers(lp, oriented, y, [ZERO] * n)
        total = _to_fraction(-red[-1])
        y = [v / total for v in y]
        lower_dual = [v / total for v in lower_dual]
        return _outcome_with_duals(Status.INFEASIBLE, None, None, y, lower_dual, lp, upper_rows)

    # drive zero-level artificials out of the basis where possible
    for r, b in enumerate(tab.basis):
        if b >= n_real:
            col = next((j for j in range(n_real) if tab.rows[r][j] != 0), None)
            if col is not None:
                tab.pivot(r, col, red)
    tab.blocked = set(range(n_real, n_cols))

    # Phase 2 (all identity columns cost 0, so y_std_i = -rc(ident_i))
    cost2 = [_Q0] * n_cols
    for col, (j, sign) in enumerate(cols):
        if c_min[j]:
            cost2[col] = mpq(sign * c_min[j])
    red = tab.reduced_costs(cost2)
    if not tab.run(red):
        return LpOutcome(Status.UNBOUNDED)

    xs = {}
    for row, b in zip(tab.rows, tab.basis):
        if b < n_x and row[-1]:
            xs[b] = _to_fraction(row[-1])
    primal = list(shift)
    for col, v in xs.items():
        j, sign = cols[col]
        primal[j] += sign * v
    primal = tuple(primal)
    value_min = dot(c_min, primal)
    y = [-sigma[i] * _to_fraction(red[ident[i]]) for i in range(m)]
    lower_dual = _lower_multipliers(lp, oriented, y, c_min)
    return _outcome_with_duals(Status.OPTIMAL, primal, sgn * value_min, y, lower_dual, lp, upper_rows)


def _lower_multipliers(lp, oriented, y, c_min):
    """Multipliers on ``x_j >= lower_j`` closing the stationarity equation."""
    n = lp.n_vars
    z = list(c_min)
    for (coeffs, _, _), yi in zip(oriented, y):
        if yi:
            for j in range(n):
                if coeffs[j]:
                    z[j] -= yi * coeffs[j]
    return [z[j] if lp.lower[j] is not None else ZERO for j in range(n)]


def _outcome_with_duals(status, primal, value, y, lower_dual, lp, upper_rows):
    n_user = len(lp.constraints)
    upper = [ZERO] * lp.n_vars
    for k, j in enumerate(upper_rows):
        upper[j] = y[n_user + k]
    return LpOutcome(status, primal, value, tuple(y[:n_user]), tuple(lower_dual), tuple(upper))


# --------------------------------------------------------------------------
# Certificate checking
# --------------------------------------------------------------------------

def _combine(lp, outcome):
    """Return (sum of multiplied rows, multiplied rhs) or None on sign errors."""
    n = lp.n_vars
    lhs = [ZERO] * n
    rhs = ZERO
    for (coeffs, is_eq, b), y in zip(_oriented_rows(lp), outcome.dual):
        if not is_eq and y < 0:
            return None
        for j in range(n):
            lhs[j] += y * coeffs[j]
        rhs += y * b
    for j in range(n):
        z, w = outcome.lower_dual[j], outcome.upper_dual[j]
        if z < 0 or w < 0:
            return None
        if z and lp.lower[j] is None or w and lp.upper[j] is None:
            return None
        if z:
            lhs[j] += z
            rhs += z * lp.lower[j]
        if w:
            lhs[j] -= w
            rhs -= w * lp.upper[j]
    return lhs, rhs


def primal_feasible(lp: LinearProgram, x: Sequence) -> bool:
    if len(x) != lp.n_vars:
        return False
    for j, v in enumerate(x):
        if lp.lower[j] is not None and v < lp.lower[j]:
            return False
        if lp.upper[j] is not None and v > lp.upper[j]:
            return False
    return all(con.satisfied_by(x) for con in lp.constraints)


def verify_outcome(lp: LinearProgram, outcome: LpOutcome) -> bool:
    """Check an outcome's certificates with exact arithmetic.

    Optimal outcomes must be primal feasible, dual feasible, satisfy
    complementary slackness and have equal primal and dual objectives.
    Infeasible outcomes must carry a Farkas combination yielding ``0 >= 1``.
    Unbounded outcomes carry no certificate and always pass.
    """
    if outcome.status is Status.UNBOUNDED:
        return True
    combo = _combine(lp, outcome)
    if combo is None:
        return False
    lhs, rhs = combo
    if outcome.status is Status.INFEASIBLE:
        return all(v == 0 for v in lhs) and rhs == 1
    sgn = 1 if lp.sense == "min" else -1
    x = outcome.primal
    if not primal_feasible(lp, x):
        return False
    if list(lhs) != [sgn * c for c in lp.objective]:
        return False
    if rhs != sgn * outcome.objective_value or dot(lp.objective, x) != outcome.objective_value:
        return False
    for (coeffs, _, b), y in zip(_oriented_rows(lp), outcome.dual):
        if y and dot(coeffs, x) != b:
            return False
    for j in range(lp.n_vars):
        if outcome.lower_dual[j] and x[j] != lp.lower[j]:
            return False
        if outcome.upper_dual[j] and x[j] != lp.upper[j]:
            return False
    return True


def feasible_point(n_vars: int, constraints, lower=None) -> Optional[Vector]:
    """Any point satisfying ``constraints`` (zero objective), or None."""
    out = solve_lp(LinearProgram(zeros(n_vars), tuple(constraints), "min", lower=lower))
    return out.primal if out.optimal else None
