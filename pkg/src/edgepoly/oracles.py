"""Brute-force reference answers used to cross-check the LP-based code.

Nothing in this module touches the simplex solver: everything is subset
enumeration plus a small exact Gaussian elimination of its own.  It is
exponential and only meant for tiny instances.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

BOX = Fraction(10**6)


def _rref(a: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    a = [row[:] for row in a]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
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
    return a, pivots


def solve_unique(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list[Fraction]]:
    """The unique solution of ``rows @ x = rhs`` or None (inconsistent or not unique)."""
    n = len(rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    red, pivots = _rref(aug)
    if n in pivots or len(pivots) != n:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = red[i][-1]
    return x


def _normal(points: Sequence[Sequence]) -> Optional[list[Fraction]]:
    """Normal of the hyperplane through d affinely independent points in R^d."""
    base = points[0]
    rows = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    d = len(base)
    red, pivots = _rref(rows) if rows else ([], [])
    if len(pivots) != d - 1:
        return None
    free = next(c for c in range(d) if c not in pivots)
    x = [Fraction(0)] * d
    x[free] = Fraction(1)
    for i, c in enumerate(pivots):
        x[c] = -red[i][free]
    return x


def facets_by_enumeration(points: Sequence[Sequence]) -> set[frozenset]:
    """Vertex-index sets of all facets of a full-dimensional hull in R^d."""
    d = len(points[0])
    facets = set()
    for sub in combinations(range(len(points)), d):
        nrm = _normal([points[k] for k in sub])
        if nrm is None:
            continue
        level = sum(a * b for a, b in zip(nrm, points[sub[0]]))
        vals = [sum(a * b for a, b in zip(nrm, p)) - level for p in points]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            facets.add(frozenset(k for k, v in enumerate(vals) if v == 0))
    return facets


def edges_by_enumeration(points: Sequence[Sequence]) -> set[tuple[int, int]]:
    """Pairs whose common facets intersect in exactly that pair."""
    facets = facets_by_enumeration(points)
    out = set()
    for i, j in combinations(range(len(points)), 2):
        common = [f for f in facets if i in f and j in f]
        if not common:
            continue
        meet = frozenset.intersection(*common)
        if meet == {i, j}:
            out.add((i, j))
    return out


def in_hull_by_search(x: Sequence, points: Sequence[Sequence]) -> bool:
    """Membership by trying every affinely independent subset (Caratheodory)."""
    x = [Fraction(v) for v in x]
    n = len(x)
    for k in range(1, min(len(points), n + 1) + 1):
        for sub in combinations(points, k):
            rows = [[Fraction(p[r]) for p in sub] for r in range(n)] + [[Fraction(1)] * k]
            mu = solve_unique(rows, x + [Fraction(1)])
            if mu is not None and all(m >= 0 for m in mu):
                return True
    return False


def is_vertex_by_search(points: Sequence[Sequence], i: int) -> bool:
    others = [p for k, p in enumerate(points) if k != i]
    return not others or not in_hull_by_search(points[i], others)


def _lp_rows(lp, box: Fraction):
    """All constraints as (coeffs, relation, rhs), with the artificial box."""
    n = lp.n_vars
    rows = [(list(c.coeffs), c.relation.value, c.rhs) for c in lp.constraints]
    for j in range(n):
        e = [Fraction(int(k == j)) for k in range(n)]
        if lp.lower[j] is not None:
            rows.append((e, ">=", lp.lower[j]))
        if lp.upper[j] is not None:
            rows.append((e, "<=", lp.upper[j]))
        rows.append((e, "<=", box))
        rows.append((e, ">=", -box))
    return rows


def _boxed_optimum(lp, box: Fraction) -> Optional[Fraction]:
    n = lp.n_vars
    rows = _lp_rows(lp, box)
    sgn = 1 if lp.sense == "min" else -1
    best = None
    for sub in combinations(range(len(rows)), n):
        x = solve_unique([rows[k][0] for k in sub], [rows[k][2] for k in sub])
        if x is None:
            continue
        ok = True
        for coeffs, rel, b in rows:
            v = sum(a * y for a, y in zip(coeffs, x))
            if (rel == "<=" and v > b) or (rel == ">=" and v < b) or (rel == "=" and v != b):
                ok = False
                break
        if ok:
            val = sgn * sum(a * y for a, y in zip(lp.objective, x))
            if best is None or val < best:
                best = val
    return None if best is None else sgn * best


def lp_by_vertex_enumeration(lp) -> tuple[str, Optional[Fraction]]:
    """("optimal", value) / ("infeasible", None) / ("unbounded", None).

    The LP is boxed by ``|x_j| <= M`` twice (M and 2M).  Small integer data
    keeps every genuine vertex far inside the box, so the two boxed optima
    agree exactly when the LP is bounded.
    """
    v1 = _boxed_optimum(lp, BOX)
    if v1 is None:
        return "infeasible", None
    v2 = _boxed_optimum(lp, 2 * BOX)
    if v1 != v2:
        return "unbounded", None
    return "optimal", v1
