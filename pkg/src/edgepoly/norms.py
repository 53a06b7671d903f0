"""Norms with exactly comparable values.

Every :class:`NormValue` carries its square, so Euclidean lengths stay
exact (``sqrt`` is never taken) and all comparisons reduce to comparing
nonnegative rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import isqrt
from typing import Sequence

from .exact_core import ONE, ZERO, Constraint, LinearProgram, Vector, dot, scalar, solve_lp, sub, vector
from .polytope import GeometryError, VertexSet, difference_generators


def _rational_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@total_ordering
@dataclass(frozen=True, eq=False)
class NormValue:
    """A nonnegative real stored as its exact square.

    ``kind`` is ``"rational"`` when the value itself is a known rational
    and ``"sqrt"`` for Euclidean lengths.
    """

    square: Fraction
    kind: str = "rational"

    @classmethod
    def rational(cls, value) -> "NormValue":
        value = scalar(value)
        if value < 0:
            raise ValueError("norm values are nonnegative")
        return cls(value * value, "rational")

    @classmethod
    def sqrt(cls, radicand) -> "NormValue":
        radicand = scalar(radicand)
        if radicand < 0:
            raise ValueError("negative radicand")
        return cls(radicand, "sqrt")

    @property
    def value(self) -> Fraction:
        """The value as a Fraction; raises if it is irrational."""
        root = _rational_sqrt(self.square)
        if root is None:
            raise ValueError(f"sqrt({self.square}) is irrational")
        return root

    @property
    def is_rational(self) -> bool:
        return _rational_sqrt(self.square) is not None

    def scaled(self, c) -> "NormValue":
        c = scalar(c)
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return NormValue(self.square * c * c, self.kind)

    def __float__(self):
        return float(self.square) ** 0.5

    @staticmethod
    def _sq(other) -> Fraction:
        if isinstance(other, NormValue):
            return other.square
        other = scalar(other)
        if other < 0:
            return -other * other  # any negative sorts below every norm value
        return other * other

    def __eq__(self, other):
        try:
            return self.square == self._sq(other)
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self.square < self._sq(other)

    def __hash__(self):
        return hash(self.square)

    def __str__(self):
        if self.kind == "rational" or self.is_rational:
            return str(self.value)
        return f"sqrt({self.square})"

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational", "value": str(self.value)}
        return {"kind": "sqrt", "radicand": str(self.square)}

    @classmethod
    def from_json(cls, data: dict) -> "NormValue":
        if data["kind"] == "rational":
            return cls.rational(data["value"])
        return cls.sqrt(data["radicand"])


def ratio_squared(a: NormValue, b: NormValue) -> Fraction:
    return a.square / b.square


def le_sum(c: NormValue, a: NormValue, b: NormValue) -> bool:
    """Exact test of ``c <= a + b`` by two squarings."""
    gap = c.square - a.square - b.square
    if gap <= 0:
        return True
    return gap * gap <= 4 * a.square * b.square


class Norm:
    name = "norm"

    def eval(self, x: Sequence) -> NormValue:
        raise NotImplementedError

    def dual(self, f: Sequence) -> NormValue:
        raise NotImplementedError

    def __call__(self, x):
        return self.eval(x)

    def distance(self, a, b) -> NormValue:
        return self.eval(sub(vector(a), vector(b)))

    def __repr__(self):
        return f"{type(self).__name__}()"


class L1Norm(Norm):
    name = "l1"

    def eval(self, x):
        return NormValue.rational(sum((abs(scalar(v)) for v in x), ZERO))

    def dual(self, f):
        return LinfNorm().eval(f)


class LinfNorm(Norm):
    name = "linf"

    def eval(self, x):
        return NormValue.rational(max((abs(scalar(v)) for v in x), default=ZERO))

    def dual(self, f):
        return L1Norm().eval(f)


class L2Norm(Norm):
    name = "l2"

    def eval(self, x):
        return NormValue.sqrt(sum((scalar(v) ** 2 for v in x), ZERO))

    def dual(self, f):
        return self.eval(f)


L1 = L1Norm()
L2 = L2Norm()
LINF = LinfNorm()


class RelativeNorm(Norm):
    """Gauge of the difference body conv(P - P) of ``P = conv(V)``.

    Evaluated as ``min sum c_g`` over ``x = sum c_g g``, ``c >= 0``, with g
    running over the nonzero differences of points of V.  When V is not
    full-dimensional the gauge is a norm on the direction space of its
    affine hull only; vectors outside it raise :class:`GeometryError`.
    """

    name = "relative"

    def __init__(self, V: VertexSet):
        self.V = V
        gens = difference_generators(V).points
        self.generators = tuple(g for g in gens if any(g))

    def __repr__(self):
        return f"RelativeNorm(<{len(self.V)} points in R^{self.V.ambient_dim}>)"

    def __eq__(self, other):
        return isinstance(other, RelativeNorm) and other.V == self.V

    def __hash__(self):
        return hash(("relative", self.V))

    def eval(self, x):
        x = vector(x)
        if len(x) != self.V.ambient_dim:
            raise ValueError("dimension mismatch")
        return NormValue.rational(_relative_gauge(self.generators, x))

    def dual(self, f):
        f = vector(f)
        return NormValue.rational(max((dot(f, g) for g in self.generators), default=ZERO))


@lru_cache(maxsize=65536)
def _relative_gauge(generators: tuple, x: Vector) -> Fraction:
    if not any(x):
        return ZERO
    n = len(x)
    k = len(generators)
    rows = [Constraint(tuple(g[r] for g in generators), "=", x[r]) for r in range(n)]
    out = solve_lp(LinearProgram.nonnegative((ONE,) * k, rows))
    if not out.optimal:
        raise GeometryError("degenerate unit ball: vector lies outside the span of P - P")
    return out.objective_value


def norm_eval(n: Norm, x) -> NormValue:
    return n.eval(x)


def distance(n: Norm, a, b) -> NormValue:
    return n.distance(a, b)


def dual_eval(n: Norm, f) -> NormValue:
    return n.dual(f)


def by_name(name: str, V: VertexSet | None = None) -> Norm:
    """Look up a norm by its CLI name; ``relative`` needs the vertex set."""
    name = name.lower()
    if name == "relative":
        if V is None:
            raise ValueError("the relative norm needs a vertex set")
        return RelativeNorm(V)
    try:
        return {"l1": L1, "l2": L2, "linf": LINF}[name]
    except KeyError:
        raise ValueError(f"unknown norm {name!r}") from None
