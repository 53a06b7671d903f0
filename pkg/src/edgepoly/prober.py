"""Feasibility-first hill climbing over edge-antipodal rational point sets.

Each restart walks through point sets that are exactly verified to be
edge-antipodal d-polytopes in convex position; a move that breaks this is
simply rejected.  All randomness comes from per-restart generators seeded
from the config, so a config always reproduces the same report.
"""
from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .antipodality import edge_antipodal_violation, lambda_value, theorem_bound
from .constructions import hypercube, talata
from .norms import RelativeNorm
from .polytope import GeometryError, VertexSet, affinely_independent, in_convex_position

log = logging.getLogger(__name__)

OBJECTIVES = ("max_vertices", "max_lambda_relative")


@dataclass(frozen=True)
class SearchConfig:
    dim: int
    objective: str = "max_vertices"
    iterations: int = 200
    seed: int = 0
    add_weight: float = 1.0
    delete_weight: float = 0.5
    perturb_weight: float = 1.0
    height: int = 4
    restarts: int = 3

    def __post_init__(self):
        obj = self.objective.replace("-", "_").lower()
        if obj == "max_lambda":
            obj = "max_lambda_relative"
        if obj not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        object.__setattr__(self, "objective", obj)
        if self.dim < 2:
            raise ValueError("dim must be at least 2")
        if self.iterations < 1 or self.restarts < 1:
            raise ValueError("iterations and restarts must be positive")
        weights = (self.add_weight, self.delete_weight, self.perturb_weight)
        if min(weights) < 0 or not any(weights):
            raise ValueError("move weights must be nonnegative and not all zero")
        if self.height < 1:
            raise ValueError("height must be positive")


@dataclass
class RestartResult:
    restart: int
    start: str
    best_instance: VertexSet
    best_score: Fraction
    history: list = field(default_factory=list)
    accepted: int = 0
    max_feasible_vertices: int = 0
    inconsistencies: list = field(default_factory=list)


@dataclass
class SearchReport:
    config: SearchConfig
    best_instance: VertexSet
    best_score: Fraction
    best_restart: int
    feasible_history: list
    restarts: list
    inconsistencies: list
    verified: bool

    @property
    def consistent(self) -> bool:
        return not self.inconsistencies

    @property
    def max_feasible_vertices(self) -> int:
        """Largest vertex count among all feasible sets any restart visited."""
        return max(r.max_feasible_vertices for r in self.restarts)


def _feasible(V: VertexSet, d: int) -> bool:
    if len(V) < d + 1 or V.affine_dim != d:
        return False
    if not in_convex_position(V):
        return False
    return edge_antipodal_violation(V) is None


def score(V: VertexSet, objective: str) -> Fraction:
    if objective == "max_vertices":
        return Fraction(len(V))
    return lambda_value(V, RelativeNorm(V)).ratio_squared


def _bound_problems(V: VertexSet, s: Fraction, objective: str, d: int) -> list:
    problems = []
    if len(V) > theorem_bound(d):
        problems.append(f"{len(V)} vertices exceed (d/2+1)^d = {theorem_bound(d)}")
    if objective == "max_lambda_relative" and s > Fraction(d * d, 4):
        problems.append(f"lambda^2 = {s} exceeds (d/2)^2")
    return problems


def _random_coord(rng: random.Random, lo: Fraction, hi: Fraction, height: int) -> Fraction:
    den = rng.randint(1, height)
    a = int(lo * den) - 1
    b = int(hi * den) + 1
    return Fraction(rng.randint(a, b), den)


def _random_simplex(rng: random.Random, d: int, height: int) -> VertexSet:
    while True:
        pts = [tuple(Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(d))
               for _ in range(d + 1)]
        if len(set(pts)) == d + 1 and affinely_independent(pts):
            return VertexSet(tuple(pts))


def _start(restart: int, cfg: SearchConfig, rng: random.Random) -> tuple[str, VertexSet]:
    d = cfg.dim
    if restart == 0:
        return "hypercube", hypercube(d)
    if restart == 1 and d >= 4:
        return "talata", talata(d, Fraction(1, 10))
    return "random_simplex", _random_simplex(rng, d, cfg.height)


def _propose(V: VertexSet, cfg: SearchConfig, rng: random.Random) -> Optional[VertexSet]:
    d = cfg.dim
    pts = list(V.points)
    move = rng.choices(("add", "delete", "perturb"),
                       weights=(cfg.add_weight, cfg.delete_weight, cfg.perturb_weight))[0]
    lo = [min(p[k] for p in pts) for k in range(d)]
    hi = [max(p[k] for p in pts) for k in range(d)]
    if move == "add":
        pts.append(tuple(_random_coord(rng, lo[k], hi[k], cfg.height) for k in range(d)))
    elif move == "delete":
        if len(pts) <= d + 1:
            return None
        pts.pop(rng.randrange(len(pts)))
    else:
        k = rng.randrange(len(pts))
        den = rng.randint(1, cfg.height)
        pts[k] = tuple(Fraction(round(x * den) + rng.randint(-1, 1), den) for x in pts[k])
    if len(set(pts)) != len(pts):
        return None
    try:
        return VertexSet(tuple(pts))
    except GeometryError:
        return None


def run_restart(cfg: SearchConfig, restart: int) -> RestartResult:
    rng = random.Random(f"{cfg.seed}/{restart}")
    d = cfg.dim
    label, current = _start(restart, cfg, rng)
    if not _feasible(current, d):
        raise GeometryError(f"restart seed {label} is not an edge-antipodal {d}-polytope")
    cur_score = score(current, cfg.objective)
    result = RestartResult(restart, label, current, cur_score, [(0, cur_score)],
                           max_feasible_vertices=len(current))
    result.inconsistencies += _bound_problems(current, cur_score, cfg.objective, d)
    for it in range(1, cfg.iterations + 1):
        cand = _propose(current, cfg, rng)
        if cand is None or not _feasible(cand, d):
            continue
        s = score(cand, cfg.objective)
        result.max_feasible_vertices = max(result.max_feasible_vertices, len(cand))
        result.inconsistencies += _bound_problems(cand, s, cfg.objective, d)
        if s < cur_score:
            continue
        current, cur_score = cand, s
        result.accepted += 1
        if s > result.best_score:
            result.best_instance, result.best_score = cand, s
            result.history.append((it, s))
            log.debug("restart %d iteration %d: score %s", restart, it, s)
    return result


def probe(cfg: SearchConfig, workers: int = 1) -> SearchReport:
    """Run every restart and keep the best instance (ties: lowest restart)."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_restart, [cfg] * cfg.restarts, range(cfg.restarts)))
    else:
        results = [run_restart(cfg, r) for r in range(cfg.restarts)]
    best = results[0]
    for res in results[1:]:
        if res.best_score > best.best_score:
            best = res
    verified = _feasible(best.best_instance, cfg.dim)
    inconsistencies = [f"restart {r.restart}: {msg}" for r in results for msg in r.inconsistencies]
    if not verified:
        inconsistencies.append("best instance failed re-verification")
    history = [(best.restart, it, s) for it, s in best.history]
    return SearchReport(cfg, best.best_instance, best.best_score, best.restart, history,
                        results, inconsistencies, verified)


def config_dict(cfg: SearchConfig) -> dict:
    return asdict(cfg)
