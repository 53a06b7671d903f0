"""Acceptance criteria, runnable from the CLI (``verify-suite``) and pytest.

Each criterion returns a :class:`CriterionResult`; all comparisons are
exact, so no criterion carries a tolerance other than its time limit.
"""
from __future__ import annotations

import contextlib
import io
import json
import random
import sys
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from .antipodality import (
    Status,
    is_antipodal,
    is_edge_antipodal,
    is_subequilateral,
    lambda_value,
    lemma2_check,
    lemma3_check,
    diameter,
    subequilateral_violation,
    theorem3_check_euclidean,
)
from .constructions import (
    cross_polytope,
    hypercube,
    l1_subspace,
    random_polytope,
    simplex,
    talata,
)
from .exact_core import LinearProgram, Status as LpStatus, solve_lp, verify_outcome
from .norms import L1, L2, LINF, RelativeNorm
from .oracles import edges_by_enumeration, is_vertex_by_search, lp_by_vertex_enumeration
from .polytope import VertexSet, edges, is_vertex
from .prober import SearchConfig, probe

RANDOM_CORPUS_SEED = 20240501


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:>2}. {self.title}: {self.detail} ({self.seconds:.1f}s)"


# --------------------------------------------------------------------------
# corpora
# --------------------------------------------------------------------------

def family_corpus(max_dim: int = 5) -> list:
    """(label, V, recommended norm) for every deterministic family."""
    out = []
    for d in range(2, max_dim + 1):
        out.append((f"simplex({d})", simplex(d), L2))
        out.append((f"hypercube({d})", hypercube(d), LINF))
        out.append((f"crosspolytope({d})", cross_polytope(d), L1))
        out.append((f"l1subspace({d})", l1_subspace(d), L1))
    for d, eps in ((4, Fraction(1, 10)), (4, Fraction(1, 3)), (5, Fraction(1, 10)), (5, Fraction(1, 2))):
        if d <= max_dim:
            V = talata(d, eps)
            out.append((f"talata({d},{eps})", V, RelativeNorm(V)))
    return out


@lru_cache(maxsize=4)
def random_corpus(count: int = 500, seed: int = RANDOM_CORPUS_SEED) -> tuple:
    """Seeded random vertex sets, d in {2,3,4}, at most 12 points drawn.

    Norms cycle through l1, linf and the relative norm of the instance.
    """
    rng = random.Random(seed)
    out = []
    for k in range(count):
        d = 2 + k % 3
        m = rng.randint(d + 1, 12)
        V = random_polytope(d, m, seed=rng.randrange(2**32), height=5)
        norm = (L1, LINF, RelativeNorm(V))[(k // 3) % 3]
        out.append((f"random#{k}(d={d},m={m})", V, norm))
    return tuple(out)


# --------------------------------------------------------------------------
# criteria
# --------------------------------------------------------------------------

def criterion_1(quick: bool = False) -> CriterionResult:
    problems, slowest = [], 0.0
    for d in range(2, 9):
        t0 = time.perf_counter()
        V = l1_subspace(d)
        apex = (d, d + 1)
        for i, j in combinations(V.labels, 2):
            want = 4 if (i, j) == apex else 2 * d
            if L1.distance(V[i], V[j]) != want:
                problems.append(f"d={d} pair {(i, j)}")
        if not is_subequilateral(V, L1):
            problems.append(f"d={d} not subequilateral")
        lam = lambda_value(V, L1)
        if lam.ratio_squared != Fraction(d * d, 4):
            problems.append(f"d={d} lambda^2={lam.ratio_squared}")
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if dt >= 5:
            problems.append(f"d={d} took {dt:.1f}s")
    return CriterionResult(1, "l1-subspace example d=2..8", not problems,
                           "; ".join(problems) or f"distances, subequilateral, lambda=d/2; slowest {slowest:.2f}s")


def criterion_2(quick: bool = False) -> CriterionResult:
    t0 = time.perf_counter()
    V = talata(4, Fraction(1, 10))
    P = RelativeNorm(V)
    o, e4, p = V[0], V[4], V[5]
    checks = {
        "edge_antipodal": is_edge_antipodal(V),
        "not_antipodal": not is_antipodal(V),
        "|e4-o|_P=1": P.distance(e4, o) == 1,
        "|p-o|_P=5/7": P.distance(p, o) == Fraction(5, 7),
        "lambda_P>=7/5": lambda_value(V, P).ratio_squared >= Fraction(49, 25),
    }
    dt = time.perf_counter() - t0
    checks["under_10s"] = dt < 10
    failed = [k for k, ok in checks.items() if not ok]
    return CriterionResult(2, "Talata d=4 eps=1/10", not failed,
                           ", ".join(failed) or "edge-antipodal, not antipodal, |e4-o|_P=1, |p-o|_P=5/7")


def _corpus(quick: bool):
    fam = family_corpus(4 if quick else 5)
    rand = random_corpus(60 if quick else 500)
    return fam + list(rand)


def criterion_3(quick: bool = False) -> CriterionResult:
    bad, n_ea = [], 0
    for label, V, _ in _corpus(quick):
        if not is_edge_antipodal(V):
            continue
        n_ea += 1
        P = RelativeNorm(V)
        diam, _ = diameter(V, P)
        if diam != 1 or subequilateral_violation(V, P) is not None:
            bad.append(label)
    return CriterionResult(3, "edge-antipodal => subequilateral, diameter 1 in ||.||_P", not bad,
                           f"{n_ea} edge-antipodal instances, exceptions: {bad or 'none'}")


def criterion_4(quick: bool = False) -> CriterionResult:
    bad = []
    corpus = random_corpus(60 if quick else 500)
    for label, V, n in corpus:
        if lemma2_check(V, n).status is not Status.HOLDS:
            bad.append(label)
    tight = []
    for d in (2, 3, 4):
        rep = lemma2_check(hypercube(d), LINF)
        if rep.status is Status.HOLDS and rep.values["tight"]:
            tight.append(d)
    ok = not bad and tight == [2, 3, 4]
    return CriterionResult(4, "|V| <= (lambda+1)^d on random sets", ok,
                           f"{len(corpus)} instances, failures: {bad or 'none'}; "
                           f"Linf hypercube equality at d={tight}")


def criterion_5(quick: bool = False) -> CriterionResult:
    bad, count = [], 0
    for label, V, n in _corpus(quick):
        norms = [n]
        if is_edge_antipodal(V) and not isinstance(n, RelativeNorm):
            norms.append(RelativeNorm(V))
        for norm in norms:
            if V.affine_dim < 2 or not is_subequilateral(V, norm):
                continue
            count += 1
            if lemma3_check(V, norm).status is not Status.HOLDS:
                bad.append(f"{label}/{norm.name}")
    not_tight = []
    for d in range(2, 9):
        rep = lemma3_check(l1_subspace(d), L1)
        if rep.status is not Status.HOLDS or not rep.values["tight"]:
            not_tight.append(d)
    ok = not bad and not not_tight
    return CriterionResult(5, "lambda <= d/2 on subequilateral instances", ok,
                           f"{count} subequilateral (instance, norm) pairs, failures: {bad or 'none'}; "
                           f"l1-subspace equality fails at: {not_tight or 'none'}")


def _run_cli(argv) -> int:
    from .cli import main

    with contextlib.redirect_stderr(io.StringIO()):
        return main(argv)


def criterion_6(quick: bool = False) -> CriterionResult:
    problems = []
    with tempfile.TemporaryDirectory() as tmp:
        for d in (4, 6, 8):
            vf = Path(tmp, f"l1_{d}.json")
            cf = Path(tmp, f"cert_{d}.json")
            if _run_cli(["generate", "l1subspace", "--dim", str(d), "-o", str(vf)]) != 0:
                problems.append(f"d={d} generate failed")
                continue
            code = _run_cli(["certify", str(vf), "--pair", str(d), str(d + 1), "--norm", "l1", "-o", str(cf)])
            cert = json.loads(cf.read_text())["certificate"] if cf.exists() else None
            if code != 0 or cert is None:
                problems.append(f"d={d} certify exit {code}")
                continue
            lb, dist = cert["lower_bound"]["value"], cert["distance"]["value"]
            doms = [Fraction(cert[s]["dominant_coefficient"]) for s in ("x_side", "y_side")]
            if lb != "4" or dist != "4" or not cert["tight"]:
                problems.append(f"d={d} lower_bound={lb} distance={dist}")
            if any(c < Fraction(1, d) for c in doms):
                problems.append(f"d={d} dominant coefficients {doms}")
    return CriterionResult(6, "certificate tightness on the l1-subspace apex pair", not problems,
                           "; ".join(problems) or "lower_bound = distance = 4 for d=4,6,8; lambda_d >= 1/d")


def criterion_7(quick: bool = False) -> CriterionResult:
    problems = []
    for d in range(2, 6):
        rep = theorem3_check_euclidean(simplex(d))
        if rep.status is not Status.HOLDS:
            problems.append(f"simplex({d}) {rep.status.value}")
    if theorem3_check_euclidean(hypercube(3)).status is Status.VIOLATED:
        problems.append("cube violated")
    n_sub = 0
    for label, V, _ in random_corpus(60 if quick else 500):
        rep = theorem3_check_euclidean(V)
        if rep.status is Status.VIOLATED:
            problems.append(label)
        elif rep.status is Status.HOLDS:
            n_sub += 1
    with tempfile.TemporaryDirectory() as tmp:
        vf = Path(tmp, "simplex.json")
        _run_cli(["generate", "simplex", "--dim", "3", "-o", str(vf)])
        with contextlib.redirect_stdout(io.StringIO()):
            code = _run_cli(["analyze", str(vf), "--norm", "l2"])
        if code != 0:
            problems.append(f"analyze simplex exit {code}")
    return CriterionResult(7, "Euclidean subequilateral => equilateral simplex", not problems,
                           "; ".join(problems) or f"simplices d=2..5 hold, {n_sub} random L2-subequilateral, no violations")


def criterion_8(quick: bool = False) -> CriterionResult:
    problems, notes = [], []
    runs = ((2, 300 if quick else 2000, 4), (3, 100 if quick else 1000, 8))
    for d, iters, cap in runs:
        t0 = time.perf_counter()
        rep = probe(SearchConfig(dim=d, objective="max_vertices", iterations=iters, seed=7, restarts=3))
        dt = time.perf_counter() - t0
        if rep.best_score != cap:
            problems.append(f"d={d} best {rep.best_score} != {cap}")
        if rep.max_feasible_vertices > cap:
            problems.append(f"d={d} saw {rep.max_feasible_vertices} vertices")
        if not rep.consistent or not rep.verified:
            problems.append(f"d={d} inconsistent: {rep.inconsistencies}")
        if dt >= 300:
            problems.append(f"d={d} took {dt:.0f}s")
        notes.append(f"d={d}: best {rep.best_score}, max seen {rep.max_feasible_vertices}, {dt:.0f}s")
    return CriterionResult(8, "prober sharpness at d=2,3", not problems, "; ".join(problems or notes))


def criterion_9(quick: bool = False) -> CriterionResult:
    rng = random.Random(99)
    n_inst = 30 if quick else 100
    edge_bad = vert_bad = 0
    for _ in range(n_inst):
        V = random_polytope(3, rng.randint(4, 8), seed=rng.randrange(2**32), height=4)
        if set(edges(V)) != edges_by_enumeration(V.points):
            edge_bad += 1
    for _ in range(n_inst):
        d = rng.randint(1, 3)
        pts = set()
        m = rng.randint(2, 7)
        while len(pts) < m:
            pts.add(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(d)))
        V = VertexSet(tuple(sorted(pts)))
        for i in V.labels:
            if is_vertex(V, i) != is_vertex_by_search(V.points, i):
                vert_bad += 1
    ok = edge_bad == 0 and vert_bad == 0
    return CriterionResult(9, "edges and vertices match brute-force oracles", ok,
                           f"{n_inst} polytopes: {edge_bad} edge mismatches; {n_inst} point sets: {vert_bad} vertex mismatches")


def random_lp(rng: random.Random) -> LinearProgram:
    n = rng.randint(1, 4)
    m = rng.randint(1, 6)
    rows = []
    for _ in range(m):
        rows.append((tuple(rng.randint(-3, 3) for _ in range(n)), rng.choice(("<=", ">=", "=", "<=", ">=")),
                     rng.randint(-5, 5)))
    lower = tuple(0 if rng.random() < 0.4 else None for _ in range(n))
    upper = tuple(rng.randint(0, 4) if rng.random() < 0.2 and lower[j] is not None else None for j in range(n))
    return LinearProgram(tuple(rng.randint(-3, 3) for _ in range(n)), tuple(rows),
                         rng.choice(("min", "max")), lower=lower, upper=upper)


def criterion_10(quick: bool = False) -> CriterionResult:
    rng = random.Random(2024)
    count = 200 if quick else 1000
    mismatch = bad_cert = 0
    tally = {s.value: 0 for s in LpStatus}
    for _ in range(count):
        lp = random_lp(rng)
        out = solve_lp(lp)
        status, value = lp_by_vertex_enumeration(lp)
        tally[out.status.value] += 1
        if out.status.value != status or (status == "optimal" and out.objective_value != value):
            mismatch += 1
        if not verify_outcome(lp, out):
            bad_cert += 1
    ok = mismatch == 0 and bad_cert == 0
    return CriterionResult(10, "LP kernel vs vertex enumeration", ok,
                           f"{count} LPs {tally}: {mismatch} mismatches, {bad_cert} bad certificates")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


def run_criterion(number: int, quick: bool = False) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[number](quick)
    res.seconds = time.perf_counter() - t0
    return res


def run_suite(quick: bool = False, only=None, stream=sys.stdout) -> list[CriterionResult]:
    results = []
    for number in sorted(only or CRITERIA):
        res = run_criterion(number, quick)
        print(res.line(), file=stream, flush=True)
        results.append(res)
    return results
