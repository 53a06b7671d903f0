from fractions import Fraction as F

import pytest

from edgepoly.antipodality import is_edge_antipodal, theorem_bound
from edgepoly.prober import SearchConfig, probe, run_restart


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(dim=2, iterations=0)
    with pytest.raises(ValueError):
        SearchConfig(dim=2, add_weight=0, delete_weight=0, perturb_weight=0)
    with pytest.raises(ValueError):
        SearchConfig(dim=2, objective="min-volume")
    assert SearchConfig(dim=3, objective="max-lambda").objective == "max_lambda_relative"


def test_plane_reaches_four_and_stops():
    rep = probe(SearchConfig(dim=2, iterations=150, seed=7, restarts=3))
    assert rep.best_score == 4
    assert rep.max_feasible_vertices <= 4
    assert rep.consistent and rep.verified
    assert is_edge_antipodal(rep.best_instance)


def test_space_never_exceeds_eight():
    rep = probe(SearchConfig(dim=3, iterations=60, seed=7, restarts=2))
    assert rep.best_score == 8
    assert rep.max_feasible_vertices <= 8 < theorem_bound(3)
    assert rep.consistent


def test_lambda_objective_stays_below_limit():
    rep = probe(SearchConfig(dim=4, objective="max-lambda", iterations=30, seed=7, restarts=2))
    assert F(1) <= rep.best_score < F(9, 4)
    assert rep.consistent and is_edge_antipodal(rep.best_instance)


def test_replay_is_identical():
    cfg = SearchConfig(dim=2, iterations=80, seed=3, restarts=2)
    a, b = probe(cfg), probe(cfg)
    assert a.best_instance == b.best_instance
    assert a.feasible_history == b.feasible_history
    assert [r.accepted for r in a.restarts] == [r.accepted for r in b.restarts]


def test_parallel_matches_serial():
    cfg = SearchConfig(dim=2, iterations=40, seed=1, restarts=2)
    a, b = probe(cfg), probe(cfg, workers=2)
    assert a.best_instance == b.best_instance and a.best_restart == b.best_restart


def test_restart_history_is_increasing():
    res = run_restart(SearchConfig(dim=2, iterations=100, seed=9, restarts=3), 2)
    scores = [s for _, s in res.history]
    assert scores == sorted(scores) and len(set(scores)) == len(scores)
