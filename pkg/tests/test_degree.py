import itertools
import math
import random

import pytest

from gtcentrality.degree import (
    DegreeGameSpec,
    degree_game,
    nu_degree_game,
    sv_degree_game,
    sv_g1,
    sv_g2,
    sv_g3,
    sv_g4,
    sv_g5_approx,
)
from gtcentrality.generators import random_graph
from gtcentrality.graph import build_graph
from gtcentrality.oracles import shapley_value

from conftest import max_diff, p3, random_graphs, star


def inv(d):
    return 1.0 / (1.0 + d)


# characteristic functions

def test_g1_value_of_centre():
    assert nu_degree_game(p3(), DegreeGameSpec("g1"), [1]) == 3


def test_g3_large_cutoff_covers_everything():
    G = next(random_graphs(1, 6, 6, seed=1))
    spec = DegreeGameSpec("g3", cutoff=(100.0,) * G.n)
    for C in ([0], [2, 3], list(range(G.n))):
        assert nu_degree_game(G, spec, C) == G.n


def test_g4_value_of_centre():
    assert nu_degree_game(p3(), DegreeGameSpec("g4", f=inv), [1]) == pytest.approx(2.0)


def test_empty_coalition_is_worth_nothing():
    G = next(random_graphs(1, 5, 5, seed=2, weighted=True))
    for spec in (DegreeGameSpec("g1"), DegreeGameSpec("g4", f=inv),
                 DegreeGameSpec("g5", w_cutoff=(1.0,) * G.n)):
        assert nu_degree_game(G, spec, []) == 0


# closed forms on small graphs

def test_g1_isolated_node():
    G = build_graph([], nodes=["a"])
    assert sv_g1(G).scores == (1.0,)


def test_g1_on_path():
    assert sv_g1(p3()).scores == pytest.approx((5 / 6, 4 / 3, 5 / 6))


def test_g1_on_star():
    r = sv_g1(star(4))
    assert r["c"] == pytest.approx(2.2)
    assert r["l0"] == pytest.approx(0.7)
    assert sum(r.scores) == pytest.approx(5.0)


def test_g2_with_unit_threshold_is_g1():
    for G in random_graphs(10, 3, 12, seed=3):
        assert sv_g2(G, (1,) * G.n).scores == sv_g1(G).scores


def test_g2_on_path():
    assert sv_g2(p3(), (2, 2, 2)).scores == pytest.approx((7 / 6, 2 / 3, 7 / 6))


def test_g2_with_maximal_thresholds_scores_one_each():
    G = next(random_graphs(1, 8, 8, seed=4))
    k = tuple(1 + G.degree(v) for v in range(G.n))
    assert sv_g2(G, k).scores == pytest.approx((1.0,) * G.n)


def test_g2_rejects_bad_thresholds():
    with pytest.raises(ValueError):
        sv_g2(p3(), (0, 1, 1))
    with pytest.raises(ValueError):
        sv_g2(p3(), (1, 4, 1))


def test_g3_unit_cutoff_is_g1():
    for G in random_graphs(6, 3, 10, seed=5):
        assert sv_g3(G, (1.0,) * G.n).scores == pytest.approx(sv_g1(G).scores)


def test_g3_on_weighted_path():
    assert sv_g3(p3((1.0, 3.0)), (2.0, 2.0, 2.0)).scores == pytest.approx((1.0, 1.0, 1.0))


def test_g3_cutoff_past_diameter():
    G = next(random_graphs(1, 7, 7, seed=6, weighted=True))
    assert sv_g3(G, (1e6,) * G.n).scores == pytest.approx((1.0,) * G.n)


def test_g4_constant_distance_function():
    G = next(random_graphs(1, 7, 7, seed=7, weighted=True))
    assert sv_g4(G, lambda d: 2.5).scores == pytest.approx((2.5,) * G.n)


def test_g4_on_path():
    assert sv_g4(p3(), inv).scores == pytest.approx((35 / 36, 19 / 18, 35 / 36))


def test_g4_step_function_is_g3():
    for G in random_graphs(6, 3, 10, seed=8, weighted=True):
        cutoff = 2.0
        step = sv_g4(G, lambda d: 1.0 if d <= cutoff else 0.0)
        assert step.scores == pytest.approx(sv_g3(G, (cutoff,) * G.n).scores)


def test_g4_handles_unreachable_nodes():
    G = build_graph([("a", "b")], nodes=["c"])
    exact = shapley_value(degree_game(G, DegreeGameSpec("g4", f=inv)))
    assert max_diff(sv_g4(G, inv).scores, exact) < 1e-12


def test_g5_on_two_nodes():
    G = build_graph([("a", "b", 0.8)])
    assert sv_g5_approx(G, (0.4, 0.4)).scores == pytest.approx((1.0, 1.0))


def test_g5_tiny_threshold_tends_to_g1():
    G = next(random_graphs(1, 8, 8, seed=9, weighted=True))
    got = sv_g5_approx(G, (1e-9,) * G.n)
    assert got.scores == pytest.approx(sv_g1(G).scores)


def test_g5_exact_branch_matches_brute_force():
    rng = random.Random(10)
    for G in random_graphs(8, 3, 8, seed=10, weighted=True):
        W = tuple(rng.uniform(0.3, 4.0) for _ in range(G.n))
        exact = shapley_value(degree_game(G, DegreeGameSpec("g5", w_cutoff=W)))
        assert max_diff(sv_g5_approx(G, W).scores, exact) < 1e-9


def test_g5_normal_branch_is_a_rough_estimate():
    # Exact on K6 would be tested by the default path, so force the normal approximation.
    G = random_graph(6, 1.0, 11, weights=(0.0001, 1.0))
    alpha = [sum(G.weight(u, v) for u in G.adj[v]) for v in range(G.n)]
    W = tuple(0.75 * a for a in alpha)
    exact = shapley_value(degree_game(G, DegreeGameSpec("g5", w_cutoff=W)))
    approx = sv_g5_approx(G, W, exact_degree_limit=0).scores
    assert sum(approx) == pytest.approx(sum(exact), rel=0.25)
    assert max_diff(approx, exact) < 0.5


# oracle equality and efficiency

def specs_for(G, rng):
    yield DegreeGameSpec("g1")
    yield DegreeGameSpec("g2", k=tuple(rng.randint(1, 1 + G.in_degree(v)) for v in range(G.n)))
    yield DegreeGameSpec("g3", cutoff=tuple(rng.uniform(0.5, 4.0) for _ in range(G.n)))
    yield DegreeGameSpec("g4", f=lambda d: math.exp(-d))
    yield DegreeGameSpec("g4", f=inv)


def test_closed_forms_match_oracle():
    rng = random.Random(12)
    graphs = list(random_graphs(50, 2, 10, seed=12, weighted=True))
    graphs += list(random_graphs(10, 2, 8, seed=13, connected=False))
    for G in graphs:
        for spec in specs_for(G, rng):
            exact = shapley_value(degree_game(G, spec))
            assert max_diff(sv_degree_game(G, spec).scores, exact) < 1e-9, spec.game


def test_directed_closed_forms_match_oracle():
    rng = random.Random(14)
    for i in range(10):
        n = rng.randint(3, 8)
        edges = [(str(u), str(v), rng.uniform(0.5, 3.0))
                 for u, v in itertools.permutations(range(n), 2) if rng.random() < 0.35]
        G = build_graph(edges, directed=True, nodes=[str(v) for v in range(n)])
        for spec in specs_for(G, rng):
            exact = shapley_value(degree_game(G, spec))
            assert max_diff(sv_degree_game(G, spec).scores, exact) < 1e-9, spec.game


def test_efficiency_on_larger_graphs():
    rng = random.Random(15)
    for G in random_graphs(5, 30, 50, seed=15, weighted=True):
        for spec in specs_for(G, rng):
            total = sum(sv_degree_game(G, spec).scores)
            assert total == pytest.approx(nu_degree_game(G, spec, range(G.n)), abs=1e-9)


def test_power_from_powerless_neighbours():
    # A star centre outranks a leaf, and a leaf of a small star outranks a leaf of a big one.
    G = build_graph([("c", "x"), ("c", "y"), ("c", "z"), ("x", "p"), ("q", "r")])
    s = sv_g1(G)
    assert s["c"] >= s["x"] >= s["z"]
    assert s["r"] > s["z"]


def test_unknown_game_rejected():
    with pytest.raises(ValueError):
        sv_degree_game(p3(), DegreeGameSpec("g9"))
    with pytest.raises(ValueError):
        sv_degree_game(p3(), DegreeGameSpec("g3", cutoff=(1.0, 1.0)))
