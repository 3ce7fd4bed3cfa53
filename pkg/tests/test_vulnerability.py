import csv
import io
import itertools

import networkx as nx
import pytest

from gtcentrality.betweenness import SizeDistribution, semivalue_betweenness, svb
from gtcentrality.graph import build_graph, classic_centrality
from gtcentrality.vulnerability import (
    CSV_FIELDS,
    FailureModel,
    ProtectionStrategy,
    csv_row,
    directional_experiment,
    igm,
    interval_pd,
    simulate_failures,
    summarize,
    write_rows,
)

from conftest import max_diff, p3, random_graphs, random_scale_free


def complete(n):
    return build_graph([(str(u), str(v)) for u, v in itertools.combinations(range(n), 2)])


# inverse geodesic measure

def test_igm_of_path():
    assert igm(p3()) == pytest.approx(5.0)


def test_igm_of_isolated_nodes():
    assert igm(build_graph([], nodes=["a", "b"])) == 0


@pytest.mark.parametrize("n", [2, 4, 7])
def test_igm_of_complete_graph(n):
    assert igm(complete(n)) == pytest.approx(n * (n - 1))


def test_igm_matches_networkx_efficiency():
    for G in random_graphs(8, 3, 20, seed=1, connected=False):
        H = nx.Graph()
        H.add_nodes_from(range(G.n))
        H.add_edges_from((u, v) for u, v, _ in G.edges())
        expected = nx.global_efficiency(H) * G.n * (G.n - 1)
        assert igm(G) == pytest.approx(expected)


def test_igm_after_removal():
    assert igm(p3(), [1]) == 0
    assert igm(p3(), [0]) == pytest.approx(2.0)


def test_removal_never_helps():
    for G in random_graphs(6, 4, 15, seed=2):
        base = igm(G)
        for v in range(G.n):
            assert igm(G, [v]) <= base + 1e-12


# interval size laws

def test_interval_of_singletons():
    pd = interval_pd(1, 2, 5)
    assert pd.pd == (1.0, 0.0, 0.0, 0.0, 0.0)


def test_full_interval_is_uniform():
    assert interval_pd(1, 6, 5).pd == pytest.approx(SizeDistribution.uniform(5).pd)


@pytest.mark.parametrize("a, b", [(0, 2), (3, 3), (2, 7)])
def test_bad_intervals(a, b):
    with pytest.raises(ValueError):
        interval_pd(a, b, 5)


def test_singleton_interval_ranks_like_betweenness():
    for G in random_graphs(6, 4, 20, seed=3):
        semi = semivalue_betweenness(G, interval_pd(1, 2, G.n))
        classic = classic_centrality(G, "betweenness")
        assert max_diff(semi.scores, classic.scores) < 1e-9


def test_full_interval_is_shapley():
    for G in random_graphs(4, 4, 15, seed=4):
        semi = semivalue_betweenness(G, interval_pd(1, G.n + 1, G.n))
        assert max_diff(semi.scores, svb(G).scores) < 1e-9


# protection strategies

def test_strategy_survival_rules():
    assert ProtectionStrategy("full").survival(9, 10) == 1.0
    assert ProtectionStrategy("rank_inverse_square").survival(3, 10) == pytest.approx(1 / 9)
    top = ProtectionStrategy("top_fraction", 0.2)
    assert [top.survival(r, 10) for r in (1, 2, 3)] == [1.0, 1.0, 0.0]
    assert top.name == "top:0.2"


def test_strategy_validation():
    with pytest.raises(ValueError):
        ProtectionStrategy("random")
    with pytest.raises(ValueError):
        ProtectionStrategy("top_fraction", 0.0)


# simulation

def sample_graph():
    return next(random_scale_free(1, 25, 25, seed=5))


def test_full_protection_keeps_baseline_exactly():
    G = sample_graph()
    report = simulate_failures(G, svb(G), ProtectionStrategy("full"), FailureModel(1, G.n, 50, seed=1))
    assert report.mean == igm(G)
    assert report.stdev == 0.0
    assert report.ci_low == report.ci_high == igm(G)


def test_losing_every_node_leaves_nothing():
    G = sample_graph()
    nobody = ProtectionStrategy("top_fraction", 1e-9)
    report = simulate_failures(G, svb(G), nobody, FailureModel(G.n, G.n + 1, 20, seed=2))
    assert report.values == (0.0,) * 20


def test_same_seed_same_trials():
    G = sample_graph()
    model = FailureModel(1, G.n, 40, seed=3)
    strategy = ProtectionStrategy()
    a = simulate_failures(G, svb(G), strategy, model)
    b = simulate_failures(G, svb(G), strategy, model)
    assert a == b
    c = simulate_failures(G, svb(G), strategy, FailureModel(1, G.n, 40, seed=4))
    assert c.values != a.values


def test_protection_never_hurts():
    # Shared randomness: a node that survives unprotected survives when protected.
    G = sample_graph()
    model = FailureModel(1, G.n, 60, seed=6)
    ranking = svb(G)
    none = simulate_failures(G, ranking, ProtectionStrategy("top_fraction", 1e-9), model)
    some = simulate_failures(G, ranking, ProtectionStrategy("top_fraction", 0.2), model)
    assert all(x <= y + 1e-12 for x, y in zip(none.values, some.values))


def test_model_validation():
    G = p3()
    with pytest.raises(ValueError):
        simulate_failures(G, svb(G), ProtectionStrategy(), FailureModel(0, 2))
    with pytest.raises(ValueError):
        simulate_failures(G, svb(G), ProtectionStrategy(), FailureModel(1, 2, trials=0))
    with pytest.raises(ValueError):
        simulate_failures(G, svb(build_graph([("x", "y")])), ProtectionStrategy(), FailureModel(1, 2))


def test_summary_interval():
    report = summarize([1.0, 2.0, 3.0, 4.0])
    assert report.mean == 2.5
    assert report.ci_low < 2.5 < report.ci_high
    # 75% two-sided normal interval: z is about 1.1503.
    assert report.ci_high - report.mean == pytest.approx(1.1503 * report.stdev / 2, rel=1e-3)


def test_csv_rows():
    report = summarize([1.0, 3.0])
    out = io.StringIO()
    write_rows([csv_row((1, 60), ProtectionStrategy(), "svb", report, 7)], out)
    rows = list(csv.DictReader(io.StringIO(out.getvalue())))
    assert tuple(rows[0]) == CSV_FIELDS
    assert rows[0]["interval"] == "[1,60)"
    assert float(rows[0]["mean_igm"]) == 2.0
    assert rows[0]["seed"] == "7"


# the directional comparison

@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="mean gap is indistinguishable from zero under 1/r^2 protection; "
                                       "see the decisions ledger")
def test_semivalue_ranking_protects_better():
    outcome = directional_experiment()
    assert outcome.semivalue_ahead


def test_directional_experiment_small_run_is_deterministic():
    a = directional_experiment(graphs=2, n=20, k=2, trials=20, seed=9)
    b = directional_experiment(graphs=2, n=20, k=2, trials=20, seed=9)
    assert a == b and len(a.differences) == 2
