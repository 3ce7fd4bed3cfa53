import itertools
import math

import networkx as nx
import pytest

from gtcentrality.fixtures import f1, f3
from gtcentrality.graph import (
    INF,
    CommunityStructure,
    GraphFormatError,
    PathCountPolynomial,
    articulation_points,
    build_graph,
    classic_centrality,
    connected_induced_subgraphs,
    group_centrality,
    is_connected_mask,
    mask_of,
    modularity,
    parse_communities,
    parse_edge_list,
    parse_node_weights,
    path_betweenness,
    path_count_polynomials,
    sssp,
)

from conftest import p3, path_graph, random_graphs, star, triangle


def to_nx(G):
    H = nx.DiGraph() if G.directed else nx.Graph()
    H.add_nodes_from(range(G.n))
    for u, v, w in G.edges():
        H.add_edge(u, v, weight=w)
    return H


# build_graph / parsing

def test_path_of_three_nodes():
    G = parse_edge_list("a b\nb c\n")
    assert (G.n, G.num_edges) == (3, 2)
    assert G.labels == ("a", "b", "c")


def test_sample_network_size():
    G = f1()
    assert (G.n, G.num_edges) == (13, 15)


def test_indices_follow_first_appearance():
    G = parse_edge_list("x y\n# comment\n\nz x\n")
    assert [G.index(label) for label in "xyz"] == [0, 1, 2]


@pytest.mark.parametrize("text, line", [
    ("a b 2.5\nb c 0\n", 2),
    ("a b\nb a\n", 2),
    ("a a\n", 1),
    ("a b\nb c 1.0\n", 2),
    ("a b -1\n", 1),
    ("a b c d\n", 1),
    ("a b x\n", 1),
])
def test_malformed_edge_lists_report_their_line(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_directed_graph_keeps_both_arcs_distinct():
    G = parse_edge_list("a b\nb a\n", directed=True)
    assert G.num_edges == 2
    assert G.adj[0] == (1,) and G.radj[0] == (1,)


def test_node_weight_file():
    assert parse_node_weights("a 2\nb 0.5 # half\n") == {"a": 2.0, "b": 0.5}
    with pytest.raises(GraphFormatError):
        parse_node_weights("a 1\na 2\n")
    G = parse_edge_list("a b\n", node_weights={"a": 3.0})
    assert G.node_weight == (3.0, 0.0)


def test_community_file():
    G = parse_edge_list("a b\nb c\nc d\n")
    CS = parse_communities("a x\nb x\nc y\nd y\n", G)
    assert CS.m == 2 and CS.assignment == (0, 0, 1, 1)
    with pytest.raises(GraphFormatError):
        parse_communities("a x\nb x\nc y\n", G)
    with pytest.raises(GraphFormatError):
        parse_communities("a x\na y\nb x\nc y\nd y\n", G)


def test_community_structure_rejects_gaps():
    with pytest.raises(GraphFormatError):
        CommunityStructure.from_groups(3, [[0], [1]])
    with pytest.raises(GraphFormatError):
        CommunityStructure.from_groups(2, [[0, 1], [1]])


def test_without_nodes_keeps_labels():
    G = f1().without_nodes([0])
    assert "v1" not in G.labels and G.n == 12
    assert G.num_edges == 15 - 5


# sssp

def test_unweighted_path_counts_nodes():
    r = sssp(p3(), 0, "unweighted")
    assert r.dist == [1, 2, 3]
    assert r.sigma == [1, 1, 1]


def test_weighted_path_sums_weights():
    r = sssp(p3((1.0, 3.0)), 0, "weighted")
    assert r.dist == [0.0, 1.0, 4.0]


def test_sample_network_v1_to_v3_paths():
    # Frozen from exhaustive path enumeration below: v1 reaches v3 through
    # v2 (via v6, v7 or v8) and then v9 or v10.
    G = f1()
    r = sssp(G, G.index("v1"), "unweighted")
    v3 = G.index("v3")
    assert r.dist[v3] == 5
    assert r.sigma[v3] == 6
    H = to_nx(G)
    assert len(list(nx.all_shortest_paths(H, G.index("v1"), v3))) == 6


def test_unreachable_nodes_have_infinite_distance():
    G = build_graph([("a", "b")], nodes=["c"])
    r = sssp(G, G.index("a"))
    assert r.dist[G.index("c")] == INF and r.sigma[G.index("c")] == 0


@pytest.mark.parametrize("G", list(random_graphs(10, 4, 12, seed=3, weighted=True, connected=False)))
def test_sigma_matches_networkx(G):
    H = to_nx(G)
    for s in range(G.n):
        r = sssp(G, s, "weighted")
        for t in range(G.n):
            if t == s:
                continue
            if r.dist[t] == INF:
                assert not nx.has_path(H, s, t)
                continue
            assert math.isclose(r.dist[t], nx.dijkstra_path_length(H, s, t), rel_tol=1e-12)
            assert r.sigma[t] == len(list(nx.all_shortest_paths(H, s, t, weight="weight")))
            assert r.sigma[t] == sum(r.sigma[p] for p in r.preds[t])


# path-count polynomials

def test_polynomial_of_source():
    T = path_count_polynomials(p3((1.0, 1.0)), 0)
    assert T[0] == PathCountPolynomial([0, 1])
    assert T[2] == PathCountPolynomial([0, 0, 0, 1])


def test_polynomial_join_through_middle():
    G = p3((1.0, 1.0))
    T_ab = path_count_polynomials(G, 0)[1]
    T_bc = path_count_polynomials(G, 1)[2]
    assert T_ab.join(T_bc) == PathCountPolynomial([0, 0, 0, 1])


def test_polynomial_arithmetic():
    a = PathCountPolynomial([0, 1, 2])
    b = PathCountPolynomial([0, 0, 1])
    assert (a + b) == PathCountPolynomial([0, 1, 3])
    assert a.shift(1) == PathCountPolynomial([0, 0, 1, 2])
    assert (a * b) == PathCountPolynomial([0, 0, 0, 1, 2])
    assert a.total() == 3
    a.reset()
    assert a.total() == 0


def test_polynomials_count_paths_by_size():
    # Two 3-node routes and one 4-node route of equal weight from s to t.
    G = build_graph([("s", "a", 2), ("a", "t", 2), ("s", "b", 2), ("b", "t", 2),
                     ("s", "c", 1), ("c", "d", 2), ("d", "t", 1)])
    T = path_count_polynomials(G, 0)[G.index("t")]
    assert T[3] == 2 and T[4] == 1 and T.total() == 3


# classic and group centralities

def test_sample_network_classic_values():
    G = f1()
    assert classic_centrality(G, "degree")["v1"] == 5
    assert classic_centrality(G, "degree")["v2"] == 5
    assert classic_centrality(G, "closeness")["v8"] == 22
    closeness = classic_centrality(G, "closeness")
    assert min(closeness.scores) == closeness["v8"]
    assert classic_centrality(G, "betweenness")["v2"] == 32


@pytest.mark.parametrize("G", list(random_graphs(12, 3, 12, seed=5, connected=False)))
def test_classic_centralities_match_networkx(G):
    H = to_nx(G)
    bc = nx.betweenness_centrality(H, normalized=False)
    ours = classic_centrality(G, "betweenness").scores
    assert max(abs(ours[v] - bc[v]) for v in range(G.n)) < 1e-9
    close = classic_centrality(G, "closeness").scores
    for v in range(G.n):
        lengths = nx.single_source_shortest_path_length(H, v)
        assert close[v] == sum(lengths.values())


def test_directed_betweenness_matches_networkx():
    G = parse_edge_list("a b\nb c\nc a\nb d\nd c\n", directed=True)
    bc = nx.betweenness_centrality(to_nx(G), normalized=False)
    assert classic_centrality(G, "betweenness").scores == pytest.approx([bc[v] for v in range(G.n)])


def test_group_degree_of_hubs():
    G = f1()
    assert group_centrality(G, "degree", G.indices(["v1", "v2"])) == 7


def test_group_betweenness_of_linked_hubs():
    G = f3()
    assert group_centrality(G, "betweenness", G.indices(["v2", "v3"])) == 28


def test_group_centrality_rejects_empty_group():
    with pytest.raises(ValueError):
        group_centrality(p3(), "degree", [])


@pytest.mark.parametrize("kind", ["degree", "closeness", "betweenness"])
def test_singleton_group_equals_classic(kind):
    for G in random_graphs(8, 3, 10, seed=7):
        classic = classic_centrality(G, kind).scores
        for v in range(G.n):
            group = group_centrality(G, kind, [v])
            assert group == pytest.approx(classic[v], abs=1e-9)


def brute_group_betweenness(G, C):
    H = to_nx(G)
    members = set(C)
    total = 0.0
    outside = [v for v in range(G.n) if v not in members]
    for s, t in itertools.combinations(outside, 2):
        if not nx.has_path(H, s, t):
            continue
        paths = list(nx.all_shortest_paths(H, s, t, weight="weight" if G.weighted else None))
        total += sum(1 for p in paths if members & set(p)) / len(paths)
    return total


def test_group_betweenness_matches_path_enumeration():
    for G in random_graphs(6, 4, 8, seed=11, weighted=True):
        for size in (1, 2, 3):
            for C in itertools.islice(itertools.combinations(range(G.n), size), 6):
                assert group_centrality(G, "betweenness", C) == pytest.approx(brute_group_betweenness(G, C))


# path betweenness

def test_path_betweenness_on_p4():
    G = path_graph(4)
    assert path_betweenness(G, G.indices(["2", "3"])) == 1
    assert path_betweenness(G, G.indices(["3", "2"])) == 1
    assert path_betweenness(p3(), [0, 1, 2]) == 0


def test_path_betweenness_rejects_repeats():
    with pytest.raises(ValueError):
        path_betweenness(p3(), [0, 0])


def test_single_node_path_betweenness_is_betweenness():
    for G in random_graphs(5, 4, 9, seed=13):
        bc = classic_centrality(G, "betweenness").scores
        for v in range(G.n):
            assert path_betweenness(G, [v]) == pytest.approx(bc[v])


# modularity

def test_modularity_values():
    G = triangle()
    assert modularity(G, CommunityStructure.from_groups(3, [[0, 1, 2]])) == pytest.approx(0.0)
    assert modularity(G, CommunityStructure.from_groups(3, [[0], [1], [2]])) == pytest.approx(-1 / 3)
    two = parse_edge_list("a b\nb c\nc a\nd e\ne f\nf d\n")
    assert modularity(two, CommunityStructure.from_groups(6, [[0, 1, 2], [3, 4, 5]])) == pytest.approx(0.5)


def test_modularity_needs_edges():
    G = build_graph([], nodes=["a"])
    with pytest.raises(ValueError):
        modularity(G, CommunityStructure.from_groups(1, [[0]]))


# articulation points and connected subgraphs

def test_articulation_points_small():
    assert articulation_points(p3(), [0, 1, 2]) == {1}
    assert articulation_points(triangle(), [0, 1, 2]) == set()
    assert articulation_points(p3(), [0, 1]) == set()
    with pytest.raises(ValueError):
        articulation_points(p3(), [0, 2])


def test_sample_network_cut_vertices():
    G = f1()
    cut = articulation_points(G, range(G.n))
    assert G.index("v11") in cut
    expected = set(nx.articulation_points(to_nx(G)))
    assert cut == expected


@pytest.mark.parametrize("count, expected", [(triangle(), 7), (p3(), 6), (star(3), 11)])
def test_connected_subgraph_counts(count, expected):
    assert connected_induced_subgraphs(count) == expected


def test_connected_subgraphs_visited_once():
    for G in random_graphs(6, 3, 11, seed=17, connected=False):
        seen = []
        total = connected_induced_subgraphs(G, seen.append)
        assert total == len(seen) == len(set(seen))
        nbr = G.neighbor_masks()
        brute = {m for m in range(1, 1 << G.n) if is_connected_mask(m, nbr)}
        assert {mask_of(s) for s in seen} == brute
