import math
from itertools import combinations

import pytest

from genrenet import DataError, Partition, WeightedGraph, louvain, louvain_trace, modularity

from oracles import best_partition_oracle, modularity_oracle
from synthgraphs import random_connected_graph, random_graph


def clique_edges(nodes, w=1.0):
    return {(a, b): w for a, b in combinations(sorted(nodes), 2)}


def two_cliques_with_bridge(size=4, bridge=0.1):
    left = [f"l{i}" for i in range(size)]
    right = [f"r{i}" for i in range(size)]
    edges = clique_edges(left) | clique_edges(right)
    edges[(left[0], right[0])] = bridge
    return WeightedGraph([], edges), [sorted(left), sorted(right)]


def weights_of(graph):
    return {(a, b): w for a, b, w in graph.edges()}


# -- Partition ----------------------------------------------------------------

def test_partition_requires_dense_ids():
    Partition({"a": 0, "b": 1, "c": 0})
    with pytest.raises(DataError):
        Partition({"a": 0, "b": 2})


def test_partition_accessors():
    p = Partition({"a": 1, "b": 0, "c": 1})
    assert p.num_communities == 2
    assert p.community_of("c") == 1
    assert p.communities() == (("b",), ("a", "c"))
    assert p.community_sizes() == (1, 2)


def test_from_communities_rejects_empty_and_overlap():
    with pytest.raises(DataError):
        Partition.from_communities([["a"], []])
    with pytest.raises(DataError):
        Partition.from_communities([["a"], ["a", "b"]])


def test_renumbered_orders_by_smallest_member():
    p = Partition.from_communities([["z", "y"], ["a"], ["m"]])
    assert p.renumbered().communities() == (("a",), ("m",), ("y", "z"))


# -- modularity ---------------------------------------------------------------

def test_single_community_has_zero_modularity():
    g = WeightedGraph([], {("a", "b"): 3.0, ("b", "c"): 1.0})
    q = modularity(g, Partition({"a": 0, "b": 0, "c": 0}))
    assert q == 0.0  # exact: intra == m and (2m/2m)^2 == 1


def test_two_singletons_on_one_edge_is_minus_half():
    g = WeightedGraph([], {("a", "b"): 5.0})
    q = modularity(g, Partition({"a": 0, "b": 1}))
    assert q == -0.5  # exact: 0 - (1/2)^2 twice


def test_two_triangles_split_scores_half_minus_epsilon():
    g = WeightedGraph([], clique_edges("abc") | clique_edges("xyz") | {("a", "x"): 1.0})
    split = Partition.from_communities([["a", "b", "c"], ["x", "y", "z"]])
    # 6/7 intra - 2*(7/14)^2 = 6/7 - 1/2
    assert modularity(g, split) == pytest.approx(6 / 7 - 0.5)


def test_modularity_requires_full_coverage():
    g = WeightedGraph([], {("a", "b"): 1.0})
    with pytest.raises(DataError):
        modularity(g, Partition({"a": 0}))


def test_modularity_zero_edge_graph_rejected():
    g = WeightedGraph(["a", "b"], {})
    with pytest.raises(DataError):
        modularity(g, Partition({"a": 0, "b": 1}))


def test_modularity_matches_definition_oracle_on_random_inputs():
    for seed in range(30):
        g = random_graph(seed, max_nodes=15)
        if g.num_edges == 0:
            continue
        # group nodes round-robin into 3 buckets
        groups = [list(g.nodes)[i::3] for i in range(3)]
        groups = [grp for grp in groups if grp]
        p = Partition.from_communities(groups)
        expected = modularity_oracle(g.nodes, weights_of(g), groups)
        assert modularity(g, p) == pytest.approx(expected, abs=1e-12), f"seed {seed}"


def test_modularity_never_exceeds_one():
    for seed in range(20):
        g = random_graph(seed, max_nodes=12)
        if g.num_edges == 0:
            continue
        p = louvain(g, seed=0)
        assert -0.5 <= modularity(g, p) <= 1.0


# -- louvain ------------------------------------------------------------------

def test_louvain_two_cliques_with_weak_bridge():
    g, blocks = two_cliques_with_bridge()
    p = louvain(g, seed=0)
    assert [list(c) for c in p.communities()] == blocks


def test_louvain_two_triangles_exact():
    g = WeightedGraph([], clique_edges("abc") | clique_edges("xyz") | {("a", "x"): 1.0})
    p, trace = louvain_trace(g, seed=3)
    assert p.communities() == (("a", "b", "c"), ("x", "y", "z"))
    # singleton baseline: -(sum of squared strengths)/(2m)^2 = -34/196
    assert trace[0] == pytest.approx(-34 / 196)
    assert trace[-1] == pytest.approx(6 / 7 - 0.5)


def test_louvain_singleton_baseline_prepended():
    g = WeightedGraph([], {("a", "b"): 1.0})
    p, trace = louvain_trace(g, seed=0)
    singletons = Partition({"a": 0, "b": 1})
    assert trace[0] == pytest.approx(modularity(g, singletons))


def test_louvain_zero_edge_graph_gives_singletons_and_empty_trace():
    g = WeightedGraph(["a", "b", "c"], {})
    p, trace = louvain_trace(g, seed=0)
    assert p.num_communities == 3
    assert trace == ()


def test_louvain_is_deterministic_for_a_seed():
    g = random_graph(7, max_nodes=25)
    assert louvain(g, seed=42).assignment == louvain(g, seed=42).assignment
    ps = {tuple(sorted(louvain(g, seed=s).assignment.items())) for s in range(5)}
    assert len(ps) >= 1  # different seeds may legitimately differ


def test_louvain_trace_is_monotone_nondecreasing():
    for seed in range(40):
        g = random_graph(seed, max_nodes=20)
        if g.num_edges == 0:
            continue
        _, trace = louvain_trace(g, seed=seed)
        assert all(b >= a - 1e-12 for a, b in zip(trace, trace[1:])), f"seed {seed}"


def test_louvain_final_q_matches_reported_partition():
    for seed in range(20):
        g = random_graph(seed + 50, max_nodes=20)
        if g.num_edges == 0:
            continue
        p, trace = louvain_trace(g, seed=1)
        assert modularity(g, p) == pytest.approx(trace[-1], abs=1e-9)


def test_louvain_never_merges_components():
    g = WeightedGraph([], clique_edges("abc") | clique_edges("xyz"))
    p = louvain(g, seed=0)
    assert p.communities() == (("a", "b", "c"), ("x", "y", "z"))


def test_louvain_ids_follow_smallest_member_order():
    g, _ = two_cliques_with_bridge()
    p = louvain(g, seed=9)
    firsts = [c[0] for c in p.communities()]
    assert firsts == sorted(firsts)


def test_louvain_near_optimal_on_small_connected_graphs():
    worst = 0.0
    for seed in range(100):
        g = random_connected_graph(seed, max_nodes=7)
        p = louvain(g, seed=seed)
        best_q, _ = best_partition_oracle(g.nodes, weights_of(g))
        gap = best_q - modularity(g, p)
        worst = max(worst, gap)
        assert gap <= 0.05, f"seed {seed}: gap {gap}"
    assert worst >= 0  # sanity: oracle is an upper bound
