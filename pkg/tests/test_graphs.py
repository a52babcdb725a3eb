import pytest
from hypothesis import given, strategies as st

from genrenet import COASSIGNMENT_COUNT, USER_COUNT, DataError, WeightedGraph
from genrenet.graphs import canonical_edge

from synthgraphs import random_graph


def small_edge_sets():
    names = st.sampled_from([f"n{i}" for i in range(8)])
    pair = st.tuples(names, names).filter(lambda p: p[0] != p[1])
    return st.dictionaries(pair.map(lambda p: canonical_edge(*p)),
                           st.integers(1, 9).map(float), max_size=16)


def test_nodes_are_sorted_and_deduplicated():
    g = WeightedGraph(["c", "a", "b", "a"], {("c", "a"): 2.0})
    assert g.nodes == ("a", "b", "c")
    assert g.num_nodes == 3


def test_edge_endpoints_become_nodes():
    g = WeightedGraph([], {("b", "a"): 1.0})
    assert g.nodes == ("a", "b")
    assert g.has_edge("a", "b") and g.has_edge("b", "a")
    assert g.weight("b", "a") == 1.0


def test_self_loop_rejected():
    with pytest.raises(DataError):
        WeightedGraph(["a"], {("a", "a"): 1.0})


def test_nonpositive_weight_rejected():
    with pytest.raises(DataError):
        WeightedGraph([], {("a", "b"): 0.0})
    with pytest.raises(DataError):
        WeightedGraph([], {("a", "b"): -3.0})


def test_conflicting_duplicate_edge_rejected():
    with pytest.raises(DataError):
        WeightedGraph([], [("a", "b", 1.0), ("b", "a", 2.0)])
    # agreeing duplicates collapse
    g = WeightedGraph([], [("a", "b", 2.0), ("b", "a", 2.0)])
    assert g.num_edges == 1


def test_triple_iterable_form_matches_mapping_form():
    from_triples = WeightedGraph([], [("a", "b", 1.5), ("b", "c", 2.0)])
    from_mapping = WeightedGraph([], {("a", "b"): 1.5, ("c", "b"): 2.0})
    assert from_triples == from_mapping


def test_degree_strength_adjacency():
    g = WeightedGraph(["d"], {("a", "b"): 2.0, ("a", "c"): 3.5})
    assert g.degree("a") == 2 and g.degree("d") == 0
    assert g.strength("a") == 5.5
    assert g.total_weight == 5.5
    assert dict(g.adjacency("a")) == {"b": 2.0, "c": 3.5}
    assert sorted(g.neighbors("a")) == ["b", "c"]


def test_semantics_tag_carried_and_compared():
    g1 = WeightedGraph([], {("a", "b"): 1.0}, semantics=USER_COUNT)
    g2 = WeightedGraph([], {("a", "b"): 1.0}, semantics=COASSIGNMENT_COUNT)
    assert g1 != g2
    assert g1.semantics == USER_COUNT


def test_subgraph_keeps_internal_edges_only():
    g = WeightedGraph([], {("a", "b"): 1.0, ("b", "c"): 2.0, ("c", "d"): 3.0})
    sub = g.subgraph(["b", "c", "d"])
    assert sub.nodes == ("b", "c", "d")
    assert dict((e[:2], e[2]) for e in sub.edges()) == {("b", "c"): 2.0, ("c", "d"): 3.0}


def test_subgraph_unknown_member_rejected():
    g = WeightedGraph(["a"], {})
    with pytest.raises(DataError):
        g.subgraph(["a", "zz"])


def test_connected_components_ordering():
    g = WeightedGraph(["z"], {("b", "a"): 1.0, ("d", "c"): 1.0})
    assert g.connected_components() == [["a", "b"], ["c", "d"], ["z"]]


@given(small_edge_sets())
def test_edges_iterate_in_canonical_sorted_order(edges):
    g = WeightedGraph([], edges)
    listed = [(a, b) for a, b, _ in g.edges()]
    assert listed == sorted(listed)
    assert all(a < b for a, b in listed)


@given(small_edge_sets())
def test_components_partition_nodes(edges):
    g = WeightedGraph([], edges)
    comps = g.connected_components()
    flat = [n for comp in comps for n in comp]
    assert sorted(flat) == list(g.nodes)
    assert len(set(flat)) == len(flat)


@given(small_edge_sets())
def test_strength_sums_to_twice_total_weight(edges):
    g = WeightedGraph([], edges)
    assert sum(g.strength(n) for n in g.nodes) == pytest.approx(2 * g.total_weight)


def test_equality_and_hash_follow_content():
    a = random_graph(1, max_nodes=12)
    b = WeightedGraph(a.nodes, {(x, y): w for x, y, w in a.edges()})
    assert a == b and hash(a) == hash(b)
    c = WeightedGraph(a.nodes + ("extra",), {(x, y): w for x, y, w in a.edges()})
    assert a != c
