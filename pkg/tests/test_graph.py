from __future__ import annotations

import json
import math
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cubforge.graph import (GraphError, LabeledGraph, bipartition, complete_bipartite, components,
                            contains_four_cycle, cycle_graph, from_json, girth, is_complete_bipartite,
                            is_connected, load_graph, parallel_pair, parse_edge_list, path_graph,
                            to_dot, to_edge_list, to_json)

from strategies import bipartite_graphs


def brute_four_cycle(g: LabeledGraph) -> bool:
    adj = g.simple_adjacency
    for a, b, c, d in permutations(range(g.n), 4):
        if b in adj[a] and c in adj[b] and d in adj[c] and a in adj[d]:
            return True
    return False


def nx_graph(g: LabeledGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_k22_has_four_cycle_witness():
    w = contains_four_cycle(complete_bipartite(2, 2))
    assert w is not None and len(w) == 4
    assert w.to_json() == [0, 2, 1, 3]


def test_cycles_and_paths():
    assert contains_four_cycle(cycle_graph(6)) is None
    assert contains_four_cycle(cycle_graph(4)) is not None
    assert girth(cycle_graph(6)) == 6
    assert girth(path_graph(5)) == math.inf
    assert girth(LabeledGraph(2, ((0, 1), (0, 1)))) == 2


def test_empty_and_single_vertex():
    g = LabeledGraph(0)
    assert components(g) == []
    assert not is_connected(g)
    assert is_connected(LabeledGraph(1))


def test_rejects_loops_and_bad_tags():
    with pytest.raises(GraphError):
        LabeledGraph(2, ((0, 0),))
    with pytest.raises(GraphError):
        LabeledGraph(2, ((0, 2),))
    with pytest.raises(GraphError):
        LabeledGraph(2, ((0, 1),), side=("A", "A"), crossing=True)
    with pytest.raises(GraphError):
        LabeledGraph(2, (), part=(0, 2))


def test_parallel_edges_kept_with_multiplicity():
    g = LabeledGraph(2, ((1, 0), (0, 1)))
    assert g.m == 2 and g.edges == ((0, 1), (0, 1))
    assert parallel_pair(g) == (0, 1)
    assert not g.is_simple() and g.simple().m == 1


@given(bipartite_graphs(max_side=4))
def test_four_cycle_matches_brute_force(g):
    w = contains_four_cycle(g)
    assert (w is not None) == brute_four_cycle(g)
    if w is not None:
        for u, v in w.edges():
            assert v in g.simple_adjacency[u]


@given(bipartite_graphs(max_side=5))
def test_girth_and_components_match_networkx(g):
    h = nx_graph(g)
    assert girth(g) == nx.girth(h)
    assert sorted(map(sorted, nx.connected_components(h))) == components(g)


@given(bipartite_graphs(max_side=5))
def test_bipartition_is_proper(g):
    col = bipartition(g)
    assert col is not None
    assert all(col[u] != col[v] for u, v in g.edges)


def test_odd_cycle_has_no_bipartition():
    assert bipartition(cycle_graph(5)) is None


def test_complete_bipartite_check():
    g = complete_bipartite(2, 3)
    assert is_complete_bipartite(g, [0, 1], [2, 3, 4])
    assert not is_complete_bipartite(LabeledGraph(5, g.edges[1:]), [0, 1], [2, 3, 4])


@given(bipartite_graphs(max_side=4))
def test_json_round_trip(g):
    h = from_json(json.loads(json.dumps(to_json(g))))
    assert h == g


def test_edge_list_round_trip_with_names():
    g = parse_edge_list("a x\nb x  # comment\n\nb y\n")
    assert g.n == 4 and g.m == 3
    assert parse_edge_list(to_edge_list(g)).edges == g.edges


def test_parse_error_reports_line(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("0 1\n1 2 3\n")
    with pytest.raises(GraphError, match=r"g.txt:2"):
        load_graph(p)
    q = tmp_path / "g.json"
    q.write_text('{"vertices": [\n{"id": 0},\n]}')
    with pytest.raises(GraphError, match=r"g.json:3:1"):
        load_graph(q)


def test_json_requires_dense_ids():
    with pytest.raises(GraphError):
        from_json({"vertices": [{"id": 1}], "edges": []})


def test_dot_export_mentions_every_edge():
    g = complete_bipartite(1, 2)
    dot = to_dot(g)
    assert dot.startswith("graph G {") and "0 -- 1;" in dot and "0 -- 2;" in dot


def test_induced_and_delete():
    g = cycle_graph(6)
    h, old = g.delete_vertices([0])
    assert h.n == 5 and old == [1, 2, 3, 4, 5]
    assert girth(h) == math.inf and is_connected(h)
