from __future__ import annotations

import json
from itertools import product

import networkx as nx
import pytest
from hypothesis import given, strategies as st

import cubforge.search as search_mod
from cubforge.graph import LabeledGraph, complete_bipartite
from cubforge.search import (_Problem, _solve_a_splits, collinear_candidate, concurrent_candidate,
                             connected_for_all_subsets, find_minimal_24, minimal24_certificate,
                             refute_23, search_bipartitions)
from cubforge.sizeable import REFERENCE_ARITHMETIC_9, arithmetic_graph, pg_incidence, verify_sizeable

from strategies import bipartite_graphs


def nx_connected(g: LabeledGraph, verts) -> bool:
    h = nx.Graph()
    h.add_nodes_from(verts)
    h.add_edges_from(e for e in g.edges if e[0] in verts and e[1] in verts)
    return len(verts) > 0 and nx.is_connected(h)


def brute_splits(g: LabeledGraph):
    A, B = g.vertices_on_side("A"), g.vertices_on_side("B")
    hits = []
    for a_bits in product((0, 1), repeat=len(A) - 1):
        A0 = [A[0]] + [a for a, b in zip(A[1:], a_bits) if b]
        A1 = [a for a in A if a not in A0]
        for b_bits in product((0, 1), repeat=len(B) - 1):
            B0 = [B[0]] + [x for x, b in zip(B[1:], b_bits) if b]
            B1 = [x for x in B if x not in B0]
            if not A1 or not B1:
                continue
            if all(nx_connected(g, set(X) | set(Y)) for X in (A0, A1) for Y in (B0, B1)):
                a0 = sum(1 << A.index(v) for v in A0)
                b0 = sum(1 << B.index(v) for v in B0)
                hits.append((a0, b0))
    return sorted(hits)


@given(bipartite_graphs(max_side=4, connected=True))
def test_connectivity_kernel_matches_networkx(g):
    A, B = g.vertices_on_side("A"), g.vertices_on_side("B")
    prob = _Problem.from_graph(g, A, B)
    for a_mask in range(1, 1 << len(A)):
        got = connected_for_all_subsets(a_mask, prob.nbrB, prob.nbrA, len(B))
        Xs = {A[i] for i in range(len(A)) if a_mask >> i & 1}
        for S in range(1 << len(B)):
            Ys = {B[i] for i in range(len(B)) if S >> i & 1}
            assert bool(got[S]) == (bool(Ys) and nx_connected(g, Xs | Ys))


@given(bipartite_graphs(max_side=4, connected=True))
def test_split_solver_matches_brute_force(g):
    A, B = g.vertices_on_side("A"), g.vertices_on_side("B")
    if len(A) < 2 or len(B) < 2:
        return
    prob = _Problem.from_graph(g, A, B)
    masks = [m for m in range(1, (1 << len(A)) - 1) if m & 1]
    hits, _, _ = _solve_a_splits(prob, masks, None)
    assert sorted(hits) == brute_splits(g)


def test_rejections_carry_witnesses():
    r = search_bipartitions(complete_bipartite(2, 2))
    assert r.partitions == [] and r.reason == "graph contains a 4-cycle" and r.witness == [0, 2, 1, 3]
    r = search_bipartitions(LabeledGraph(3, ((0, 2), (0, 2)), ("A", "A", "B"), crossing=True))
    assert r.reason == "graph has parallel edges"
    r = search_bipartitions(LabeledGraph(3, ((0, 2),), ("A", "A", "B"), crossing=True))
    assert r.reason == "a side has fewer than two vertices"


def test_search_finds_arithmetic_partitions():
    g, p = arithmetic_graph(REFERENCE_ARITHMETIC_9)
    g = LabeledGraph(g.n, g.edges, g.side, None, g.names, crossing=True)
    r = search_bipartitions(g, limit=3)
    assert len(r.partitions) == 3
    assert all(verify_sizeable(g, q).verdict for q in r)


@pytest.fixture(scope="module")
def pg24():
    pg = pg_incidence(3)
    sub, _ = pg.delete_vertices([0, 13 + 1])
    return sub


def test_incident_deletion_partition_count(pg24):
    r = search_bipartitions(pg24)
    assert r.complete and len(r.partitions) == 108
    assert r.states == 2047 * 2047


def test_non_incident_deletion_has_none():
    pg = pg_incidence(3)
    line = next(l for l in range(13, 26) if l not in pg.simple_adjacency[0])
    sub, _ = pg.delete_vertices([0, line])
    assert search_bipartitions(sub).partitions == []


def test_pg3_itself_has_none():
    assert search_bipartitions(pg_incidence(3)).partitions == []


def test_results_independent_of_workers(pg24):
    one = search_bipartitions(pg24, workers=1).to_json()
    two = search_bipartitions(pg24, workers=2, chunk=100).to_json()
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)


def test_checkpoint_resume(pg24, tmp_path, monkeypatch):
    monkeypatch.setattr(search_mod, "CHECKPOINT_EVERY", 1)
    path = tmp_path / "ckpt.json"
    full = search_bipartitions(pg24, checkpoint=path)
    state = json.loads(path.read_text())
    masks = [m for m in range(1, (1 << 12) - 1) if m & 1]
    assert state["next"] == len(masks) == 2047
    # rewind to the middle and resume
    keep = 1000
    state["next"] = keep
    state["hits"] = [h for h in state["hits"] if masks.index(h[0]) < keep]
    path.write_text(json.dumps(state))
    resumed = search_bipartitions(pg24, checkpoint=path)
    assert [p.to_json() for p in resumed] == [p.to_json() for p in full]


def test_checkpoint_for_other_graph_is_ignored(pg24, tmp_path):
    path = tmp_path / "ckpt.json"
    path.write_text(json.dumps({"digest": "other", "limit": None, "next": 2047, "hits": [[1, 1]],
                                "states": 0, "pruned": 0}))
    r = search_bipartitions(pg24, checkpoint=path)
    assert len(r.partitions) == 108


def test_minimal24():
    m = find_minimal_24()
    assert m.graph.n == 24 and m.incident
    assert (m.deleted_point, m.deleted_line) == (0, 1)
    assert m.induced.m == 45 and m.graph.m == 44 and m.removed_edges == [(9, 19)]
    cert = minimal24_certificate(m)
    assert cert["verify"]["verdict"] and cert["girth"] == 6
    # still a subgraph of the incidence graph
    pg = pg_incidence(3)
    _, old = pg.delete_vertices([0, 14])
    assert all(old[v] in pg.simple_adjacency[old[u]] for u, v in m.graph.edges)


def test_twenty_three_vertex_candidates():
    pg = pg_incidence(3)
    for sub, _ in (collinear_candidate(pg), concurrent_candidate(pg)):
        assert sub.n == 23 and sub.m == 42
    r = refute_23()
    assert r["refuted"]
    assert sorted(map(sorted, (c["sides"] for c in r["candidates"]))) == [[11, 12], [11, 12]]
