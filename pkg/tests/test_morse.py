from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from cubforge.acceptance import x_instance
from cubforge.complex_x import classify_vertex, link_groups
from cubforge.cubes import full_product
from cubforge.graph import GraphError, LabeledGraph, cycle_graph
from cubforge.homology import reduced_homology
from cubforge.morse import (EdgeOrientation, ascending_link, descending_link, in_out_degrees,
                            join_structure, orient_k, orient_k_factor, orient_two_full, q_sets)

from strategies import two_full_graphs


@pytest.fixture(scope="module")
def min24_x():
    return x_instance("min24")


def test_orientation_rule_on_factors(min24_x):
    spec, _ = min24_x
    for f in spec.factors:
        heads = orient_k_factor(f)
        for (u, v), h in zip(f.edges, heads):
            a, b = (u, v) if f.side[u] == "A" else (v, u)
            assert h == (b if f.part[a] == f.part[b] else a)


def test_orientation_needs_tags():
    with pytest.raises(GraphError):
        orient_k_factor(cycle_graph(4))


def test_ascending_and_descending_split_the_link(min24_x):
    spec, x = min24_x
    o = orient_k(spec)
    rng = random.Random(3)
    for v in rng.sample(sorted(x.vertices), 200):
        link = x.vertex_link(v)
        asc, desc = ascending_link(x, o, v), descending_link(x, o, v)
        assert asc.n + desc.n == link.n
        assert sum(len(s) for s in q_sets(spec, o, x, v)) == asc.n
        vt = classify_vertex(spec, v)
        for half in (asc, desc):
            js = join_structure(half, link_groups(spec, v), vt.is_type1)
            assert js["is_join"] and js["simply_connected"]
            assert reduced_homology(half).vanishes((0, 1))


def test_type1_ascending_link_is_a_join_of_three_point_sets(min24_x):
    spec, x = min24_x
    o = orient_k(spec)
    v = next(v for v in sorted(x.vertices) if classify_vertex(spec, v).value == "Type1-A")
    asc = ascending_link(x, o, v)
    sizes = [len(s) for s in q_sets(spec, o, x, v)]
    want = (sizes[0] - 1) * (sizes[1] - 1) * (sizes[2] - 1)
    assert reduced_homology(asc).ranks == (0, 0, want)


def test_two_full_orientation_needs_valence_four():
    with pytest.raises(GraphError):
        orient_two_full(cycle_graph(6))


@given(two_full_graphs(max_side=4, min_valence=4, max_extra=10))
def test_two_full_orientation_balances(g):
    o = orient_two_full(g)
    for i, out in in_out_degrees(g, o):
        assert i >= 2 and out >= 2


@given(st.lists(two_full_graphs(max_side=2, min_valence=4, max_extra=3), min_size=3, max_size=3))
def test_links_in_full_products_are_joins_of_out_sets(fs):
    # every ascending link in a product of graphs is a join of three discrete sets
    X = full_product(fs, multigraph_ok=True)
    o = EdgeOrientation(tuple(orient_two_full(f).heads[0] for f in fs))
    outs = [in_out_degrees(f, EdgeOrientation((o.heads[i],))) for i, f in enumerate(fs)]
    for v in list(X.vertices)[:6]:
        h = reduced_homology(ascending_link(X, o, v))
        want = 1
        for i in range(3):
            want *= outs[i][v[i]][1] - 1
        assert h.ranks == (0, 0, want)


def test_non_tagged_multigraph_orientation():
    g = LabeledGraph(2, ((0, 1),) * 4)
    o = orient_two_full(g)
    assert sorted(in_out_degrees(g, o)) == [(2, 2), (2, 2)]
