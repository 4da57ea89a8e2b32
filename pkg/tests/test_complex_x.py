from __future__ import annotations

import random

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cubforge.acceptance import minimal24, x_instance
from cubforge.complex_x import (LINK_TABLE, TYPE2, VertexType, XSpec, build_x, classify_vertex,
                                euler_formula_family, euler_formula_x, expected_link, link_groups,
                                table_counts, vertex_census, x_report)
from cubforge.cubes import euler_direct
from cubforge.graph import GraphError, LabeledGraph, complete_bipartite
from cubforge.sizeable import SizeablePartition, verify_sizeable


def extend(g: LabeledGraph, p: SizeablePartition, rng: random.Random, steps: int):
    """Add vertices joined to one vertex of each opposite part, keeping the graph sizeable."""
    parts = {k: list(getattr(p, k)) for k in ("A0", "A1", "B0", "B1")}
    edges = list(g.edges)
    n = g.n
    adj = [set(s) for s in g.simple_adjacency]
    for _ in range(steps):
        side = rng.choice("AB")
        other = "B" if side == "A" else "A"
        for _ in range(100):
            x = rng.choice(parts[other + "0"])
            y = rng.choice(parts[other + "1"])
            if not adj[x] & adj[y]:
                break
        else:
            continue
        parts[side + str(rng.randint(0, 1))].append(n)
        adj.append({x, y})
        adj[x].add(n)
        adj[y].add(n)
        edges += [(x, n), (y, n)]
        n += 1
    g2 = LabeledGraph(n, tuple(edges))
    p2 = SizeablePartition(parts["A0"], parts["A1"], parts["B0"], parts["B1"])
    assert verify_sizeable(g2, p2).verdict
    return g2, p2


def vertex_count_formula(spec: XSpec) -> int:
    s = spec.sizes()
    a, b, e = s["a"], s["b"], s["e"]
    return a[0] * a[1] * a[2] + b[0] * b[1] * b[2] + sum(e[g] * (a[(g + 2) % 3] + b[(g + 1) % 3])
                                                        for g in range(3))


@pytest.fixture(scope="module")
def min24_x():
    return x_instance("min24")


def test_min24_vertex_census(min24_x):
    spec, x = min24_x
    assert len(x.vertices) == 6624 == vertex_count_formula(spec)
    assert vertex_census(spec, x) == {"Type1-A": 1728, "Type1-B": 1728, "Type2-G1": 1056,
                                      "Type2-G2": 1056, "Type2-G3": 1056}


def test_min24_euler(min24_x):
    spec, x = min24_x
    rep = x_report(spec, x)
    assert rep["agree"] and rep["euler_direct"] == -2000


def test_xspec_rejects_non_sizeable_graphs():
    g = complete_bipartite(2, 2)
    p = SizeablePartition([0], [1], [2], [3])
    with pytest.raises(GraphError):
        XSpec.triple(g, p)


def test_factor_layout(min24_x):
    spec, _ = min24_x
    for i, f in enumerate(spec.factors):
        na = len(spec.partitions[i].A)
        nb = len(spec.partitions[(i - 1) % 3].B)
        assert f.n == na + nb and f.m == na * nb
        assert spec.global_label(i, 0)[0] == i
        assert spec.global_label(i, f.n - 1)[0] == (i - 1) % 3


def test_every_vertex_has_a_type_and_links_match_table(min24_x):
    spec, x = min24_x
    rng = random.Random(1)
    sample = rng.sample(sorted(x.vertices), 300)
    key = lambda t: spec.global_label(t[0], t[2])
    for v in sample:
        vt = classify_vertex(spec, v, x)
        link = x.vertex_link(v)
        assert link.relabeled(key) == expected_link(spec, v).relabeled(lambda t: t)
        assert link.counts() == table_counts(spec, v)
        groups = link_groups(spec, v)
        assert sorted(c for g in groups for c in g) == [0, 1, 2]
        assert len(groups) == (3 if vt.is_type1 else 2)


def test_non_vertex_is_rejected(min24_x):
    spec, x = min24_x
    missing = next(v for v in ((i, j, k) for i in range(24) for j in range(24) for k in range(24))
                   if v not in x.vertices)
    with pytest.raises(GraphError):
        classify_vertex(spec, missing, x)


def test_link_table_covers_all_classes():
    assert set(LINK_TABLE) == {"AAA", "AAB", "ABA", "ABB", "BAA", "BAB", "BBA", "BBB"}
    assert [t.value for t in TYPE2] == ["Type2-G1", "Type2-G2", "Type2-G3"]
    assert VertexType.TYPE1_A.is_type1 and not TYPE2[0].is_type1


def _poly():
    a = sp.symbols("a1:4")
    b = sp.symbols("b1:4")
    e = sp.symbols("e1:4")
    return a, b, e, sp.expand(euler_formula_x(a, b, e))


def test_formula_has_27_monomials_and_reduces_symmetrically():
    a, b, e, f = _poly()
    assert len(sp.Add.make_args(f)) == 27
    x, y = sp.symbols("x y")
    sym = sp.expand(f.subs({**{s: x for s in a + b}, **{s: y for s in e}}))
    assert sym == sp.expand(2 * x**3 - 9 * x**2 * y + 6 * x * y**2 - y**3 + 6 * x * y - 3 * y**2)


def test_quoted_family_value_differs_from_the_formula():
    # a = b = 4p, e = 16p substituted into the closed form gives -128 p^2 (p + 3)
    p = sp.symbols("p")
    val = sp.factor(euler_formula_x((4 * p,) * 3, (4 * p,) * 3, (16 * p,) * 3))
    assert sp.expand(val - (-128 * p**2 * (p + 3))) == 0
    assert euler_formula_x((20,) * 3, (20,) * 3, (80,) * 3) == -25600
    assert euler_formula_family(5) == -17600


def test_mixed_triple_formula_matches_count():
    from cubforge.search import search_bipartitions
    from cubforge.sizeable import REFERENCE_ARITHMETIC_9, arithmetic_graph

    m = minimal24()
    g9, p9 = arithmetic_graph(REFERENCE_ARITHMETIC_9)
    other = search_bipartitions(m.induced, limit=6).partitions[5]
    spec = XSpec((m.graph, g9, m.induced), (m.partition, p9, other))
    x = build_x(spec)
    assert len(x.vertices) == vertex_count_formula(spec)
    rep = x_report(spec, x)
    assert rep["agree"] and rep["euler_direct"] == -5070


@settings(max_examples=8)
@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(0, 3))
def test_formula_matches_count_with_unequal_sides(seed, s1, s2):
    rng = random.Random(seed)
    m = minimal24()
    g1, p1 = extend(m.graph, m.partition, rng, s1)
    g3, p3 = extend(m.graph, m.partition, rng, s2)
    spec = XSpec((g1, m.graph, g3), (p1, m.partition, p3))
    x = build_x(spec)
    assert len(x.vertices) == vertex_count_formula(spec)
    s = spec.sizes()
    assert euler_direct(x) == euler_formula_x(s["a"], s["b"], s["e"])
