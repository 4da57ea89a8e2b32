from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from cubforge.branched import (EulerParams, bipartite_edge_coloring, branching_locus, build_labeling,
                               cage_graph, cage_polynomial, check_two_full, choose_q, commutator_exponent,
                               compose, cycle_type, euler_cell_census, euler_formula_branched, in_product,
                               inverse, is_full_cycle, locus_counts_formula, loop4_holonomy_check, power,
                               product_k, retract_graph, validate_locus)
from cubforge.cubes import CellTriple
from cubforge.graph import GraphError, LabeledGraph, cycle_graph

from strategies import two_full_graphs


@pytest.fixture(scope="module")
def cage5():
    g = cage_graph(5)
    return g, product_k(g, g, g), branching_locus(g, g, g)


def test_cage_graph():
    g = cage_graph(7)
    assert g.n == 2 and g.m == 6 and g.degrees() == [6, 6]
    for bad in (4, 3, 2):
        with pytest.raises(GraphError):
            cage_graph(bad)


def test_two_full_checks():
    rep = check_two_full(cage_graph(5))
    assert rep["two_full"] and rep["valence_ok"] and rep["min_valence"] == 4
    rep = check_two_full(cycle_graph(6))
    assert rep["two_full"] and not rep["valence_ok"]
    assert not check_two_full(cycle_graph(5))["two_full"]
    two = LabeledGraph(4, ((0, 1), (2, 3)), ("A", "B", "A", "B"), crossing=True)
    assert check_two_full(two)["failures"] == ["not connected"]


def test_cage_locus(cage5):
    g, K, L = cage5
    assert K.census() == (8, 48, 96, 64)
    assert L.counts() == (6, 12) == locus_counts_formula(g, g, g)
    assert L.dimension() == 1 and L.overlaps() == []
    rep = validate_locus(K, L)
    assert rep["verdict"] and rep["cells_checked"] == 18


@settings(max_examples=25)
@given(st.lists(two_full_graphs(max_side=2, min_valence=4, max_extra=2), min_size=3, max_size=3))
def test_locus_counts_and_validity(gs):
    K = product_k(*gs)
    L = branching_locus(*gs)
    assert L.counts() == locus_counts_formula(*gs)
    assert all(K.has_cell(c) for c in L.cells)
    assert validate_locus(K, L)["verdict"]


def test_slice_locus_has_disconnected_complement(cage5):
    g, K, _ = cage5
    slice_cells = [c for c in K.cubes() if c.coords[2] == ("v", 0)]
    rep = validate_locus(K, slice_cells)
    assert not rep["verdict"]
    assert {f["condition"] for f in rep["failures"]} == {"Lk(c,K) minus L is disconnected"}


def test_non_full_locus_is_caught(cage5):
    g, K, _ = cage5
    # two edges at a vertex without the square they span
    L = [CellTriple((("v", 0), ("v", 0), ("v", 0))), CellTriple((("e", 0), ("v", 0), ("v", 0))),
         CellTriple((("v", 0), ("e", 0), ("v", 0))), CellTriple((("v", 1), ("v", 0), ("v", 0))),
         CellTriple((("v", 0), ("v", 1), ("v", 0)))]
    rep = validate_locus(K, L)
    assert not rep["verdict"]
    assert any(f["condition"] == "Lk(c,L) not full" for f in rep["failures"])


def test_retract_graph_of_cages():
    g = cage_graph(5)
    r = retract_graph(g, g)
    assert (r.n, r.m) == (3, 8)
    assert in_product(r, g, g)


@given(two_full_graphs(max_side=4, max_extra=10))
def test_edge_colouring_is_proper(g):
    col = bipartite_edge_coloring(g)
    delta = max(g.degrees())
    assert all(1 <= c <= delta for c in col)
    for v in range(g.n):
        seen = [col[eid] for eid, _ in g.adjacency[v]]
        assert len(seen) == len(set(seen))


def test_edge_colouring_rejects_odd_cycles():
    with pytest.raises(GraphError):
        bipartite_edge_coloring(cycle_graph(5))


def test_permutation_helpers():
    a = (1, 2, 0)
    b = (1, 0, 2)
    assert compose(a, inverse(a)) == (0, 1, 2)
    assert compose(a, b) == (2, 1, 0)  # a(b(x))
    assert power(a, 3) == (0, 1, 2) and power(a, -1) == inverse(a)
    assert cycle_type(b) == [2, 1] and is_full_cycle(a) and not is_full_cycle(b)


def test_labeling_for_cages():
    g = cage_graph(5)
    s = build_labeling(g, g)
    assert (s.q, s.l) == (5, 2) and choose_q(g, g) == 5
    assert sorted(s.alpha_exp) == [1, 2, 3, 4]
    s7 = build_labeling(g, g, q=7)
    assert s7.l == 3 and compose(s7.beta, s7.alpha, inverse(s7.beta)) == power(s7.alpha, 3)
    for bad in (4, 3):
        with pytest.raises(GraphError):
            build_labeling(g, g, q=bad)


def test_commutator_exponent():
    assert commutator_exponent(1, 1, 2, 5) == 1
    assert commutator_exponent(4, 1, 2, 5) == 0
    assert commutator_exponent(0, 3, 2, 5) == 0 == commutator_exponent(2, 0, 2, 5)


@given(st.integers(0, 6), st.integers(0, 6), st.sampled_from([5, 7, 11]))
def test_commutator_exponent_matches_permutations(m, n, q):
    g = cage_graph(5)
    s = build_labeling(g, g, q=q)
    a, b = s.alpha, s.beta
    word = compose(power(b, m), power(a, n), power(b, -m), power(a, -n))
    assert word == power(a, commutator_exponent(m, n, s.l, q))


def test_cage_holonomy():
    g = cage_graph(5)
    rep = loop4_holonomy_check(g, g, build_labeling(g, g))
    assert rep["verdict"] and rep["loops"] == 36 and rep["removed_vertices"] == 1
    assert "0" not in rep["alpha_powers"] and sum(rep["alpha_powers"].values()) == 36


@settings(max_examples=25)
@given(two_full_graphs(max_side=3, min_valence=4, max_extra=6),
       two_full_graphs(max_side=3, min_valence=4, max_extra=6))
def test_holonomy_on_random_two_full_graphs(gi, gj):
    rep = loop4_holonomy_check(gi, gj, build_labeling(gi, gj))
    assert rep["verdict"], rep["failures"][:1]


def test_cage_euler():
    for p in (5, 7, 11):
        params = EulerParams.cage(p)
        assert euler_formula_branched(params) == cage_polynomial(p)
        assert euler_formula_branched(params, corrected=True) == cage_polynomial(p)
    assert cage_polynomial(5) == -400
    g = cage_graph(5)
    c = euler_cell_census(g, g, g, 5, 5, 5)
    assert c["census"] == -400 and c["agree"]


def test_euler_params_validate():
    with pytest.raises(ValueError):
        EulerParams((2, 2, 2), (1, 1, 1), (1, 1, 0), (4, 4, 4), 5, 5, 5)


def test_census_isolates_the_reference_one_cell_term():
    d = LabeledGraph(4, ((0, 2), (0, 2), (0, 3), (0, 3), (1, 2), (1, 2), (1, 3), (1, 3)),
                     ("A", "A", "B", "B"), crossing=True)
    g = cage_graph(5)
    c = euler_cell_census(d, g, g, 5, 5, 5)
    assert (c["reference_formula"], c["census"], c["corrected_formula"]) == (-4800, -800, -800)
    assert c["resolution"].startswith("discrepancy isolated")
    c1 = euler_cell_census(d, g, g, 1, 1, 1)
    assert c1["census"] == c1["K_euler"] == -16 and c1["reference_formula"] == -48


@settings(max_examples=25)
@given(st.lists(two_full_graphs(max_side=2, max_extra=3), min_size=3, max_size=3),
       st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_census_matches_corrected_formula(gs, q12, q23, q31):
    c = euler_cell_census(*gs, q12, q23, q31)
    assert c["census"] == c["corrected_formula"]
    assert c["resolution"] != "unexplained discrepancy"
    # with trivial labelings the cover is K itself
    one = euler_cell_census(*gs, 1, 1, 1)
    assert one["census"] == one["K_euler"]
    k = 1
    for g in gs:
        k *= g.n - g.m
    assert one["K_euler"] == k
