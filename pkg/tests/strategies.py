from __future__ import annotations

from hypothesis import strategies as st

from cubforge.graph import LabeledGraph, contains_four_cycle


@st.composite
def bipartite_graphs(draw, max_side: int = 5, c4_free: bool = False, connected: bool = False):
    """Simple bipartite graphs with side tags; optionally 4-cycle free."""
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    edges: list[tuple[int, int]] = []
    if connected:
        # random spanning tree first
        order = draw(st.permutations(range(a + b)))
        seen = [order[0]]
        for v in order[1:]:
            cands = [u for u in seen if (u < a) != (v < a)]
            if not cands:
                continue
            u = draw(st.sampled_from(cands))
            edges.append((min(u, v), max(u, v)))
            seen.append(v)
    for e in chosen:
        if e in edges:
            continue
        edges.append(e)
        if c4_free and contains_four_cycle(LabeledGraph(a + b, tuple(edges))) is not None:
            edges.pop()
    side = ("A",) * a + ("B",) * b
    return LabeledGraph(a + b, tuple(edges), side, None, None, crossing=True)


@st.composite
def two_full_graphs(draw, max_side: int = 3, min_valence: int = 0, max_extra: int = 6):
    """Connected bipartite multigraphs with A/B tags; parallel edges allowed."""
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    edges = [(0, a)]
    for v in range(1, a):
        edges.append((v, a + draw(st.integers(0, b - 1))))
    for w in range(1, b):
        edges.append((draw(st.integers(0, a - 1)), a + w))
    for _ in range(draw(st.integers(0, max_extra))):
        edges.append((draw(st.integers(0, a - 1)), a + draw(st.integers(0, b - 1))))
    deg = [0] * (a + b)
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    # top up low-valence vertices with parallel edges to a neighbour
    for v in range(a + b):
        while deg[v] < min_valence:
            u = a if v < a else 0
            edges.append((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
    side = ("A",) * a + ("B",) * b
    return LabeledGraph(a + b, tuple(edges), side, None, None, crossing=True)
