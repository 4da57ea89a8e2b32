"""The complex X(Γ1, Γ2, Γ3) inside K13 x K21 x K32.

Coordinates are 0-based here.  Coordinate ``i`` ranges over ``A_i`` followed
by ``B_{i-1}`` so every vertex of every Γ sits in exactly one coordinate:
``A_g`` in coordinate ``g`` and ``B_g`` in coordinate ``g+1`` (mod 3).
"""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import product

from .cubes import LinkComplex, ProductSubcomplex, discrete, full_subcomplex, graph_complex, join
from .graph import GraphError, LabeledGraph, girth, is_complete_bipartite
from .sizeable import SizeablePartition, verify_sizeable


class VertexType(str, enum.Enum):
    TYPE1_A = "Type1-A"
    TYPE1_B = "Type1-B"
    TYPE2_G1 = "Type2-G1"
    TYPE2_G2 = "Type2-G2"
    TYPE2_G3 = "Type2-G3"

    @property
    def is_type1(self) -> bool:
        return self in (VertexType.TYPE1_A, VertexType.TYPE1_B)


TYPE2 = (VertexType.TYPE2_G1, VertexType.TYPE2_G2, VertexType.TYPE2_G3)


@dataclass
class XSpec:
    graphs: tuple[LabeledGraph, LabeledGraph, LabeledGraph]
    partitions: tuple[SizeablePartition, SizeablePartition, SizeablePartition]
    check: bool = True
    factors: tuple[LabeledGraph, ...] = field(init=False)
    # factor vertex -> (graph index, Γ vertex); and the inverse
    labels: tuple[tuple[tuple[int, int], ...], ...] = field(init=False)
    where: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.graphs = tuple(self.graphs)
        self.partitions = tuple(self.partitions)
        if self.check:
            for i, (g, p) in enumerate(zip(self.graphs, self.partitions)):
                rep = verify_sizeable(g, p)
                if not rep.verdict:
                    raise GraphError(f"graph {i + 1} is not sizeable: {rep.failures[0]}")
        factors, labels, where = [], [], {}
        for i in range(3):
            gb = (i - 1) % 3
            A = self.partitions[i].A
            B = self.partitions[gb].B
            lab = tuple((i, v) for v in A) + tuple((gb, v) for v in B)
            na = len(A)
            edges = [(x, na + y) for x in range(na) for y in range(len(B))]
            side = ("A",) * na + ("B",) * len(B)
            part = tuple(self.partitions[i].part_of(v) for v in A) + \
                tuple(self.partitions[gb].part_of(v) for v in B)
            names = tuple(f"{'A' if k < na else 'B'}{g + 1}.{self.graphs[g].name(v)}"
                          for k, (g, v) in enumerate(lab))
            factors.append(LabeledGraph(len(lab), tuple(edges), side, part, names, crossing=True))
            labels.append(lab)
            for k, gv in enumerate(lab):
                where[gv] = (i, k)
        self.factors = tuple(factors)
        self.labels = tuple(labels)
        self.where = where

    @classmethod
    def from_tagged(cls, g1, g2, g3, check: bool = True) -> XSpec:
        gs = (g1, g2, g3)
        return cls(gs, tuple(SizeablePartition.from_tags(g) for g in gs), check)

    @classmethod
    def triple(cls, g: LabeledGraph, p: SizeablePartition, check: bool = True) -> XSpec:
        return cls((g, g, g), (p, p, p), check)

    def sizes(self) -> dict:
        return {"a": [len(p.A) for p in self.partitions],
                "b": [len(p.B) for p in self.partitions],
                "e": [g.m for g in self.graphs]}

    def side(self, coord: int, k: int) -> str:
        return self.factors[coord].side[k]

    def global_label(self, coord: int, k: int) -> tuple[int, int]:
        return self.labels[coord][k]

    def gamma_edges(self, g: int) -> list[tuple[int, int]]:
        """Edges of Γ_g as (A vertex, B vertex)."""
        p = self.partitions[g]
        Aset = set(p.A)
        return [(u, v) if u in Aset else (v, u) for u, v in self.graphs[g].edges]

    def gamma_nbrs(self, g: int, v: int) -> list[int]:
        return sorted(self.graphs[g].simple_adjacency[v])

    def vertex_name(self, v) -> str:
        return "(" + ", ".join(self.factors[i].name(v[i]) for i in range(3)) + ")"


def x_vertices(spec: XSpec) -> set:
    F = spec.factors
    a_idx = [[k for k in range(f.n) if f.side[k] == "A"] for f in F]
    b_idx = [[k for k in range(f.n) if f.side[k] == "B"] for f in F]
    verts = set(product(*a_idx)) | set(product(*b_idx))
    for g in range(3):
        for a, b in spec.gamma_edges(g):
            ca, ka = spec.where[(g, a)]
            cb, kb = spec.where[(g, b)]
            free = 3 - ca - cb
            for w in range(F[free].n):
                v = [0, 0, 0]
                v[ca], v[cb], v[free] = ka, kb, w
                verts.add(tuple(v))
    return verts


def build_x(spec: XSpec) -> ProductSubcomplex:
    x = full_subcomplex(spec.factors, x_vertices(spec))
    s = spec.sizes()
    a, b, e = s["a"], s["b"], s["e"]
    expected = a[0] * a[1] * a[2] + b[0] * b[1] * b[2] + e[0] * (a[2] + b[1]) \
        + e[1] * (a[0] + b[2]) + e[2] * (a[1] + b[0])
    if len(x.vertices) != expected:
        raise AssertionError(f"X has {len(x.vertices)} vertices, expected {expected}")
    return x


def vertex_class(spec: XSpec, v) -> str:
    return "".join(spec.side(i, v[i]) for i in range(3))


def classify_vertex(spec: XSpec, v, x: ProductSubcomplex | None = None) -> VertexType:
    v = tuple(v)
    if x is not None and v not in x:
        raise GraphError(f"{v} is not a vertex of X")
    cls = vertex_class(spec, v)
    if cls == "AAA":
        return VertexType.TYPE1_A
    if cls == "BBB":
        return VertexType.TYPE1_B
    for g in range(3):
        # Γ_g: A_g in coordinate g, B_g in coordinate g+1
        if cls[g] == "A" and cls[(g + 1) % 3] == "B":
            ga = spec.global_label(g, v[g])
            gb = spec.global_label((g + 1) % 3, v[(g + 1) % 3])
            if gb[1] in spec.graphs[g].simple_adjacency[ga[1]]:
                return TYPE2[g]
    raise GraphError(f"{spec.vertex_name(v)} does not satisfy any vertex condition of X")


# Each class: which Γ (1-based) is joined with which N_{v_i} (1-based), as in
# the table of vertex links; Type1 classes are N_{v1} * N_{v2} * N_{v3}.
LINK_TABLE = {
    "AAA": (None, (1, 2, 3)),
    "AAB": (3, (1,)),
    "ABA": (2, (3,)),
    "ABB": (3, (3,)),
    "BAA": (1, (2,)),
    "BAB": (1, (1,)),
    "BBA": (2, (2,)),
    "BBB": (None, (1, 2, 3)),
}


def expected_link(spec: XSpec, v) -> LinkComplex:
    """The join claimed by the table, with vertices labelled by (graph, Γ vertex)."""
    gam, ns = LINK_TABLE[vertex_class(spec, v)]
    parts = []
    if gam is not None:
        g = gam - 1
        gr = spec.graphs[g]
        parts.append(graph_complex(gr, [(g, w) for w in range(gr.n)]))
    for i in ns:
        g, w = spec.global_label(i - 1, v[i - 1])
        parts.append(discrete((g, u) for u in spec.gamma_nbrs(g, w)))
    return join(*parts)


def link_groups(spec: XSpec, v) -> list[tuple[int, ...]]:
    """Coordinates of the join factors of Lk(v, X): one per N set, plus the
    remaining two coordinates for the Γ factor of a Type2 vertex."""
    gam, ns = LINK_TABLE[vertex_class(spec, v)]
    coords = []
    for i in ns:
        h, _ = spec.global_label(i - 1, v[i - 1])
        coords.append((h + 1) % 3 if spec.side(i - 1, v[i - 1]) == "A" else h)
    if gam is None:
        return [(c,) for c in coords]
    return [tuple(sorted(set(range(3)) - set(coords))), tuple(coords)]


def table_counts(spec: XSpec, v) -> tuple[int, int, int]:
    """Cell counts in the link straight from the table's formulas."""
    gam, ns = LINK_TABLE[vertex_class(spec, v)]
    n = [len(spec.gamma_nbrs(*spec.global_label(i - 1, v[i - 1]))) for i in ns]
    if gam is None:
        n1, n2, n3 = n
        return n1 + n2 + n3, n1 * n2 + n1 * n3 + n2 * n3, n1 * n2 * n3
    g = gam - 1
    ag, bg, eg = len(spec.partitions[g].A), len(spec.partitions[g].B), spec.graphs[g].m
    (nw,) = n
    return ag + bg + nw, eg + nw * (ag + bg), eg * nw


def _global_key(spec: XSpec):
    return lambda tag: spec.global_label(tag[0], tag[2])


def verify_link_table(spec: XSpec, x: ProductSubcomplex | None = None) -> dict:
    x = x if x is not None else build_x(spec)
    key = _global_key(spec)
    per_class: dict[str, dict] = {}
    failures = []
    totals = [0, 0, 0]
    for v in sorted(x.vertices):
        cls = vertex_class(spec, v)
        link = x.vertex_link(v)
        counts = link.counts()
        for d in range(3):
            totals[d] += counts[d]
        row = per_class.setdefault(cls, {"vertices": 0, "cells": [0, 0, 0], "matches": 0})
        row["vertices"] += 1
        row["cells"] = [row["cells"][d] + counts[d] for d in range(3)]
        ok = link.relabeled(key) == expected_link(spec, v).relabeled(lambda t: t) \
            and counts == table_counts(spec, v)
        if ok:
            row["matches"] += 1
        else:
            failures.append({"vertex": spec.vertex_name(v), "class": cls, "counts": list(counts),
                             "table": list(table_counts(spec, v))})
    cen = x.census()
    census_ok = totals == [2 * cen[1], 4 * cen[2], 8 * cen[3]]
    return {
        "verdict": not failures and census_ok,
        "classes": {k: per_class[k] for k in sorted(per_class)},
        "link_cell_totals": totals,
        "cells": list(cen),
        "totals_match_census": census_ok,
        "failures": failures[:20],
        "failure_count": len(failures),
    }


def gamma_edge_certificate(spec: XSpec, x: ProductSubcomplex | None = None) -> dict:
    """Classify every edge of X by its link: a copy of some Γ_g (a Γ-edge,
    which must have girth >= 6) or a complete bipartite graph."""
    x = x if x is not None else build_x(spec)
    gamma_sets = []
    for g in range(3):
        gr = spec.graphs[g]
        gamma_sets.append((frozenset((g, w) for w in range(gr.n)),
                           frozenset(frozenset({(g, a), (g, b)}) for a, b in gr.edges)))
    stats = Counter()
    girths = Counter()
    failures = []
    for e in x.cubes(1):
        tags, edges = x.edge_link_tagged(e, trusted=True)
        lab = [spec.global_label(j, w) for j, _, w in tags]
        vs = frozenset(lab)
        es = frozenset(frozenset({lab[a], lab[b]}) for a, b in edges)
        match = next((g for g, (gv, ge) in enumerate(gamma_sets) if vs == gv and es == ge), None)
        lg = LabeledGraph(len(tags), tuple(edges))
        if match is not None:
            gi = girth(lg)
            girths[gi] += 1
            stats[f"gamma{match + 1}"] += 1
            if gi < 6:
                failures.append({"edge": e.to_json(), "reason": f"Γ-edge link has girth {gi}"})
            continue
        left = [k for k in range(len(tags)) if tags[k][0] == min(t[0] for t in tags)]
        right = [k for k in range(len(tags)) if k not in set(left)]
        if is_complete_bipartite(lg, left, right):
            stats["complete_bipartite"] += 1
        else:
            failures.append({"edge": e.to_json(), "reason": "link is neither a Γ nor complete bipartite"})
    return {
        "verdict": not failures,
        "gamma_girth_ok": not any("girth" in f["reason"] for f in failures),
        "complete_bipartite_ok": not any("neither" in f["reason"] for f in failures),
        "edge_links": dict(sorted(stats.items())),
        "gamma_edge_girths": {str(k): v for k, v in sorted(girths.items())},
        "failures": failures[:20],
        "failure_count": len(failures),
    }


def flag_certificate(x: ProductSubcomplex) -> dict:
    from .cubes import is_flag

    bad = []
    for v in sorted(x.vertices):
        r = is_flag(x.vertex_link(v))
        if not r.verdict:
            bad.append({"vertex": list(v), "missing": list(r.missing)})
    return {"verdict": not bad, "vertices": len(x.vertices), "failures": bad[:20]}


def euler_formula_x(a, b, e) -> int:
    """The closed form for χ(X) in its reference form (27 monomials)."""
    a1, a2, a3 = a
    b1, b2, b3 = b
    e1, e2, e3 = e
    return (a1 * a2 * a3 + b1 * b2 * b3 + a1 * e2 + a3 * e1 + a2 * e3 + b2 * e1 + b3 * e2 + b1 * e3
            + e1 * e2 * a3 + e1 * a2 * e3 + a1 * e2 * e3 + e1 * e2 * b3 + e1 * b2 * e3 + b1 * e2 * e3
            - a1 * a2 * e3 - a1 * e2 * a3 - e1 * a2 * a3 - b1 * b2 * e3 - b1 * e2 * b3 - e1 * b2 * b3
            - e1 * e2 - e2 * e3 - e1 * e3 - a1 * e2 * b3 - e1 * b2 * a3 - b1 * a2 * e3 - e1 * e2 * e3)


def euler_formula_family(p: int) -> int:
    """-64 p^2 (p + 6), the value quoted for a_i = b_i = 4p, e_i = 16p."""
    return -64 * p * p * (p + 6)


def vertex_census(spec: XSpec, x: ProductSubcomplex) -> dict:
    out = defaultdict(int)
    for v in x.vertices:
        out[classify_vertex(spec, v).value] += 1
    return dict(sorted(out.items()))


def x_report(spec: XSpec, x: ProductSubcomplex | None = None) -> dict:
    from .cubes import euler_direct

    x = x if x is not None else build_x(spec)
    s = spec.sizes()
    cen = x.census()
    direct = euler_direct(x, cen)
    formula = euler_formula_x(s["a"], s["b"], s["e"])
    return {"sizes": s, "cells": list(cen), "euler_direct": direct, "euler_formula": formula,
            "agree": direct == formula, "vertex_types": vertex_census(spec, x)}
