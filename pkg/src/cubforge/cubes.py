"""Full cubical subcomplexes of a product of three graphs.

A cell is a triple of coordinates, each either a vertex or an edge (by id) of
the matching factor.  Nothing but the vertex set is stored; cubes are
enumerated from their lowest corner when needed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator

import numpy as np

from .graph import GraphError, LabeledGraph

Triple = tuple[int, int, int]


@dataclass(frozen=True, order=True)
class CellTriple:
    """``coords[i]`` is ``("v", vertex)`` or ``("e", edge_id)``."""

    coords: tuple[tuple[str, int], tuple[str, int], tuple[str, int]]

    @property
    def dim(self) -> int:
        return sum(1 for k, _ in self.coords if k == "e")

    def corners(self, factors) -> list[Triple]:
        choices = []
        for (k, x), f in zip(self.coords, factors):
            choices.append(f.edges[x] if k == "e" else (x,))
        return [tuple(c) for c in product(*choices)]

    def faces(self, factors) -> list[CellTriple]:
        out = []
        for i, (k, x) in enumerate(self.coords):
            if k == "e":
                for end in factors[i].edges[x]:
                    c = list(self.coords)
                    c[i] = ("v", end)
                    out.append(CellTriple(tuple(c)))
        return out

    def to_json(self) -> list:
        return [list(c) for c in self.coords]


@dataclass(frozen=True)
class LinkComplex:
    """A simplicial complex of dimension at most 2.

    ``tags[i]`` records where link vertex ``i`` comes from; for cube-complex
    links it is ``(coordinate, factor edge id, far endpoint)``.
    """

    tags: tuple
    edges: tuple[tuple[int, int], ...] = ()
    triangles: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        n = len(self.tags)
        es = set()
        for e in self.edges:
            if len(e) != 2 or e[0] >= e[1] or not 0 <= e[0] < n or e[1] >= n:
                raise GraphError(f"bad link edge {e}")
            es.add(e)
        if len(es) != len(self.edges):
            raise GraphError("duplicate link edge")
        ts = set()
        for t in self.triangles:
            if len(t) != 3 or not t[0] < t[1] < t[2] or t[2] >= n or t[0] < 0:
                raise GraphError(f"bad link triangle {t}")
            for pair in combinations(t, 2):
                if pair not in es:
                    raise GraphError(f"triangle {t} is missing edge {pair}")
            ts.add(t)
        if len(ts) != len(self.triangles):
            raise GraphError("duplicate link triangle")

    @property
    def n(self) -> int:
        return len(self.tags)

    def counts(self) -> tuple[int, int, int]:
        return len(self.tags), len(self.edges), len(self.triangles)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def full_subcomplex(self, keep: Iterable[int]) -> LinkComplex:
        keep = sorted(set(keep))
        idx = {v: i for i, v in enumerate(keep)}
        edges = tuple((idx[a], idx[b]) for a, b in self.edges if a in idx and b in idx)
        tris = tuple((idx[a], idx[b], idx[c]) for a, b, c in self.triangles
                     if a in idx and b in idx and c in idx)
        return LinkComplex(tuple(self.tags[v] for v in keep), edges, tris)

    def relabeled(self, key) -> frozenset:
        """Simplices as frozensets of ``key(tag)``; equal for isomorphic tagged complexes."""
        lab = [key(t) for t in self.tags]
        out = {frozenset([lab[i]]) for i in range(self.n)}
        out |= {frozenset(lab[i] for i in e) for e in self.edges}
        out |= {frozenset(lab[i] for i in t) for t in self.triangles}
        return frozenset(out)

    def one_skeleton(self) -> LabeledGraph:
        return LabeledGraph(self.n, self.edges, names=tuple(str(t) for t in self.tags))

    def to_json(self) -> dict:
        return {"tags": [list(t) if isinstance(t, tuple) else t for t in self.tags],
                "edges": [list(e) for e in self.edges],
                "triangles": [list(t) for t in self.triangles]}

    @classmethod
    def from_json(cls, d: dict) -> LinkComplex:
        tags = tuple(tuple(t) if isinstance(t, list) else t for t in d.get("tags", ()))
        if not tags and "n" in d:
            tags = tuple(range(d["n"]))
        return cls.from_simplices(tags, d.get("edges", ()), d.get("triangles", ()))

    @classmethod
    def from_simplices(cls, tags, edges=(), triangles=()) -> LinkComplex:
        """Build from unsorted simplices; faces of triangles are added."""
        es = {tuple(sorted(e)) for e in edges}
        ts = {tuple(sorted(t)) for t in triangles}
        for t in ts:
            es.update(combinations(t, 2))
        return cls(tuple(tags), tuple(sorted(es)), tuple(sorted(ts)))


def join(*parts: LinkComplex) -> LinkComplex:
    """Simplicial join of complexes whose total dimension stays at most 2."""
    tags, offs = [], []
    for p in parts:
        offs.append(len(tags))
        tags.extend(p.tags)
    simplices = [[()]]
    for p, o in zip(parts, offs):
        local = [()] + [(v + o,) for v in range(p.n)] + [tuple(x + o for x in e) for e in p.edges] \
            + [tuple(x + o for x in t) for t in p.triangles]
        simplices.append(local)
    edges, tris = set(), set()
    for combo in product(*simplices[1:]):
        s = tuple(sorted(x for part in combo for x in part))
        if len(s) == 2:
            edges.add(s)
        elif len(s) == 3:
            tris.add(s)
        elif len(s) > 3:
            raise GraphError("join has dimension above 2")
    return LinkComplex(tuple(tags), tuple(sorted(edges)), tuple(sorted(tris)))


def discrete(tags: Iterable) -> LinkComplex:
    return LinkComplex(tuple(tags))


def graph_complex(g: LabeledGraph, tags=None) -> LinkComplex:
    if not g.is_simple():
        raise GraphError("graph complex needs a simple graph")
    return LinkComplex(tuple(tags) if tags is not None else tuple(range(g.n)),
                       tuple(sorted(set(g.edges))))


@dataclass(frozen=True)
class FlagReport:
    verdict: bool
    missing: tuple[int, ...] | None = None


def is_flag(link: LinkComplex) -> FlagReport:
    """Every triangle of the 1-skeleton must be filled (dimension <= 2 given)."""
    adj = [set() for _ in range(link.n)]
    for a, b in link.edges:
        adj[a].add(b)
        adj[b].add(a)
    tris = set(link.triangles)
    for a, b in link.edges:
        for c in sorted(adj[a] & adj[b]):
            if c > b:
                if (a, b, c) not in tris:
                    return FlagReport(False, (a, b, c))
    # dimension <= 2 means a 4-clique can never be filled
    for a, b, c in link.triangles:
        if adj[a] & adj[b] & adj[c]:
            d = min(adj[a] & adj[b] & adj[c])
            return FlagReport(False, tuple(sorted((a, b, c, d))))
    return FlagReport(True)


@dataclass
class ProductSubcomplex:
    factors: tuple[LabeledGraph, LabeledGraph, LabeledGraph]
    vertices: frozenset
    multigraph_ok: bool = False
    _inc: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.factors = tuple(self.factors)
        if len(self.factors) != 3:
            raise GraphError("need exactly three factors")
        for f in self.factors:
            if not self.multigraph_ok and not f.is_simple():
                raise GraphError("factor graphs of a product complex must be simple")
        self.vertices = frozenset(tuple(v) for v in self.vertices)
        for v in self.vertices:
            if len(v) != 3 or any(not 0 <= x < f.n for x, f in zip(v, self.factors)):
                raise GraphError(f"vertex {v} is not a vertex triple of the factors")
        self._inc = [f.adjacency for f in self.factors]

    def __contains__(self, v) -> bool:
        return tuple(v) in self.vertices

    def _moves(self, v: Triple, i: int, lower_only: bool) -> Iterator[tuple[int, int]]:
        for eid, w in self._inc[i][v[i]]:
            if lower_only and w < v[i]:
                continue
            if w == v[i]:
                continue
            yield eid, w

    def cubes(self, dim: int | None = None) -> Iterator[CellTriple]:
        """All cells (or those of one dimension), each exactly once."""
        for v in sorted(self.vertices):
            for dirs in range(8):
                axes = [i for i in range(3) if dirs >> i & 1]
                if dim is not None and len(axes) != dim:
                    continue
                opts = [list(self._moves(v, i, True)) for i in axes]
                for choice in product(*opts):
                    coords = [("v", v[0]), ("v", v[1]), ("v", v[2])]
                    ok = True
                    others = []
                    for i, (eid, w) in zip(axes, choice):
                        coords[i] = ("e", eid)
                        others.append((i, w))
                    for mask in range(1, 1 << len(others)):
                        c = list(v)
                        for j, (i, w) in enumerate(others):
                            if mask >> j & 1:
                                c[i] = w
                        if tuple(c) not in self.vertices:
                            ok = False
                            break
                    if ok:
                        yield CellTriple(tuple(coords))

    def census(self) -> tuple[int, int, int, int]:
        """Cell counts per dimension, vectorised over the vertex indicator array."""
        F = self.factors
        M = np.zeros(tuple(f.n for f in F), dtype=bool)
        if self.vertices:
            idx = np.array(sorted(self.vertices)).T
            M[tuple(idx)] = True
        ends = [np.array(f.edges, dtype=np.int64).reshape(-1, 2) for f in F]
        c1 = 0
        P = []
        for i in range(3):
            Mi = np.moveaxis(M, i, 0)
            Pi = Mi[ends[i][:, 0]] & Mi[ends[i][:, 1]]  # (E_i, rest...)
            c1 += int(Pi.sum())
            P.append(Pi)
        c2 = 0
        for i, j in ((0, 1), (0, 2), (1, 2)):
            # P[i] has axes (E_i, other coords in order); coordinate j sits at axis 1 or 2
            ax = 1 + sorted({0, 1, 2} - {i}).index(j)
            Q = np.take(P[i], ends[j][:, 0], axis=ax) & np.take(P[i], ends[j][:, 1], axis=ax)
            c2 += int(Q.sum())
            if (i, j) == (0, 1):
                Q01 = Q  # (E0, E1, n2)
        c3 = int((Q01[:, :, ends[2][:, 0]] & Q01[:, :, ends[2][:, 1]]).sum())
        return int(M.sum()), c1, c2, c3

    def census_by_enumeration(self) -> tuple[int, int, int, int]:
        counts = [0, 0, 0, 0]
        for c in self.cubes():
            counts[c.dim] += 1
        return tuple(counts)

    def has_cell(self, c: CellTriple) -> bool:
        return all(x in self.vertices for x in c.corners(self.factors))

    def vertex_link(self, v) -> LinkComplex:
        v = tuple(v)
        if v not in self.vertices:
            raise GraphError(f"vertex {v} is not in the complex")
        V = self.vertices
        tags = []
        for i in range(3):
            for eid, w in self._moves(v, i, False):
                if _moved(v, ((i, eid, w),)) in V:
                    tags.append((i, eid, w))
        tags.sort()
        by_coord = [[k for k, t in enumerate(tags) if t[0] == i] for i in range(3)]
        edges = []
        adj = [set() for _ in tags]
        # lower corners are present already, so only the far corner is checked
        for i, j in ((0, 1), (0, 2), (1, 2)):
            for a in by_coord[i]:
                for b in by_coord[j]:
                    if _moved(v, (tags[a], tags[b])) in V:
                        edges.append((a, b))
                        adj[a].add(b)
        edges.sort()
        tris = []
        for a in by_coord[0]:
            for b in sorted(adj[a]):
                if tags[b][0] != 1:
                    continue
                for c in sorted(adj[a] & adj[b]):
                    if _moved(v, (tags[a], tags[b], tags[c])) in V:
                        tris.append((a, b, c))
        return LinkComplex(tuple(tags), tuple(edges), tuple(tris))

    def _corners_present(self, v: Triple, moves) -> bool:
        for mask in range(1, 1 << len(moves)):
            if _moved(v, [m for j, m in enumerate(moves) if mask >> j & 1]) not in self.vertices:
                return False
        return True

    def edge_link(self, e: CellTriple) -> LabeledGraph:
        """Link of a 1-cube: squares through it joined by the 3-cubes through it."""
        tags, edges = self.edge_link_tagged(e)
        names = tuple(f"{j}:{self.factors[j].name(w)}" for j, _, w in tags)
        return LabeledGraph(len(tags), tuple(edges), names=names)

    def edge_link_tagged(self, e: CellTriple, trusted: bool = False) -> tuple[list, list]:
        """Link of a 1-cube with tags ``(coordinate, edge id, far endpoint)``.

        ``trusted`` skips the membership check for edges produced by ``cubes``.
        """
        if not trusted and (e.dim != 1 or not self.has_cell(e)):
            raise GraphError(f"{e} is not an edge of the complex")
        V = self.vertices
        i = next(k for k, (kind, _) in enumerate(e.coords) if kind == "e")
        eid = e.coords[i][1]
        u0, u1 = self.factors[i].edges[eid]
        base = [x for _, x in e.coords]
        base[i] = u0
        base = tuple(base)
        step = (i, eid, u1)
        tags = []
        for j in range(3):
            if j == i:
                continue
            for fid, w in self._moves(base, j, False):
                t = (j, fid, w)
                if _moved(base, (t,)) in V and _moved(base, (step, t)) in V:
                    tags.append(t)
        tags.sort()
        edges = []
        for a, b in combinations(range(len(tags)), 2):
            ta, tb = tags[a], tags[b]
            if ta[0] != tb[0] and _moved(base, (ta, tb)) in V and _moved(base, (step, ta, tb)) in V:
                edges.append((a, b))
        return tags, edges

    def edges_1cells(self) -> Iterator[CellTriple]:
        return self.cubes(1)

    def summary(self, links: bool = True) -> dict:
        cen = self.census()
        out = {"cells": list(cen), "euler": euler_direct(self, cen)}
        if links:
            lc = Counter(self.vertex_link(v).counts() for v in sorted(self.vertices))
            out["vertex_link_census"] = [{"counts": list(k), "vertices": n}
                                         for k, n in sorted(lc.items())]
        return out


def _moved(v: Triple, moves) -> Triple:
    u = list(v)
    for i, _, w in moves:
        u[i] = w
    return tuple(u)


def full_subcomplex(factors, vertices, multigraph_ok: bool = False) -> ProductSubcomplex:
    return ProductSubcomplex(tuple(factors), frozenset(vertices), multigraph_ok)


def full_product(factors, multigraph_ok: bool = False) -> ProductSubcomplex:
    return full_subcomplex(factors, product(*(range(f.n) for f in factors)), multigraph_ok)


def euler_direct(c: ProductSubcomplex, census=None) -> int:
    cen = census if census is not None else c.census()
    return sum((-1) ** d * n for d, n in enumerate(cen))


def edge_cell(v: Triple, coord: int, eid: int) -> CellTriple:
    coords = [("v", v[0]), ("v", v[1]), ("v", v[2])]
    coords[coord] = ("e", eid)
    return CellTriple(tuple(coords))
