"""Finite (multi)graphs with optional bipartite side tags and part tags.

Vertex ids are dense integers ``0..n-1``. Edges are stored with multiplicity
as normalized pairs ``(u, v)`` with ``u < v``; the position of an edge in
``edges`` is its edge id.
"""

from __future__ import annotations

import json
import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for structurally invalid graphs or malformed graph files."""


@dataclass(frozen=True)
class CycleWitness:
    """A closed walk ``vertices[0] -> ... -> vertices[-1] -> vertices[0]``."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 2 or len(self.vertices) % 2:
            raise GraphError(f"cycle witness must have even length >= 2: {self.vertices}")

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def to_json(self) -> list[int]:
        return list(self.vertices)


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()
    side: tuple[str | None, ...] | None = None
    part: tuple[int | None, ...] | None = None
    names: tuple[str, ...] | None = None
    crossing: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        norm = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} references a missing vertex")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", tuple(norm))
        for name in ("side", "part", "names"):
            tags = getattr(self, name)
            if tags is not None:
                tags = tuple(tags)
                if len(tags) != self.n:
                    raise GraphError(f"{name} table has {len(tags)} entries for {self.n} vertices")
                object.__setattr__(self, name, tags)
        if self.side is not None and any(s not in ("A", "B", None) for s in self.side):
            raise GraphError("side tags must be 'A' or 'B'")
        if self.part is not None and any(p not in (0, 1, None) for p in self.part):
            raise GraphError("part tags must be 0 or 1")
        if self.names is not None and len(set(self.names)) != self.n:
            raise GraphError("vertex names must be unique")
        if self.crossing:
            if self.side is None or any(s is None for s in self.side):
                raise GraphError("a crossing graph needs a side tag on every vertex")
            for u, v in self.edges:
                if self.side[u] == self.side[v]:
                    raise GraphError(f"edge ({u}, {v}) does not cross between A and B")

    # -- derived structure -------------------------------------------------

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[v]`` lists ``(edge_id, other_endpoint)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((i, v))
            adj[v].append((i, u))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def simple_adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(w for _, w in a) for a in self.adjacency)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def vertices_on_side(self, side: str) -> list[int]:
        if self.side is None:
            raise GraphError("graph has no side tags")
        return [v for v in range(self.n) if self.side[v] == side]

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def simple(self) -> LabeledGraph:
        """Copy with parallel edges collapsed."""
        return LabeledGraph(self.n, tuple(sorted(set(self.edges))), self.side,
                            self.part, self.names, self.crossing)

    def with_parts(self, part: Sequence[int | None]) -> LabeledGraph:
        return LabeledGraph(self.n, self.edges, self.side, tuple(part), self.names, self.crossing)

    def induced(self, keep: Iterable[int]) -> tuple[LabeledGraph, list[int]]:
        """Induced subgraph relabelled densely; also returns new->old id map."""
        old = sorted(set(keep))
        new_of = {v: i for i, v in enumerate(old)}
        edges = tuple((new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of)
        pick = lambda tags: None if tags is None else tuple(tags[v] for v in old)
        return LabeledGraph(len(old), edges, pick(self.side), pick(self.part),
                            pick(self.names), self.crossing), old

    def delete_vertices(self, drop: Iterable[int]) -> tuple[LabeledGraph, list[int]]:
        drop = set(drop)
        return self.induced(v for v in range(self.n) if v not in drop)

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)


# -- structural predicates ------------------------------------------------


def neighbors(g: LabeledGraph, v: int) -> Counter:
    """Neighbour multiset of ``v``; its total is the degree."""
    if not 0 <= v < g.n:
        raise GraphError(f"unknown vertex {v}")
    return Counter(w for _, w in g.adjacency[v])


def parallel_pair(g: LabeledGraph) -> tuple[int, int] | None:
    """Lexicographically least vertex pair joined by two or more edges."""
    counts = Counter(g.edges)
    pairs = sorted(e for e, c in counts.items() if c > 1)
    return pairs[0] if pairs else None


def contains_four_cycle(g: LabeledGraph) -> CycleWitness | None:
    """Lexicographically least 4-cycle ``(v0, v1, v2, v3)`` with ``v0`` minimal
    and ``v1 < v3``; multiplicities are collapsed first."""
    adj = g.simple_adjacency
    for v0 in range(g.n):
        for v1 in sorted(w for w in adj[v0] if w > v0):
            for v2 in sorted(w for w in adj[v1] if w > v0):
                for v3 in sorted(adj[v2] & adj[v0]):
                    if v3 > v1:
                        return CycleWitness((v0, v1, v2, v3))
    return None


def girth(g: LabeledGraph) -> float:
    """Length of a shortest cycle (2 for a parallel pair); ``inf`` for forests."""
    if parallel_pair(g) is not None:
        return 2
    adj = g.simple_adjacency
    best = math.inf
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def components(g: LabeledGraph, subset: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of the induced subgraph, each sorted, ordered by min."""
    verts = set(range(g.n)) if subset is None else set(subset)
    seen: set[int] = set()
    comps = []
    for s in sorted(verts):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for _, w in g.adjacency[u]:
                if w in verts and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: LabeledGraph, subset: Iterable[int] | None = None) -> bool:
    """True iff the induced subgraph on ``subset`` is non-empty and connected."""
    subset = list(range(g.n)) if subset is None else list(subset)
    for v in subset:
        if not 0 <= v < g.n:
            raise GraphError(f"unknown vertex {v}")
    if not subset:
        return False
    return len(components(g, subset)) == 1


def bipartition(g: LabeledGraph) -> list[int] | None:
    """2-colouring of the vertices, or None if an odd cycle exists."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for _, w in g.adjacency[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_complete_bipartite(g: LabeledGraph, left: Iterable[int], right: Iterable[int]) -> bool:
    """True iff the simple edge set is exactly ``left x right``."""
    left, right = set(left), set(right)
    if left & right or (left | right) != set(range(g.n)):
        return False
    want = {(min(u, v), max(u, v)) for u in left for v in right}
    return g.is_simple() and set(g.edges) == want


def complete_bipartite(a: int, b: int) -> LabeledGraph:
    return LabeledGraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)),
                        side=("A",) * a + ("B",) * b, crossing=True)


def cycle_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, tuple((i, i + 1) for i in range(n - 1)))


# -- I/O -----------------------------------------------------------------


def to_json(g: LabeledGraph) -> dict:
    verts = []
    for v in range(g.n):
        rec: dict = {"id": v}
        if g.side is not None and g.side[v] is not None:
            rec["side"] = g.side[v]
        if g.part is not None and g.part[v] is not None:
            rec["part"] = g.part[v]
        if g.names is not None:
            rec["name"] = g.names[v]
        verts.append(rec)
    return {"vertices": verts, "edges": [list(e) for e in g.edges]}


def from_json(data: dict, crossing: bool | None = None) -> LabeledGraph:
    try:
        verts = sorted(data["vertices"], key=lambda r: r["id"])
        ids = [r["id"] for r in verts]
        if ids != list(range(len(ids))):
            raise GraphError("vertex ids must be dense integers 0..n-1")
        side = tuple(r.get("side") for r in verts)
        part = tuple(r.get("part") for r in verts)
        names = tuple(str(r["name"]) for r in verts) if all("name" in r for r in verts) and verts else None
        edges = tuple((int(u), int(v)) for u, v in data["edges"])
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc!r}") from exc
    has_side = any(s is not None for s in side)
    has_part = any(p is not None for p in part)
    if crossing is None:
        crossing = has_side and all(s is not None for s in side)
    return LabeledGraph(len(verts), edges, side if has_side else None,
                        part if has_part else None, names, crossing)


def load_graph(path: str | Path) -> LabeledGraph:
    """Read a graph from JSON (``.json``) or a whitespace edge list."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
        # reports written by the generators nest the graph under "graph"
        if isinstance(data, dict) and "vertices" not in data and isinstance(data.get("graph"), dict):
            data = data["graph"]
        return from_json(data)
    return parse_edge_list(text, source=str(path))


def parse_edge_list(text: str, source: str = "<string>") -> LabeledGraph:
    """Parse ``u v`` lines (``#`` comments). Tokens become names in order of appearance."""
    ids: dict[str, int] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphError(f"{source}:{lineno}: expected 'u v', got {raw!r}")
        for t in toks:
            ids.setdefault(t, len(ids))
        edges.append((ids[toks[0]], ids[toks[1]]))
    names = tuple(ids)
    if all(t.isdigit() for t in names) and sorted(int(t) for t in names) == list(range(len(names))):
        remap = {ids[t]: int(t) for t in names}
        return LabeledGraph(len(names), tuple((remap[u], remap[v]) for u, v in edges))
    return LabeledGraph(len(names), tuple(edges), names=names)


def to_edge_list(g: LabeledGraph) -> str:
    return "".join(f"{g.name(u)} {g.name(v)}\n" for u, v in g.edges)


def to_dot(g: LabeledGraph, title: str = "G") -> str:
    shape = {"A": "circle", "B": "box"}
    lines = [f"graph {title} {{"]
    for v in range(g.n):
        attrs = []
        if g.side is not None and g.side[v] is not None:
            attrs.append(f"shape={shape[g.side[v]]}")
        if g.part is not None and g.part[v] is not None:
            attrs.append("style=filled" if g.part[v] else "style=solid")
        attrs.append(f'label="{g.name(v)}"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
